#pragma once

#include <cstdint>
#include <span>

#include "rctls/dense_matrix.hpp"

namespace rctls {

// Seed for the deterministic Gaussian sampler. Identical seed and dimensions
// give bit-identical output on every platform.
struct RngSeed {
    std::uint64_t value = 0;
};

// Deterministic N(0,1) stream: SplitMix64 keyed by (seed, stream id), mapped
// through Box-Muller. Streams with distinct ids are independent, so draws can
// be generated in any order (column j of a Gaussian matrix is stream j, probe
// i of the range finder is stream i).
class GaussianStream {
public:
    GaussianStream(RngSeed seed, std::uint64_t stream_id);

    double next();
    void fill(std::span<double> out);

private:
    std::uint64_t next_u64();
    std::uint64_t state_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

// i.i.d. standard normal entries; column j is drawn from stream j.
DenseMatrix gaussian_matrix(std::size_t rows, std::size_t cols, RngSeed seed);

Vector gaussian_vector(std::size_t n, RngSeed seed, std::uint64_t stream_id);

// Stable derivation of per-trial seeds from a base seed.
RngSeed derive_seed(RngSeed base, std::uint64_t index);

} // namespace rctls
