#include "rctls/rng.hpp"

#include <cmath>
#include <numbers>

#include "rctls/errors.hpp"

namespace rctls {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// SplitMix64 finalizer
std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace

GaussianStream::GaussianStream(RngSeed seed, std::uint64_t stream_id)
    // hash (seed, stream id) into a well-spread initial state so streams do
    // not overlap as shifted counters
    : state_(mix64(seed.value + kGolden * (stream_id + 1))) {}

std::uint64_t GaussianStream::next_u64() {
    state_ += kGolden;
    return mix64(state_);
}

double GaussianStream::next() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    // Box-Muller; u1 in (0,1], u2 in [0,1)
    const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    const double u2 = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    cached_ = r * std::sin(a);
    has_cached_ = true;
    return r * std::cos(a);
}

void GaussianStream::fill(std::span<double> out) {
    for (double& v : out) v = next();
}

DenseMatrix gaussian_matrix(std::size_t rows, std::size_t cols, RngSeed seed) {
    if (rows == 0 || cols == 0)
        throw InvalidInputError("gaussian_matrix: dimensions must be at least 1");
    DenseMatrix m(rows, cols);
    Vector col(rows);
    for (std::size_t j = 0; j < cols; ++j) {
        GaussianStream stream(seed, j);
        stream.fill(col);
        set_column(m, j, col);
    }
    return m;
}

Vector gaussian_vector(std::size_t n, RngSeed seed, std::uint64_t stream_id) {
    if (n == 0) throw InvalidInputError("gaussian_vector: length must be at least 1");
    Vector v(n);
    GaussianStream stream(seed, stream_id);
    stream.fill(v);
    return v;
}

RngSeed derive_seed(RngSeed base, std::uint64_t index) {
    return RngSeed{mix64(base.value ^ mix64(index + 0x243F6A8885A308D3ULL))};
}

} // namespace rctls
