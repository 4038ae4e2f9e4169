#pragma once

#include "rctls/dense_matrix.hpp"
#include "rctls/errors.hpp"
#include "rctls/linear_operator.hpp"
#include "rctls/rng.hpp"

namespace rctls {

struct RangeFinderConfig {
    double tolerance = 1e-3;    // probe-norm tolerance of the adaptive stopping rule
    std::size_t block = 10;     // number of probes kept in flight
    std::size_t power = 1;      // subspace iteration rounds after the adaptive phase
    std::size_t oversample = 5; // extra samples in fixed-rank mode
    std::size_t balance = 0;    // bound-evaluation balance parameter, 0 <= balance <= oversample
    RngSeed seed{0};
    std::size_t max_rank = 0;   // 0 means min(rows, cols, 1000)
};

struct RangeBasis {
    DenseMatrix q_basis;            // rows x rank, orthonormal columns
    std::size_t rank = 0;
    std::size_t probes_used = 0;
    double residual_estimate = 0.0; // posterior 10*sqrt(2/pi) * max probe norm estimate
};

// The adaptive loop stopped because the spectrum does not decay below the
// tolerance within the rank cap; the basis gathered so far is attached.
class RankOverflowError : public Error {
public:
    RankOverflowError(const std::string& msg, RangeBasis partial)
        : Error(msg), partial(std::move(partial)) {}
    RangeBasis partial;
};

// Adaptive randomized range finder: Gaussian probes are deflated against the
// growing basis and a column is accepted while any of the `block` most recent
// probe norms exceeds tolerance / (10 sqrt(2/pi)).
RangeBasis adaptive_rangefinder(const LinearOperator& op, const RangeFinderConfig& cfg);

// `power` rounds of two-sided QR-reorthonormalized iteration starting from an
// orthonormal basis; the rank never changes.
RangeBasis subspace_iteration(const LinearOperator& op, const RangeBasis& start, std::size_t power);

// Orthonormal basis of (A A^T)^power * A * Omega for an n x (k + oversample)
// Gaussian draw; rank is k + oversample or the numerical rank of the sample
// if smaller.
RangeBasis fixed_rank_rangefinder(const LinearOperator& op, std::size_t k, const RangeFinderConfig& cfg);

} // namespace rctls
