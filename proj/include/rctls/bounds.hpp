#pragma once

#include "rctls/svd.hpp"
#include "rctls/tls.hpp"

namespace rctls {

struct BoundParams {
    std::size_t k = 0;
    std::size_t s = 0;
    std::size_t p = 0; // 0 <= p <= s
    std::size_t q = 0;
    double delta = 0.01;
};

// Quantities the solution-error bound needs beyond the true spectrum.
struct SolutionBoundContext {
    double norm_b = 0.0;
    double norm_x_star = 0.0;
    double sigma_bar_np1 = 0.0; // sigma_{n+1}([A, b])
    std::size_t r = 0;          // sample rank of the solve
};

struct BoundReport {
    std::size_t k, s, p, q;
    double delta;
    double c_delta;                // concentration constant
    double epsilon;                // c_delta * (sigma_{k+1+s-p}/sigma_k)^{2q}
    double c1;                     // 1 + sqrt(1 + k epsilon^2)
    double c2;                     // 2 c1 + 1
    double solution_bound;         // statement form, with 2 sigma_{k+s}
    double solution_bound_sigma_r; // proof form, with 2 sigma_r
    double residual_bound;         // c1 sigma_{k+1} sqrt(1 + ||x||^2)
};

// e sqrt(k+s)/(p+1) * (2/delta)^{1/(p+1)} *
//   (sqrt(n-k-s+p) + sqrt(k+s) + sqrt(2 log(2/delta)))
double concentration_constant(std::size_t k, std::size_t s, std::size_t p, std::size_t n,
                              double delta);

// Right-hand side of the subspace-iteration sampling bound:
// sqrt(sigma_{k+1}^2 + k C^2 sigma_{k+1+s-p}^2 (sigma_{k+1+s-p}/sigma_k)^{4q})
double sampled_residual_bound(const Vector& true_sigma, std::size_t n, const BoundParams& p);

// Right-hand side of the plain (no power iteration) sampling bound:
// (1 + 16 sqrt(1 + k/(s+1))) sigma_{k+1} + 8 sqrt(k+s)/(s+1) * sqrt(sum_{j>k} sigma_j^2)
double plain_sampling_bound(const Vector& true_sigma, std::size_t k, std::size_t s);

// Numerical evaluation of the solution-error and residual bounds for a solve
// against an operator with a known spectrum (test instances only).
BoundReport bound_report(const SvdFactors& true_svd, const TlsSolution& solution,
                         const BoundParams& params, const SolutionBoundContext& ctx);

} // namespace rctls
