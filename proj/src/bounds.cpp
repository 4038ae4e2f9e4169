#include "rctls/bounds.hpp"

#include <cmath>
#include <numbers>

#include "rctls/errors.hpp"

namespace rctls {

namespace {

// (sigma_{k+1+s-p} / sigma_k)^power, with the k = 0 or power = 0 cases
// collapsing to 1 so the limiting formulas stay evaluable
double decay_ratio_pow(const Vector& sigma, std::size_t k, std::size_t s, std::size_t p,
                       std::size_t power) {
    if (power == 0) return 1.0;
    if (k == 0) throw InvalidInputError("bounds: k must be >= 1 when q >= 1");
    if (k + s - p >= sigma.size())
        throw InvalidInputError("bounds: sigma_{k+1+s-p} exceeds the available spectrum");
    const double num = sigma[k + s - p];
    const double den = sigma[k - 1];
    if (den == 0.0) throw InvalidInputError("bounds: sigma_k is zero");
    return std::pow(num / den, static_cast<double>(power));
}

void validate(const Vector& sigma, const BoundParams& bp) {
    if (bp.p > bp.s) throw InvalidInputError("bounds: p must not exceed s");
    if (!(bp.delta > 0.0 && bp.delta < 1.0))
        throw InvalidInputError("bounds: delta must lie in (0, 1)");
    if (bp.k + bp.s - bp.p >= sigma.size())
        throw InvalidInputError("bounds: sigma_{k+1+s-p} exceeds the available spectrum");
}

} // namespace

double concentration_constant(std::size_t k, std::size_t s, std::size_t p, std::size_t n,
                              double delta) {
    if (p > s) throw InvalidInputError("concentration_constant: p must not exceed s");
    if (k + s > n) throw InvalidInputError("concentration_constant: k + s exceeds n");
    const double ks = static_cast<double>(k + s);
    const double log_term = std::log(2.0 / delta);
    return std::numbers::e * std::sqrt(ks) / static_cast<double>(p + 1) *
           std::pow(2.0 / delta, 1.0 / static_cast<double>(p + 1)) *
           (std::sqrt(static_cast<double>(n - k - s + p)) + std::sqrt(ks) +
            std::sqrt(2.0 * log_term));
}

double sampled_residual_bound(const Vector& true_sigma, std::size_t n, const BoundParams& bp) {
    validate(true_sigma, bp);
    if (bp.k >= true_sigma.size())
        throw InvalidInputError("sampled_residual_bound: sigma_{k+1} unavailable");
    const double c = concentration_constant(bp.k, bp.s, bp.p, n, bp.delta);
    const double sk1 = true_sigma[bp.k];
    const double sksp = true_sigma[bp.k + bp.s - bp.p];
    const double ratio4q = decay_ratio_pow(true_sigma, bp.k, bp.s, bp.p, 4 * bp.q);
    return std::sqrt(sk1 * sk1 +
                     static_cast<double>(bp.k) * c * c * sksp * sksp * ratio4q);
}

double plain_sampling_bound(const Vector& true_sigma, std::size_t k, std::size_t s) {
    if (k >= true_sigma.size())
        throw InvalidInputError("plain_sampling_bound: sigma_{k+1} unavailable");
    double tail = 0.0;
    for (std::size_t j = k; j < true_sigma.size(); ++j) tail += true_sigma[j] * true_sigma[j];
    const double kd = static_cast<double>(k), sd = static_cast<double>(s);
    return (1.0 + 16.0 * std::sqrt(1.0 + kd / (sd + 1.0))) * true_sigma[k] +
           8.0 * std::sqrt(kd + sd) / (sd + 1.0) * std::sqrt(tail);
}

BoundReport bound_report(const SvdFactors& true_svd, const TlsSolution& solution,
                         const BoundParams& bp, const SolutionBoundContext& ctx) {
    const Vector& sigma = true_svd.sigma;
    validate(sigma, bp);
    if (bp.k >= sigma.size())
        throw InvalidInputError("bound_report: sigma_{k+1} unavailable");
    if (bp.k + bp.s > 0 && bp.k + bp.s > sigma.size())
        throw InvalidInputError("bound_report: sigma_{k+s} unavailable");
    const std::size_t n = true_svd.v.rows();

    BoundReport r{bp.k, bp.s, bp.p, bp.q, bp.delta, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    r.c_delta = concentration_constant(bp.k, bp.s, bp.p, n, bp.delta);
    r.epsilon = r.c_delta * decay_ratio_pow(sigma, bp.k, bp.s, bp.p, 2 * bp.q);
    r.c1 = 1.0 + std::sqrt(1.0 + static_cast<double>(bp.k) * r.epsilon * r.epsilon);
    r.c2 = 2.0 * r.c1 + 1.0;

    const double sigma_k1 = sigma[bp.k];
    const double norm_x = norm2(solution.x);
    r.residual_bound = r.c1 * sigma_k1 * std::sqrt(1.0 + norm_x * norm_x);

    // conditioning term 1 / (sigma_n^2 - sigma_{n+1}^2([A, b]))
    const double sn = sigma.back();
    const double cond_denom = sn * sn - ctx.sigma_bar_np1 * ctx.sigma_bar_np1;
    const double inv_cond = 1.0 / cond_denom; // +inf on a nongeneric instance
    const double common =
        (ctx.norm_b / ctx.norm_x_star + 2.0 * sigma.front()) *
        std::sqrt(1.0 + static_cast<double>(bp.k) * r.epsilon * r.epsilon);

    const double sigma_ks = (bp.k + bp.s >= 1) ? sigma[bp.k + bp.s - 1] : sigma.front();
    r.solution_bound = inv_cond * (common + 2.0 * sigma_ks) * sigma_k1;

    if (ctx.r >= 1 && ctx.r <= sigma.size()) {
        const double sigma_r = sigma[ctx.r - 1];
        r.solution_bound_sigma_r = inv_cond * (common + 2.0 * sigma_r) * sigma_k1;
    } else {
        r.solution_bound_sigma_r = r.solution_bound;
    }
    return r;
}

} // namespace rctls
