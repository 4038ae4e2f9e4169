#include "rctls/rangefinder.hpp"

#include <cfloat>
#include <cmath>
#include <numbers>

#include "rctls/qr.hpp"
#include "rctls/svd.hpp"

namespace rctls {

namespace {

constexpr std::size_t kDefaultRankCap = 1000;

double stopping_threshold(double tolerance) {
    return tolerance / (10.0 * std::sqrt(2.0 / std::numbers::pi));
}

void validate(const LinearOperator& op, const RangeFinderConfig& cfg) {
    if (op.rows() == 0 || op.cols() == 0)
        throw InvalidInputError("rangefinder: operator has an empty dimension");
    if (!(cfg.tolerance > 0.0)) throw InvalidInputError("rangefinder: tolerance must be positive");
    if (cfg.block == 0) throw InvalidInputError("rangefinder: block must be at least 1");
    if (cfg.balance > cfg.oversample)
        throw InvalidInputError("rangefinder: balance must not exceed oversample");
}

std::size_t resolve_max_rank(const LinearOperator& op, const RangeFinderConfig& cfg) {
    const std::size_t dim = std::min(op.rows(), op.cols());
    if (cfg.max_rank == 0) return std::min(dim, kDefaultRankCap);
    return std::min(cfg.max_rank, dim);
}

// y -= Q Q^T y over the accepted columns
void project_out(const std::vector<Vector>& basis, Vector& y) {
    for (const Vector& q : basis) axpy(-dot(q, y), q, y);
}

DenseMatrix columns_to_matrix(std::size_t m, const std::vector<Vector>& cols) {
    DenseMatrix q(m, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) set_column(q, j, cols[j]);
    return q;
}

// 10*sqrt(2/pi) * max ||(I - QQ^T) A w_i|| over `count` fresh probes
double posterior_estimate(const LinearOperator& op, const DenseMatrix& q, RngSeed seed,
                          std::uint64_t first_stream, std::size_t count) {
    double worst = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        Vector y = op.apply(gaussian_vector(op.cols(), seed, first_stream + i));
        Vector qty = matvec_transpose(q, y);
        Vector qqty = matvec(q, qty);
        axpy(-1.0, qqty, y);
        worst = std::max(worst, norm2(y));
    }
    return 10.0 * std::sqrt(2.0 / std::numbers::pi) * worst;
}

} // namespace

RangeBasis adaptive_rangefinder(const LinearOperator& op, const RangeFinderConfig& cfg) {
    validate(op, cfg);
    const std::size_t m = op.rows(), n = op.cols();
    const std::size_t block = std::min({cfg.block, m, n});
    const std::size_t max_rank = resolve_max_rank(op, cfg);
    const double threshold = stopping_threshold(cfg.tolerance);

    std::vector<Vector> probes;
    probes.reserve(block + 16);
    std::size_t drawn = 0;
    for (std::size_t i = 0; i < block; ++i)
        probes.push_back(op.apply(gaussian_vector(n, cfg.seed, drawn++)));

    std::vector<Vector> basis;
    const double first_norm = norm2(probes[0]);
    const double reproject_floor = 1e3 * DBL_EPSILON * first_norm;
    std::size_t accepted = 0;
    std::size_t degenerate_redraws = 0;

    auto window_max = [&]() {
        double worst = 0.0;
        for (std::size_t i = accepted; i < accepted + block; ++i)
            worst = std::max(worst, norm2(probes[i]));
        return worst;
    };

    double last_window = window_max();
    while (last_window > threshold) {
        if (accepted == max_rank) {
            RangeBasis partial{columns_to_matrix(m, basis), accepted, drawn,
                               10.0 * std::sqrt(2.0 / std::numbers::pi) * last_window};
            throw RankOverflowError("adaptive_rangefinder: spectrum does not decay below the "
                                    "tolerance within the rank cap",
                                    std::move(partial));
        }
        Vector& y = probes[accepted];
        project_out(basis, y);
        double nrm = norm2(y);
        if (nrm < reproject_floor) {
            // one more pass keeps the basis orthonormal once probes get tiny
            project_out(basis, y);
            nrm = norm2(y);
        }
        if (nrm == 0.0) {
            if (++degenerate_redraws > 100)
                throw NumericalFailureError("adaptive_rangefinder: probes vanish repeatedly",
                                            degenerate_redraws);
            y = op.apply(gaussian_vector(n, cfg.seed, drawn++));
            project_out(basis, y);
            last_window = window_max();
            continue;
        }
        scale_inplace(1.0 / nrm, y);
        basis.push_back(std::move(y));
        const Vector& q_new = basis.back();
        ++accepted;

        Vector fresh = op.apply(gaussian_vector(n, cfg.seed, drawn++));
        project_out(basis, fresh);
        probes.push_back(std::move(fresh));

        // deflate the rest of the window against the newly accepted column
        for (std::size_t i = accepted; i + 1 < accepted + block; ++i)
            axpy(-dot(q_new, probes[i]), q_new, probes[i]);

        last_window = window_max();
    }

    RangeBasis out;
    out.q_basis = columns_to_matrix(m, basis);
    out.rank = accepted;
    out.probes_used = drawn;
    out.residual_estimate = 10.0 * std::sqrt(2.0 / std::numbers::pi) * last_window;
    return out;
}

RangeBasis subspace_iteration(const LinearOperator& op, const RangeBasis& start, std::size_t power) {
    if (power == 0 || start.rank == 0) return start;
    DenseMatrix q = start.q_basis;
    for (std::size_t j = 0; j < power; ++j) {
        DenseMatrix yt = op.apply_transpose_block(q);
        DenseMatrix qt = householder_qr(yt).q;
        DenseMatrix y = op.apply_block(qt);
        q = householder_qr(y).q;
    }
    RangeBasis out = start;
    out.q_basis = std::move(q);
    return out;
}

RangeBasis fixed_rank_rangefinder(const LinearOperator& op, std::size_t k, const RangeFinderConfig& cfg) {
    validate(op, cfg);
    const std::size_t m = op.rows(), n = op.cols();
    const std::size_t width = k + cfg.oversample;
    if (k == 0) throw InvalidInputError("fixed_rank_rangefinder: k must be at least 1");
    if (width > std::min(m, n))
        throw InvalidInputError("fixed_rank_rangefinder: k + oversample exceeds min(rows, cols)");

    DenseMatrix omega = gaussian_matrix(n, width, cfg.seed);
    DenseMatrix y = op.apply_block(omega);
    for (std::size_t j = 0; j < cfg.power; ++j) {
        DenseMatrix q = householder_qr(y).q;
        DenseMatrix qt = householder_qr(op.apply_transpose_block(q)).q;
        y = op.apply_block(qt);
    }

    // numerical rank of the sample decides the basis width
    SvdFactors f = svd_dense(y);
    std::size_t rank = 0;
    const double cutoff = f.sigma.empty() ? 0.0 : 1e-12 * f.sigma.front();
    for (double s : f.sigma)
        if (s > cutoff && s > 0.0) ++rank;

    RangeBasis out;
    out.q_basis = take_columns(f.u, rank);
    out.rank = rank;
    const std::size_t est_probes = std::min({cfg.block, m, n});
    out.residual_estimate =
        posterior_estimate(op, out.q_basis, cfg.seed, width, est_probes);
    out.probes_used = width + est_probes;
    return out;
}

} // namespace rctls
