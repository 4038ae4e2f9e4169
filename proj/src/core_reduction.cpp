#include "rctls/core_reduction.hpp"

#include <cmath>

#include "rctls/errors.hpp"
#include "rctls/svd.hpp"

namespace rctls {

RandSvd randomized_svd(const LinearOperator& op, const RangeFinderConfig& cfg) {
    return randomized_svd_from_basis(op, adaptive_rangefinder(op, cfg), cfg.power);
}

RandSvd randomized_svd_from_basis(const LinearOperator& op, const RangeBasis& start,
                                  std::size_t power) {
    RangeBasis basis = subspace_iteration(op, start, power);

    RandSvd out;
    if (basis.rank == 0) return out;

    // (q^T A)^T = A^T q, sized n x r with n >= r not guaranteed; the SVD
    // handles either orientation
    DenseMatrix bt = op.apply_transpose_block(basis.q_basis);
    SvdFactors f = svd_dense(bt); // bt = w sigma z^T, so q^T A = z sigma w^T

    std::size_t rank = 0;
    for (double s : f.sigma)
        if (s > 0.0) ++rank;

    out.rank = rank;
    out.sigma1.assign(f.sigma.begin(), f.sigma.begin() + rank);
    out.v1 = take_columns(f.u, rank);
    out.u1 = multiply(basis.q_basis, take_columns(f.v, rank));
    return out;
}

CoreProblem build_core(const RandSvd& svd, const Vector& b, double cluster_tol) {
    if (b.empty()) throw InvalidInputError("build_core: empty right-hand side");
    if (svd.rank > 0 && b.size() != svd.u1.rows())
        throw InvalidInputError("build_core: right-hand side length != operator rows");
    if (cluster_tol < 0.0) throw InvalidInputError("build_core: negative cluster tolerance");
    if (!all_finite(b)) throw InvalidInputError("build_core: non-finite right-hand side");

    const std::size_t r = svd.rank;
    const std::size_t n = r > 0 ? svd.v1.rows() : 0;
    const double norm_b = norm2(b);
    const double drop_tol = 1e-14 * norm_b;

    CoreProblem core;

    // group indices of clustered singular values
    std::vector<std::pair<std::size_t, std::size_t>> spans; // [first, last]
    for (std::size_t i = 0; i < r; ++i) {
        if (!spans.empty()) {
            const double prev = svd.sigma1[i - 1];
            if (prev - svd.sigma1[i] <= cluster_tol * prev) {
                spans.back().second = i;
                continue;
            }
        }
        spans.emplace_back(i, i);
    }

    std::vector<Vector> kept_cols;
    for (const auto& [first, last] : spans) {
        const std::size_t h = last - first + 1;
        // w = u1[:, group]^T b
        Vector w(h, 0.0);
        for (std::size_t i = 0; i < b.size(); ++i) {
            const double bi = b[i];
            if (bi == 0.0) continue;
            const double* ui = svd.u1.row(i);
            for (std::size_t j = 0; j < h; ++j) w[j] += ui[first + j] * bi;
        }
        const double phi = norm2(w);
        if (phi <= drop_tol) continue; // zero projection: permuted to the tail

        double rep = 0.0;
        for (std::size_t j = first; j <= last; ++j) rep += svd.sigma1[j];
        rep /= static_cast<double>(h);

        Vector col(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double* vi = svd.v1.row(i);
            double s = 0.0;
            for (std::size_t j = 0; j < h; ++j) s += vi[first + j] * w[j];
            col[i] = s / phi;
        }
        core.sigma.push_back(rep);
        core.phi.push_back(phi);
        core.groups.push_back({h, first});
        kept_cols.push_back(std::move(col));
    }

    core.back_map = DenseMatrix(n, kept_cols.size());
    for (std::size_t j = 0; j < kept_cols.size(); ++j) set_column(core.back_map, j, kept_cols[j]);

    // phi_tail = ||b - u1 u1^T b||, formed as an explicit residual
    if (r > 0) {
        Vector utb = matvec_transpose(svd.u1, b);
        Vector proj = matvec(svd.u1, utb);
        Vector resid = subtract(b, proj);
        core.phi_tail = norm2(resid);
    } else {
        core.phi_tail = norm_b;
    }
    return core;
}

} // namespace rctls
