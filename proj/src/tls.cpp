#include "rctls/tls.hpp"

#include <cfloat>
#include <cmath>
#include <string>

#include "rctls/errors.hpp"
#include "rctls/svd.hpp"

namespace rctls {

namespace {

constexpr double kGapTol = 1e-12;     // near-nongeneric trigger, relative to sigma_1^2
constexpr double kPinvCutoff = 1e-12; // pseudoinverse singular-value cutoff, relative

// [A, b] padded with zero rows to at least n+1 rows, so its SVD always
// carries the full set of n+1 right singular vectors.
DenseMatrix padded_augmented(const DenseMatrix& a, const Vector& b) {
    DenseMatrix ab = hcat(a, b);
    if (ab.rows() >= ab.cols()) return ab;
    DenseMatrix padded(ab.cols(), ab.cols());
    for (std::size_t i = 0; i < ab.rows(); ++i)
        for (std::size_t j = 0; j < ab.cols(); ++j) padded(i, j) = ab(i, j);
    return padded;
}

void check_tls_inputs(const DenseMatrix& a, const Vector& b, const char* what) {
    if (a.rows() < a.cols() || a.cols() == 0)
        throw InvalidInputError(std::string(what) + ": need rows >= cols >= 1");
    if (b.size() != a.rows())
        throw InvalidInputError(std::string(what) + ": right-hand side length != rows");
    require_finite(a, what);
    if (!all_finite(b)) throw InvalidInputError(std::string(what) + ": non-finite right-hand side");
}

// Moore-Penrose solve min ||m x - rhs|| with the spec'd relative cutoff.
Vector pinv_solve(const DenseMatrix& m, const Vector& rhs) {
    SvdFactors f = svd_dense(m);
    const double cutoff = f.sigma.empty() ? 0.0 : kPinvCutoff * f.sigma.front();
    Vector utb = matvec_transpose(f.u, rhs);
    Vector y(f.sigma.size(), 0.0);
    for (std::size_t i = 0; i < f.sigma.size(); ++i)
        if (f.sigma[i] > cutoff) y[i] = utb[i] / f.sigma[i];
    return matvec(f.v, y);
}

} // namespace

CoreSolve solve_core_closed_form(const CoreProblem& core) {
    const std::size_t t = core.sigma.size();
    if (t == 0) throw InvalidInputError("solve_core_closed_form: empty core");

    CoreSolve out;
    if (core.phi_tail > 0.0) {
        // C^{-1} in closed form: diagonal 1/sigma_i, last column
        // -phi_i / (sigma_i phi_tail), corner 1/phi_tail
        DenseMatrix cinv(t + 1, t + 1);
        for (std::size_t i = 0; i < t; ++i) {
            cinv(i, i) = 1.0 / core.sigma[i];
            cinv(i, t) = -core.phi[i] / (core.sigma[i] * core.phi_tail);
        }
        cinv(t, t) = 1.0 / core.phi_tail;
        out.sigma_min = 1.0 / spectral_norm(cinv);
    } else {
        out.sigma_min = 0.0;
    }

    const double s1 = core.sigma.front();
    const double smin2 = out.sigma_min * out.sigma_min;
    out.gap = core.sigma.back() * core.sigma.back() - smin2;
    if (out.gap <= kGapTol * s1 * s1)
        throw NongenericError("solve_core_closed_form: sigma_min too close to a core "
                              "singular value; perturb the sample rank and retry",
                              out.gap);

    out.y.resize(t);
    for (std::size_t i = 0; i < t; ++i) {
        if (core.phi_tail > 0.0)
            out.y[i] = core.sigma[i] * core.phi[i] / (core.sigma[i] * core.sigma[i] - smin2);
        else
            out.y[i] = core.phi[i] / core.sigma[i];
    }
    return out;
}

Vector back_transform(const CoreProblem& core, const Vector& y) {
    if (y.size() != core.sigma.size())
        throw InvalidInputError("back_transform: core solution length mismatch");
    return matvec(core.back_map, y);
}

TlsSolution solve_randomized_tls(const LinearOperator& op, const Vector& b,
                                 const RangeFinderConfig& cfg) {
    if (op.rows() < op.cols() || op.cols() == 0)
        throw InvalidInputError("solve_randomized_tls: need rows >= cols >= 1");
    if (b.size() != op.rows())
        throw InvalidInputError("solve_randomized_tls: right-hand side length != rows");

    RandSvd rsvd = randomized_svd(op, cfg);
    CoreProblem core = build_core(rsvd, b);
    CoreSolve cs = solve_core_closed_form(core);

    TlsSolution sol;
    sol.x = back_transform(core, cs.y);
    sol.y = cs.y;
    sol.sigma_min_core = cs.sigma_min;
    sol.gap = cs.gap;
    sol.method = TlsMethod::randomized_core;
    sol.rank = rsvd.rank;
    sol.residual_norm = norm2(subtract(b, op.apply(sol.x)));
    return sol;
}

TlsSolution classical_tls(const DenseMatrix& a, const Vector& b) {
    check_tls_inputs(a, b, "classical_tls");
    const std::size_t n = a.cols();

    Vector sv_ab = singular_values(padded_augmented(a, b));
    const double sigma_bar = sv_ab[n]; // sigma_{n+1}([A, b])

    detail::SvdRequest req;
    req.want_u = false;
    req.want_v = true;
    req.project_left = &b;
    detail::SvdResult f = detail::svd_engine(a, req);

    const double sigma_n = f.sigma[n - 1];
    const double floor = static_cast<double>(std::max(a.rows(), n + 1)) * DBL_EPSILON * sv_ab[0];
    if (sigma_n > floor && sigma_n - sigma_bar <= floor)
        throw NongenericError("classical_tls: sigma_n(A) does not exceed sigma_{n+1}([A, b])",
                              sigma_n - sigma_bar);

    // minimum-norm diagonal solve of (A^T A - sigma_bar^2 I) x = A^T b
    double dmax = 0.0;
    Vector denom(n);
    for (std::size_t i = 0; i < n; ++i) {
        denom[i] = f.sigma[i] * f.sigma[i] - sigma_bar * sigma_bar;
        dmax = std::max(dmax, std::abs(denom[i]));
    }
    const double cutoff = kPinvCutoff * dmax;

    TlsSolution sol;
    sol.method = TlsMethod::classical;
    sol.sigma_min_core = sigma_bar;
    sol.y.assign(n, 0.0);
    sol.gap = 0.0;
    std::size_t kept = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(denom[i]) <= cutoff) continue;
        sol.y[i] = f.sigma[i] * f.left_proj[i] / denom[i];
        sol.gap = (kept == 0) ? denom[i] : std::min(sol.gap, denom[i]);
        ++kept;
    }
    if (kept == 0)
        throw NongenericError("classical_tls: no solvable components", 0.0);
    sol.rank = kept;
    sol.x = matvec(f.v, sol.y);
    sol.residual_norm = norm2(subtract(b, matvec(a, sol.x)));
    return sol;
}

TlsSolution classical_tls_nullspace(const DenseMatrix& a, const Vector& b) {
    check_tls_inputs(a, b, "classical_tls_nullspace");
    const std::size_t n = a.cols();

    SvdFactors f = svd_dense(padded_augmented(a, b));
    const double v22 = f.v(n, n);
    if (v22 == 0.0)
        throw NongenericError("classical_tls_nullspace: last right singular vector has zero "
                              "right-hand-side component",
                              0.0);
    TlsSolution sol;
    sol.method = TlsMethod::classical;
    sol.sigma_min_core = f.sigma[n];
    sol.rank = n;
    sol.x.resize(n);
    for (std::size_t i = 0; i < n; ++i) sol.x[i] = -f.v(i, n) / v22;
    const double sn = f.sigma[n - 1];
    sol.gap = sn * sn - f.sigma[n] * f.sigma[n];
    sol.residual_norm = norm2(subtract(b, matvec(a, sol.x)));
    return sol;
}

TlsSolution truncated_tls(const DenseMatrix& a, const Vector& b, std::size_t t) {
    check_tls_inputs(a, b, "truncated_tls");
    const std::size_t n = a.cols();
    if (t == 0 || t > n) throw InvalidInputError("truncated_tls: need 1 <= t <= cols");

    SvdFactors f = svd_dense(padded_augmented(a, b));
    std::size_t rank_ab = 0;
    for (double s : f.sigma)
        if (s > kPinvCutoff * f.sigma.front()) ++rank_ab;
    if (t > rank_ab)
        throw InvalidInputError("truncated_tls: t exceeds the numerical rank of [A, b]");
    if (!(f.sigma[t] < f.sigma[t - 1]))
        throw InvalidTruncationError("truncated_tls: no spectral gap at the requested level");

    // V22 = last row of V, columns t..n; V12 = first n rows, columns t..n
    double v22_norm2 = 0.0;
    for (std::size_t j = t; j <= n; ++j) v22_norm2 += f.v(n, j) * f.v(n, j);
    if (v22_norm2 == 0.0)
        throw NongenericError("truncated_tls: V22 vanishes at this truncation", 0.0);

    TlsSolution sol;
    sol.method = TlsMethod::truncated;
    sol.rank = t;
    sol.sigma_min_core = f.sigma[t];
    sol.gap = f.sigma[t - 1] * f.sigma[t - 1] - f.sigma[t] * f.sigma[t];
    sol.x.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = t; j <= n; ++j) s += f.v(i, j) * f.v(n, j);
        sol.x[i] = -s / v22_norm2;
    }
    sol.residual_norm = norm2(subtract(b, matvec(a, sol.x)));
    return sol;
}

Vector truncated_tls_via_v11(const DenseMatrix& a, const Vector& b, std::size_t t) {
    check_tls_inputs(a, b, "truncated_tls_via_v11");
    const std::size_t n = a.cols();
    if (t == 0 || t > n) throw InvalidInputError("truncated_tls_via_v11: bad level");
    SvdFactors f = svd_dense(padded_augmented(a, b));
    // solve V11^T x = V21^T in the least-squares sense
    DenseMatrix v11t(t, n);
    Vector v21t(t);
    for (std::size_t i = 0; i < t; ++i) {
        for (std::size_t j = 0; j < n; ++j) v11t(i, j) = f.v(j, i);
        v21t[i] = f.v(n, i);
    }
    return pinv_solve(v11t, v21t);
}

Vector truncated_tls_via_pinv(const DenseMatrix& a, const Vector& b, std::size_t t) {
    check_tls_inputs(a, b, "truncated_tls_via_pinv");
    const std::size_t n = a.cols();
    if (t == 0 || t > n) throw InvalidInputError("truncated_tls_via_pinv: bad level");
    SvdFactors f = svd_dense(padded_augmented(a, b));
    // truncated [A~, b~]; keep the first m rows and drop the final column
    DenseMatrix at(a.rows(), n);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < t; ++k) s += f.u(i, k) * f.sigma[k] * f.v(j, k);
            at(i, j) = s;
        }
    return pinv_solve(at, b);
}

} // namespace rctls
