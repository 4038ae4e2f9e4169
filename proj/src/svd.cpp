#include "rctls/svd.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numeric>
#include <vector>

#include "rctls/errors.hpp"

namespace rctls {

namespace {

constexpr double kEps = DBL_EPSILON;
constexpr std::size_t kMaxStepsPerValue = 100;

struct Reflector {
    Vector v;     // v[0] = 1
    double beta;
    std::size_t offset; // first row/col the reflector acts on
};

double make_householder(std::span<double> v) {
    const std::size_t n = v.size();
    double sigma = 0.0;
    for (std::size_t i = 1; i < n; ++i) sigma += v[i] * v[i];
    const double x0 = v[0];
    if (sigma == 0.0) {
        v[0] = 1.0;
        return x0 >= 0.0 ? 0.0 : 2.0;
    }
    const double mu = std::sqrt(x0 * x0 + sigma);
    const double v0 = (x0 <= 0.0) ? x0 - mu : -sigma / (x0 + mu);
    const double beta = 2.0 * v0 * v0 / (sigma + v0 * v0);
    for (std::size_t i = 1; i < n; ++i) v[i] /= v0;
    v[0] = 1.0;
    return beta;
}

// Reduce a (m x n, m >= n) to upper bidiagonal d, e. Left/right reflectors
// are returned for factor accumulation.
void bidiagonalize(DenseMatrix& a, Vector& d, Vector& e,
                   std::vector<Reflector>* left, std::vector<Reflector>* right) {
    const std::size_t m = a.rows(), n = a.cols();
    d.assign(n, 0.0);
    e.assign(n > 0 ? n - 1 : 0, 0.0);
    Vector v, w;

    for (std::size_t k = 0; k < n; ++k) {
        // left reflector on column k, rows k..m-1; applied via w = beta A^T v,
        // A -= v w^T, streaming whole rows
        v.resize(m - k);
        for (std::size_t i = k; i < m; ++i) v[i - k] = a(i, k);
        double beta = make_householder(v);
        w.assign(n - k, 0.0);
        for (std::size_t i = k; i < m; ++i) {
            const double vi = v[i - k];
            const double* ai = a.row(i) + k;
            for (std::size_t j = 0; j < n - k; ++j) w[j] += vi * ai[j];
        }
        for (double& wj : w) wj *= beta;
        for (std::size_t i = k; i < m; ++i) {
            const double vi = v[i - k];
            double* ai = a.row(i) + k;
            for (std::size_t j = 0; j < n - k; ++j) ai[j] -= vi * w[j];
        }
        if (left) left->push_back({v, beta, k});
        d[k] = a(k, k);
        if (k + 1 >= n) continue;

        if (k + 2 < n) {
            // right reflector on row k, columns k+1..n-1
            v.resize(n - k - 1);
            for (std::size_t j = k + 1; j < n; ++j) v[j - k - 1] = a(k, j);
            beta = make_householder(v);
            for (std::size_t i = k; i < m; ++i) {
                double* ai = a.row(i);
                double s = 0.0;
                for (std::size_t j = k + 1; j < n; ++j) s += ai[j] * v[j - k - 1];
                s *= beta;
                for (std::size_t j = k + 1; j < n; ++j) ai[j] -= s * v[j - k - 1];
            }
            if (right) right->push_back({v, beta, k + 1});
        }
        e[k] = a(k, k + 1);
    }
}

void make_rot(double a, double b, double& c, double& s, double& r) {
    r = std::hypot(a, b);
    if (r == 0.0) {
        c = 1.0;
        s = 0.0;
    } else {
        c = a / r;
        s = b / r;
    }
}

// rotate two contiguous rows: (x, y) <- (c x + s y, -s x + c y)
void rotate_rows(double* x, double* y, std::size_t len, double c, double s) {
    for (std::size_t i = 0; i < len; ++i) {
        const double t = c * x[i] + s * y[i];
        y[i] = -s * x[i] + c * y[i];
        x[i] = t;
    }
}

struct RotationSinks {
    DenseMatrix* ut = nullptr;  // left rotations: rows of ut
    DenseMatrix* vt = nullptr;  // right rotations: rows of vt
    Vector* phi = nullptr;      // left rotations: scalar pair in phi
};

void apply_left(RotationSinks& sinks, std::size_t i, std::size_t j, double c, double s) {
    if (sinks.ut) rotate_rows(sinks.ut->row(i), sinks.ut->row(j), sinks.ut->cols(), c, s);
    if (sinks.phi) {
        Vector& p = *sinks.phi;
        const double t = c * p[i] + s * p[j];
        p[j] = -s * p[i] + c * p[j];
        p[i] = t;
    }
}

void apply_right(RotationSinks& sinks, std::size_t i, std::size_t j, double c, double s) {
    if (sinks.vt) rotate_rows(sinks.vt->row(i), sinks.vt->row(j), sinks.vt->cols(), c, s);
}

// Implicit-shift QR on the bidiagonal (d, e); rotations stream into sinks.
// Returns the number of QR steps taken.
std::size_t golub_kahan_qr(Vector& d, Vector& e, RotationSinks sinks) {
    const std::size_t n = d.size();
    if (n == 0) return 0;
    const std::size_t max_steps = kMaxStepsPerValue * n;
    std::size_t steps = 0;

    double max_elem = 0.0;
    for (double v : d) max_elem = std::max(max_elem, std::abs(v));
    for (double v : e) max_elem = std::max(max_elem, std::abs(v));
    const double tiny = kEps * max_elem;

    std::size_t hi = n - 1;
    while (hi > 0) {
        // deflate negligible superdiagonal entries
        for (std::size_t i = 0; i < hi; ++i)
            if (std::abs(e[i]) <= kEps * (std::abs(d[i]) + std::abs(d[i + 1])) ||
                std::abs(e[i]) <= tiny)
                e[i] = 0.0;
        if (e[hi - 1] == 0.0) {
            --hi;
            continue;
        }
        std::size_t lo = hi - 1;
        while (lo > 0 && e[lo - 1] != 0.0) --lo;

        // zero diagonal inside the block: split it with rotations
        bool split = false;
        for (std::size_t i = lo; i <= hi; ++i) {
            if (std::abs(d[i]) > tiny) continue;
            d[i] = 0.0;
            if (i < hi && e[i] != 0.0) {
                // chase row i to the right with left rotations
                double t = e[i];
                e[i] = 0.0;
                for (std::size_t k = i + 1; k <= hi; ++k) {
                    double c, s, r;
                    make_rot(d[k], t, c, s, r);
                    d[k] = r;
                    apply_left(sinks, k, i, c, s);
                    if (k < hi) {
                        t = -s * e[k];
                        e[k] = c * e[k];
                    }
                }
                split = true;
            } else if (i == hi && i > lo && e[i - 1] != 0.0) {
                // chase column hi upwards with right rotations
                double t = e[i - 1];
                e[i - 1] = 0.0;
                for (std::size_t k = i; k-- > lo;) {
                    double c, s, r;
                    make_rot(d[k], t, c, s, r);
                    d[k] = r;
                    apply_right(sinks, k, hi, c, s);
                    if (k > lo) {
                        t = -s * e[k - 1];
                        e[k - 1] = c * e[k - 1];
                    }
                }
                split = true;
            }
            if (split) break;
        }
        if (split) continue;

        // Wilkinson shift from the trailing 2x2 of B^T B
        const double dm = d[hi - 1], dn = d[hi], em = e[hi - 1];
        const double em1 = (hi - 1 > lo) ? e[hi - 2] : 0.0;
        const double t11 = dm * dm + em1 * em1;
        const double t12 = dm * em;
        const double t22 = dn * dn + em * em;
        const double delta = 0.5 * (t11 - t22);
        double mu;
        if (t12 == 0.0) {
            mu = t22;
        } else {
            const double denom = delta + std::copysign(std::hypot(delta, t12), delta);
            mu = t22 - t12 * t12 / denom;
        }

        // one implicit QR step on block [lo, hi]
        double y = d[lo] * d[lo] - mu;
        double z = d[lo] * e[lo];
        double bulge = 0.0;
        for (std::size_t k = lo; k < hi; ++k) {
            double c, s, r;
            if (k == lo)
                make_rot(y, z, c, s, r);
            else {
                make_rot(e[k - 1], bulge, c, s, r);
                e[k - 1] = r;
            }
            const double dk = d[k], ek = e[k], dk1 = d[k + 1];
            d[k] = c * dk + s * ek;
            e[k] = -s * dk + c * ek;
            const double b2 = s * dk1;
            d[k + 1] = c * dk1;
            apply_right(sinks, k, k + 1, c, s);

            make_rot(d[k], b2, c, s, r);
            d[k] = r;
            const double ek2 = e[k], dk2 = d[k + 1];
            e[k] = c * ek2 + s * dk2;
            d[k + 1] = -s * ek2 + c * dk2;
            if (k + 1 < hi) {
                bulge = s * e[k + 1];
                e[k + 1] = c * e[k + 1];
            }
            apply_left(sinks, k, k + 1, c, s);
        }
        if (++steps > max_steps)
            throw NumericalFailureError("svd: implicit QR iteration exceeded cap", steps);
    }
    return steps;
}

} // namespace

namespace detail {

SvdResult svd_engine(const DenseMatrix& a, const SvdRequest& req) {
    const std::size_t m = a.rows(), n = a.cols();
    if (m < n) throw InvalidInputError("svd_engine: need rows >= cols");
    if (req.project_left && req.project_left->size() != m)
        throw InvalidInputError("svd_engine: projection vector length mismatch");

    SvdResult res;
    if (n == 0) return res;

    DenseMatrix work = a;
    Vector d, e;
    std::vector<Reflector> lrefl, rrefl;
    bidiagonalize(work, d, e,
                  (req.want_u || req.project_left) ? &lrefl : nullptr,
                  req.want_v ? &rrefl : nullptr);

    // accumulate factors from the Householder phase
    DenseMatrix ut, vt;
    Vector phi;
    const auto accumulate = [](DenseMatrix& f, const std::vector<Reflector>& refl) {
        Vector w;
        const std::size_t rows = f.rows(), cols = f.cols();
        for (std::size_t k = refl.size(); k-- > 0;) {
            const Reflector& h = refl[k];
            if (h.beta == 0.0) continue;
            w.assign(cols, 0.0);
            for (std::size_t i = h.offset; i < rows; ++i) {
                const double vi = h.v[i - h.offset];
                const double* fi = f.row(i);
                for (std::size_t j = 0; j < cols; ++j) w[j] += vi * fi[j];
            }
            for (double& wj : w) wj *= h.beta;
            for (std::size_t i = h.offset; i < rows; ++i) {
                const double vi = h.v[i - h.offset];
                double* fi = f.row(i);
                for (std::size_t j = 0; j < cols; ++j) fi[j] -= vi * w[j];
            }
        }
    };
    if (req.want_u) {
        DenseMatrix u(m, n);
        for (std::size_t j = 0; j < n; ++j) u(j, j) = 1.0;
        accumulate(u, lrefl);
        ut = transpose(u);
    }
    if (req.want_v) {
        DenseMatrix v = DenseMatrix::identity(n);
        accumulate(v, rrefl);
        vt = transpose(v);
    }
    if (req.project_left) {
        Vector pb = *req.project_left; // apply U_bidiag^T to b, keep first n entries
        for (const Reflector& h : lrefl) {
            if (h.beta == 0.0) continue;
            double s = 0.0;
            for (std::size_t i = h.offset; i < m; ++i) s += h.v[i - h.offset] * pb[i];
            s *= h.beta;
            for (std::size_t i = h.offset; i < m; ++i) pb[i] -= s * h.v[i - h.offset];
        }
        phi.assign(pb.begin(), pb.begin() + n);
    }

    RotationSinks sinks;
    if (req.want_u) sinks.ut = &ut;
    if (req.want_v) sinks.vt = &vt;
    if (req.project_left) sinks.phi = &phi;
    res.qr_steps = golub_kahan_qr(d, e, sinks);

    // make values nonnegative
    for (std::size_t i = 0; i < n; ++i) {
        if (d[i] < 0.0) {
            d[i] = -d[i];
            if (sinks.vt) scale_inplace(-1.0, {vt.row(i), n});
            else if (sinks.ut) {
                scale_inplace(-1.0, {ut.row(i), m});
                if (sinks.phi) phi[i] = -phi[i];
            } else if (sinks.phi)
                phi[i] = -phi[i];
        }
    }

    // sort nonincreasing
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return d[i] > d[j]; });

    res.sigma.resize(n);
    for (std::size_t i = 0; i < n; ++i) res.sigma[i] = d[order[i]];

    DenseMatrix ut_sorted, vt_sorted;
    if (req.want_u) {
        ut_sorted = DenseMatrix(n, m);
        for (std::size_t i = 0; i < n; ++i)
            std::copy(ut.row(order[i]), ut.row(order[i]) + m, ut_sorted.row(i));
    }
    if (req.want_v) {
        vt_sorted = DenseMatrix(n, n);
        for (std::size_t i = 0; i < n; ++i)
            std::copy(vt.row(order[i]), vt.row(order[i]) + n, vt_sorted.row(i));
    }
    if (req.project_left) {
        res.left_proj.resize(n);
        for (std::size_t i = 0; i < n; ++i) res.left_proj[i] = phi[order[i]];
    }

    // sign convention: largest-magnitude entry of each left vector positive
    if (req.want_u) {
        for (std::size_t i = 0; i < n; ++i) {
            double* urow = ut_sorted.row(i);
            std::size_t imax = 0;
            for (std::size_t k = 1; k < m; ++k)
                if (std::abs(urow[k]) > std::abs(urow[imax])) imax = k;
            if (urow[imax] < 0.0) {
                scale_inplace(-1.0, {urow, m});
                if (req.want_v) scale_inplace(-1.0, {vt_sorted.row(i), n});
                if (req.project_left) res.left_proj[i] = -res.left_proj[i];
            }
        }
    }

    if (req.want_u) res.u = transpose(ut_sorted);
    if (req.want_v) res.v = transpose(vt_sorted);
    return res;
}

} // namespace detail

SvdFactors svd_dense(const DenseMatrix& m) {
    require_finite(m, "svd_dense");
    const bool flip = m.rows() < m.cols();
    const DenseMatrix& a = m;
    detail::SvdRequest req;
    detail::SvdResult r = flip ? detail::svd_engine(transpose(a), req) : detail::svd_engine(a, req);
    SvdFactors f;
    f.sigma = std::move(r.sigma);
    if (flip) {
        f.u = std::move(r.v);
        f.v = std::move(r.u);
        // the engine sign-fixed the other side; re-apply the convention on u,
        // flipping (u, v) column pairs together
        for (std::size_t j = 0; j < f.sigma.size(); ++j) {
            std::size_t imax = 0;
            for (std::size_t i = 1; i < f.u.rows(); ++i)
                if (std::abs(f.u(i, j)) > std::abs(f.u(imax, j))) imax = i;
            if (f.u(imax, j) < 0.0) {
                for (std::size_t i = 0; i < f.u.rows(); ++i) f.u(i, j) = -f.u(i, j);
                for (std::size_t i = 0; i < f.v.rows(); ++i) f.v(i, j) = -f.v(i, j);
            }
        }
    } else {
        f.u = std::move(r.u);
        f.v = std::move(r.v);
    }
    return f;
}

Vector singular_values(const DenseMatrix& m) {
    require_finite(m, "singular_values");
    detail::SvdRequest req;
    req.want_u = false;
    req.want_v = false;
    detail::SvdResult r =
        m.rows() < m.cols() ? detail::svd_engine(transpose(m), req) : detail::svd_engine(m, req);
    return r.sigma;
}

double spectral_norm(const DenseMatrix& m) {
    if (m.empty()) return 0.0;
    Vector s = singular_values(m);
    return s.empty() ? 0.0 : s.front();
}

} // namespace rctls
