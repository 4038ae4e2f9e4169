#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oracles {

Vector jacobi_eigenvalues(const DenseMatrix& sym, double tol) {
    const std::size_t n = sym.rows();
    DenseMatrix a = sym;
    const double fro = rctls::frobenius_norm(a);
    if (fro == 0.0) return Vector(n, 0.0);

    for (std::size_t sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += 2.0 * a(i, j) * a(i, j);
        if (std::sqrt(off) <= tol * fro) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (a(p, q) == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    Vector ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i);
    std::sort(ev.begin(), ev.end(), std::greater<>());
    return ev;
}

Vector singular_values_via_gram(const DenseMatrix& m) {
    const DenseMatrix gram = rctls::multiply_at_b(m, m);
    Vector ev = jacobi_eigenvalues(gram);
    for (double& v : ev) v = std::sqrt(std::max(v, 0.0));
    return ev;
}

Vector lu_solve(DenseMatrix a, Vector b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n) throw std::invalid_argument("lu_solve: dimensions");
    std::vector<std::size_t> piv(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
        piv[k] = p;
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            std::swap(b[k], b[p]);
        }
        if (a(k, k) == 0.0) throw std::runtime_error("lu_solve: singular matrix");
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = a(i, k) / a(k, k);
            a(i, k) = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
            b[i] -= f * b[k];
        }
    }
    Vector x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
        x[i] = s / a(i, i);
    }
    return x;
}

DenseMatrix kronecker_dense(const DenseMatrix& left, const DenseMatrix& right) {
    DenseMatrix k(left.rows() * right.rows(), left.cols() * right.cols());
    for (std::size_t i = 0; i < left.rows(); ++i)
        for (std::size_t j = 0; j < left.cols(); ++j) {
            const double lij = left(i, j);
            for (std::size_t p = 0; p < right.rows(); ++p)
                for (std::size_t q = 0; q < right.cols(); ++q)
                    k(i * right.rows() + p, j * right.cols() + q) = lij * right(p, q);
        }
    return k;
}

void power_method(const DenseMatrix& sym, Vector& eigvec, double& eigval, std::size_t iterations) {
    const std::size_t n = sym.rows();
    Vector v(n, 1.0);
    v[0] = 1.5; // break symmetry
    for (std::size_t it = 0; it < iterations; ++it) {
        Vector w = rctls::matvec(sym, v);
        const double nw = rctls::norm2(w);
        if (nw == 0.0) break;
        for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / nw;
    }
    Vector w = rctls::matvec(sym, v);
    eigval = rctls::dot(v, w);
    eigvec = v;
}

double projection_residual_norm(const DenseMatrix& a, const DenseMatrix& q) {
    DenseMatrix qta = rctls::multiply_at_b(q, a);
    DenseMatrix qqta = rctls::multiply(q, qta);
    DenseMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - qqta(i, j);
    Vector sv = singular_values_via_gram(r);
    return sv.empty() ? 0.0 : sv.front();
}

double orthonormality_defect(const DenseMatrix& q) {
    DenseMatrix g = rctls::multiply_at_b(q, q);
    for (std::size_t i = 0; i < g.rows(); ++i) g(i, i) -= 1.0;
    Vector sv = singular_values_via_gram(g);
    return sv.empty() ? 0.0 : sv.front();
}

double UniformRng::next(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(next_u64() >> 11) * 0x1.0p-53);
}

std::uint64_t UniformRng::next_u64() {
    state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    std::uint64_t x = state_;
    x ^= x >> 33;
    x *= 0xFF51AFD7ED558CCDULL;
    x ^= x >> 33;
    return x;
}

} // namespace oracles
