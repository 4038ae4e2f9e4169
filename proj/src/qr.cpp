#include "rctls/qr.hpp"

#include <cmath>
#include <vector>

#include "rctls/errors.hpp"

namespace rctls {

namespace {

// Householder vector for x: returns beta and overwrites v so that
// (I - beta v v^T) x = (±||x||, 0, ..., 0)^T, with v[0] = 1.
double make_householder(std::span<double> v) {
    const std::size_t n = v.size();
    double sigma = 0.0;
    for (std::size_t i = 1; i < n; ++i) sigma += v[i] * v[i];
    const double x0 = v[0];
    if (sigma == 0.0) {
        v[0] = 1.0;
        return x0 >= 0.0 ? 0.0 : 2.0; // reflection flips sign when x0 < 0
    }
    const double mu = std::sqrt(x0 * x0 + sigma);
    double v0 = (x0 <= 0.0) ? x0 - mu : -sigma / (x0 + mu);
    const double beta = 2.0 * v0 * v0 / (sigma + v0 * v0);
    for (std::size_t i = 1; i < n; ++i) v[i] /= v0;
    v[0] = 1.0;
    return beta;
}

} // namespace

QrFactors householder_qr(const DenseMatrix& m) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    if (rows < cols)
        throw InvalidInputError("householder_qr: need rows >= cols");
    require_finite(m, "householder_qr");

    DenseMatrix a = m;                 // gets reduced to R in place
    std::vector<Vector> vs(cols);      // Householder vectors
    std::vector<double> betas(cols);
    Vector v, w;

    for (std::size_t k = 0; k < cols; ++k) {
        v.resize(rows - k);
        for (std::size_t i = k; i < rows; ++i) v[i - k] = a(i, k);
        const double beta = make_householder(v);
        // apply (I - beta v v^T) to trailing columns
        for (std::size_t j = k; j < cols; ++j) {
            double s = 0.0;
            for (std::size_t i = k; i < rows; ++i) s += v[i - k] * a(i, j);
            s *= beta;
            for (std::size_t i = k; i < rows; ++i) a(i, j) -= s * v[i - k];
        }
        vs[k] = v;
        betas[k] = beta;
    }

    QrFactors f;
    f.r = DenseMatrix(cols, cols);
    for (std::size_t i = 0; i < cols; ++i)
        for (std::size_t j = i; j < cols; ++j) f.r(i, j) = a(i, j);

    // backward accumulation of Q = H_0 ... H_{n-1} applied to leading columns of I
    f.q = DenseMatrix(rows, cols);
    for (std::size_t j = 0; j < cols; ++j) f.q(j, j) = 1.0;
    for (std::size_t k = cols; k-- > 0;) {
        const Vector& vk = vs[k];
        const double beta = betas[k];
        if (beta == 0.0) continue;
        for (std::size_t j = 0; j < cols; ++j) {
            double s = 0.0;
            for (std::size_t i = k; i < rows; ++i) s += vk[i - k] * f.q(i, j);
            s *= beta;
            for (std::size_t i = k; i < rows; ++i) f.q(i, j) -= s * vk[i - k];
        }
    }
    return f;
}

} // namespace rctls
