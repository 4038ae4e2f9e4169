#include "rctls/linear_operator.hpp"

#include <string>

#include "rctls/errors.hpp"
#include "rctls/qr.hpp"

namespace rctls {

Vector LinearOperator::apply(std::span<const double> x) const {
    if (x.size() != cols()) throw InvalidInputError("apply: vector length != cols");
    Vector y(rows());
    apply(x, y);
    return y;
}

Vector LinearOperator::apply_transpose(std::span<const double> y) const {
    if (y.size() != rows()) throw InvalidInputError("apply_transpose: vector length != rows");
    Vector x(cols());
    apply_transpose(y, x);
    return x;
}

DenseMatrix LinearOperator::apply_block(const DenseMatrix& x) const {
    if (x.rows() != cols()) throw InvalidInputError("apply_block: row count != cols");
    DenseMatrix y(rows(), x.cols());
    Vector in(cols()), out(rows());
    for (std::size_t j = 0; j < x.cols(); ++j) {
        for (std::size_t i = 0; i < cols(); ++i) in[i] = x(i, j);
        apply(in, out);
        set_column(y, j, out);
    }
    return y;
}

DenseMatrix LinearOperator::apply_transpose_block(const DenseMatrix& y) const {
    if (y.rows() != rows()) throw InvalidInputError("apply_transpose_block: row count != rows");
    DenseMatrix x(cols(), y.cols());
    Vector in(rows()), out(cols());
    for (std::size_t j = 0; j < y.cols(); ++j) {
        for (std::size_t i = 0; i < rows(); ++i) in[i] = y(i, j);
        apply_transpose(in, out);
        set_column(x, j, out);
    }
    return x;
}

DenseMatrix LinearOperator::materialize() const {
    DenseMatrix a(rows(), cols());
    Vector e(cols(), 0.0), y(rows());
    for (std::size_t j = 0; j < cols(); ++j) {
        e[j] = 1.0;
        apply(e, y);
        set_column(a, j, y);
        e[j] = 0.0;
    }
    return a;
}

// --- DenseOperator ----------------------------------------------------------

DenseOperator::DenseOperator(DenseMatrix a) : a_(std::move(a)) {
    require_finite(a_, "dense_operator");
}

void DenseOperator::apply(std::span<const double> x, std::span<double> y) const {
    Vector r = matvec(a_, x);
    std::copy(r.begin(), r.end(), y.begin());
}

void DenseOperator::apply_transpose(std::span<const double> y, std::span<double> x) const {
    Vector r = matvec_transpose(a_, y);
    std::copy(r.begin(), r.end(), x.begin());
}

DenseMatrix DenseOperator::apply_block(const DenseMatrix& x) const {
    return multiply(a_, x);
}

DenseMatrix DenseOperator::apply_transpose_block(const DenseMatrix& y) const {
    return multiply_at_b(a_, y);
}

// --- KroneckerOperator ------------------------------------------------------

KroneckerOperator::KroneckerOperator(DenseMatrix left, DenseMatrix right)
    : left_(std::move(left)), right_(std::move(right)) {
    require_finite(left_, "kronecker_operator left factor");
    require_finite(right_, "kronecker_operator right factor");
    if (left_.empty() || right_.empty())
        throw InvalidInputError("kronecker_operator: empty factor");
}

void KroneckerOperator::apply(std::span<const double> x, std::span<double> y) const {
    const std::size_t lc = left_.cols(), rc = right_.cols();
    const std::size_t lr = left_.rows(), rr = right_.rows();
    if (x.size() != lc * rc)
        throw InvalidInputError("kronecker apply: vector length " + std::to_string(x.size()) +
                                " != cols(left)*cols(right) = " + std::to_string(lc * rc));
    // X = reshape(x) column-major with rc rows, lc cols: X(i,j) = x[j*rc + i]
    // Y = right * X * left^T, then y = vec(Y) column-major with rr rows
    DenseMatrix xm(rc, lc);
    for (std::size_t j = 0; j < lc; ++j)
        for (std::size_t i = 0; i < rc; ++i) xm(i, j) = x[j * rc + i];
    DenseMatrix t = multiply(right_, xm);      // rr x lc
    DenseMatrix ym = multiply_a_bt(t, left_);  // rr x lr
    for (std::size_t j = 0; j < lr; ++j)
        for (std::size_t i = 0; i < rr; ++i) y[j * rr + i] = ym(i, j);
}

void KroneckerOperator::apply_transpose(std::span<const double> y, std::span<double> x) const {
    const std::size_t lc = left_.cols(), rc = right_.cols();
    const std::size_t lr = left_.rows(), rr = right_.rows();
    if (y.size() != lr * rr)
        throw InvalidInputError("kronecker apply_transpose: vector length mismatch");
    DenseMatrix ym(rr, lr);
    for (std::size_t j = 0; j < lr; ++j)
        for (std::size_t i = 0; i < rr; ++i) ym(i, j) = y[j * rr + i];
    DenseMatrix t = multiply_at_b(right_, ym); // rc x lr
    DenseMatrix xm = multiply(t, left_);       // rc x lc
    for (std::size_t j = 0; j < lc; ++j)
        for (std::size_t i = 0; i < rc; ++i) x[j * rc + i] = xm(i, j);
}

DenseMatrix KroneckerOperator::materialize() const {
    DenseMatrix k(rows(), cols());
    for (std::size_t i = 0; i < left_.rows(); ++i)
        for (std::size_t j = 0; j < left_.cols(); ++j) {
            const double lij = left_(i, j);
            for (std::size_t p = 0; p < right_.rows(); ++p)
                for (std::size_t q = 0; q < right_.cols(); ++q)
                    k(i * right_.rows() + p, j * right_.cols() + q) = lij * right_(p, q);
        }
    return k;
}

// --- SyntheticSpectrumOperator ----------------------------------------------

SyntheticSpectrumOperator::SyntheticSpectrumOperator(DenseMatrix u, Vector sigma, DenseMatrix v)
    : u_(std::move(u)), sigma_(std::move(sigma)), v_(std::move(v)) {
    if (u_.cols() != sigma_.size() || v_.cols() != sigma_.size())
        throw InvalidInputError("synthetic operator: factor widths differ from sigma length");
}

void SyntheticSpectrumOperator::apply(std::span<const double> x, std::span<double> y) const {
    Vector t = matvec_transpose(v_, x);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] *= sigma_[i];
    Vector r = matvec(u_, t);
    std::copy(r.begin(), r.end(), y.begin());
}

void SyntheticSpectrumOperator::apply_transpose(std::span<const double> y, std::span<double> x) const {
    Vector t = matvec_transpose(u_, y);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] *= sigma_[i];
    Vector r = matvec(v_, t);
    std::copy(r.begin(), r.end(), x.begin());
}

DenseMatrix SyntheticSpectrumOperator::materialize() const {
    DenseMatrix us = u_;
    for (std::size_t i = 0; i < us.rows(); ++i)
        for (std::size_t j = 0; j < us.cols(); ++j) us(i, j) *= sigma_[j];
    return multiply_a_bt(us, v_);
}

// --- factories ---------------------------------------------------------------

std::shared_ptr<LinearOperator> dense_operator(DenseMatrix m) {
    return std::make_shared<DenseOperator>(std::move(m));
}

std::shared_ptr<LinearOperator> kronecker_operator(DenseMatrix left, DenseMatrix right) {
    return std::make_shared<KroneckerOperator>(std::move(left), std::move(right));
}

SyntheticOperator synthetic_operator(const Vector& sigma, std::size_t m, std::size_t n, RngSeed seed) {
    if (sigma.empty() || sigma.size() > std::min(m, n))
        throw InvalidInputError("synthetic_operator: need 1 <= len(sigma) <= min(m, n)");
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        if (sigma[i] < 0.0) throw InvalidInputError("synthetic_operator: negative singular value");
        if (i > 0 && sigma[i] > sigma[i - 1])
            throw InvalidInputError("synthetic_operator: sigma must be nonincreasing");
    }
    DenseMatrix u = householder_qr(gaussian_matrix(m, sigma.size(), seed)).q;
    DenseMatrix v = householder_qr(gaussian_matrix(n, sigma.size(), derive_seed(seed, 1))).q;
    SyntheticOperator s;
    s.factors = SvdFactors{u, sigma, v};
    s.op = std::make_shared<SyntheticSpectrumOperator>(std::move(u), sigma, std::move(v));
    return s;
}

} // namespace rctls
