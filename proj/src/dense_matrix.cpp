#include "rctls/dense_matrix.hpp"

#include <cmath>
#include <string>

#include "rctls/errors.hpp"

namespace rctls {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, 0.0) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, Vector entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_)
        throw InvalidInputError("DenseMatrix: entries length " + std::to_string(entries_.size()) +
                                " does not match " + std::to_string(rows_) + "x" + std::to_string(cols_));
    if (!all_finite(entries_))
        throw InvalidInputError("DenseMatrix: non-finite entry");
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

double dot(std::span<const double> x, std::span<const double> y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

double norm2(std::span<const double> x) {
    // scaled sum of squares, robust to over/underflow
    double scale = 0.0;
    for (double v : x) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return 0.0;
    double s = 0.0;
    for (double v : x) {
        const double r = v / scale;
        s += r * r;
    }
    return scale * std::sqrt(s);
}

void scale_inplace(double alpha, std::span<double> x) {
    for (double& v : x) v *= alpha;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

Vector subtract(std::span<const double> x, std::span<const double> y) {
    Vector r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
    return r;
}

bool all_finite(std::span<const double> x) {
    for (double v : x)
        if (!std::isfinite(v)) return false;
    return true;
}

DenseMatrix transpose(const DenseMatrix& a) {
    DenseMatrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) throw InvalidInputError("multiply: inner dimensions differ");
    DenseMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double* ci = c.row(i);
        const double* ai = a.row(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = ai[k];
            if (aik == 0.0) continue;
            const double* bk = b.row(k);
            for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
        }
    }
    return c;
}

DenseMatrix multiply_at_b(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows()) throw InvalidInputError("multiply_at_b: row counts differ");
    DenseMatrix c(a.cols(), b.cols());
    for (std::size_t k = 0; k < a.rows(); ++k) {
        const double* ak = a.row(k);
        const double* bk = b.row(k);
        for (std::size_t i = 0; i < a.cols(); ++i) {
            const double aki = ak[i];
            if (aki == 0.0) continue;
            double* ci = c.row(i);
            for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aki * bk[j];
        }
    }
    return c;
}

DenseMatrix multiply_a_bt(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.cols()) throw InvalidInputError("multiply_a_bt: column counts differ");
    DenseMatrix c(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* ai = a.row(i);
        double* ci = c.row(i);
        for (std::size_t j = 0; j < b.rows(); ++j) {
            const double* bj = b.row(j);
            double s = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k) s += ai[k] * bj[k];
            ci[j] = s;
        }
    }
    return c;
}

Vector matvec(const DenseMatrix& a, std::span<const double> x) {
    if (x.size() != a.cols()) throw InvalidInputError("matvec: length mismatch");
    Vector y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* ai = a.row(i);
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += ai[j] * x[j];
        y[i] = s;
    }
    return y;
}

Vector matvec_transpose(const DenseMatrix& a, std::span<const double> x) {
    if (x.size() != a.rows()) throw InvalidInputError("matvec_transpose: length mismatch");
    Vector y(a.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double xi = x[i];
        if (xi == 0.0) continue;
        const double* ai = a.row(i);
        for (std::size_t j = 0; j < a.cols(); ++j) y[j] += ai[j] * xi;
    }
    return y;
}

double frobenius_norm(const DenseMatrix& a) {
    return norm2(a.entries());
}

DenseMatrix hcat(const DenseMatrix& a, std::span<const double> v) {
    if (v.size() != a.rows()) throw InvalidInputError("hcat: length mismatch");
    DenseMatrix c(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* ai = a.row(i);
        double* ci = c.row(i);
        for (std::size_t j = 0; j < a.cols(); ++j) ci[j] = ai[j];
        ci[a.cols()] = v[i];
    }
    return c;
}

Vector column(const DenseMatrix& a, std::size_t j) {
    Vector v(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) v[i] = a(i, j);
    return v;
}

void set_column(DenseMatrix& a, std::size_t j, std::span<const double> v) {
    for (std::size_t i = 0; i < a.rows(); ++i) a(i, j) = v[i];
}

DenseMatrix take_columns(const DenseMatrix& a, std::size_t count) {
    DenseMatrix c(a.rows(), count);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < count; ++j) c(i, j) = a(i, j);
    return c;
}

void require_finite(const DenseMatrix& a, const char* what) {
    if (!all_finite(a.entries()))
        throw InvalidInputError(std::string(what) + ": non-finite entry");
}

} // namespace rctls
