#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rctls {

using Vector = std::vector<double>;

// Row-major dense real matrix. The carrier for every small factored object
// in the library; values are immutable by convention once handed out.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols);          // zero-filled
    DenseMatrix(std::size_t rows, std::size_t cols, Vector entries);

    static DenseMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    double& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    double* data() { return entries_.data(); }
    const double* data() const { return entries_.data(); }
    const Vector& entries() const { return entries_; }

    // Pointer to the start of row i (row-major layout).
    double* row(std::size_t i) { return entries_.data() + i * cols_; }
    const double* row(std::size_t i) const { return entries_.data() + i * cols_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Vector entries_;
};

// --- vector helpers -------------------------------------------------------

double dot(std::span<const double> x, std::span<const double> y);
double norm2(std::span<const double> x);
void scale_inplace(double alpha, std::span<double> x);
void axpy(double alpha, std::span<const double> x, std::span<double> y); // y += alpha*x
Vector subtract(std::span<const double> x, std::span<const double> y);   // x - y
bool all_finite(std::span<const double> x);

// --- matrix helpers -------------------------------------------------------

DenseMatrix transpose(const DenseMatrix& a);
DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);        // A B
DenseMatrix multiply_at_b(const DenseMatrix& a, const DenseMatrix& b);   // A^T B
DenseMatrix multiply_a_bt(const DenseMatrix& a, const DenseMatrix& b);   // A B^T
Vector matvec(const DenseMatrix& a, std::span<const double> x);
Vector matvec_transpose(const DenseMatrix& a, std::span<const double> x);
double frobenius_norm(const DenseMatrix& a);
DenseMatrix hcat(const DenseMatrix& a, std::span<const double> v);       // [A, v]
Vector column(const DenseMatrix& a, std::size_t j);
void set_column(DenseMatrix& a, std::size_t j, std::span<const double> v);
DenseMatrix take_columns(const DenseMatrix& a, std::size_t count);       // first columns

// Throws InvalidInputError when any entry is NaN/Inf.
void require_finite(const DenseMatrix& a, const char* what);

} // namespace rctls
