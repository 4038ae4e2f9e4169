#pragma once

#include <memory>
#include <span>

#include "rctls/dense_matrix.hpp"
#include "rctls/rng.hpp"
#include "rctls/svd.hpp"

namespace rctls {

// A matrix accessed only through products with itself and its transpose.
// Implementations are immutable after construction and safe to apply from
// multiple threads.
class LinearOperator {
public:
    virtual ~LinearOperator() = default;

    virtual std::size_t rows() const = 0;
    virtual std::size_t cols() const = 0;

    virtual void apply(std::span<const double> x, std::span<double> y) const = 0;           // y = A x
    virtual void apply_transpose(std::span<const double> y, std::span<double> x) const = 0; // x = A^T y

    Vector apply(std::span<const double> x) const;
    Vector apply_transpose(std::span<const double> y) const;

    // column-wise block products; overridden where a faster path exists
    virtual DenseMatrix apply_block(const DenseMatrix& x) const;            // A X
    virtual DenseMatrix apply_transpose_block(const DenseMatrix& y) const;  // A^T Y

    // dense A for oracle checks and classical baselines; desk scale only
    virtual DenseMatrix materialize() const;
};

class DenseOperator final : public LinearOperator {
public:
    explicit DenseOperator(DenseMatrix a);
    std::size_t rows() const override { return a_.rows(); }
    std::size_t cols() const override { return a_.cols(); }
    void apply(std::span<const double> x, std::span<double> y) const override;
    void apply_transpose(std::span<const double> y, std::span<double> x) const override;
    DenseMatrix apply_block(const DenseMatrix& x) const override;
    DenseMatrix apply_transpose_block(const DenseMatrix& y) const override;
    DenseMatrix materialize() const override { return a_; }
    const DenseMatrix& matrix() const { return a_; }

private:
    DenseMatrix a_;
};

// left (x) right, never formed explicitly: apply(vec(X)) = vec(right * X * left^T)
// with column-major vec, so a length cols(left)*cols(right) input reshapes to
// an X with rows(X) = cols(right).
class KroneckerOperator final : public LinearOperator {
public:
    KroneckerOperator(DenseMatrix left, DenseMatrix right);
    std::size_t rows() const override { return left_.rows() * right_.rows(); }
    std::size_t cols() const override { return left_.cols() * right_.cols(); }
    void apply(std::span<const double> x, std::span<double> y) const override;
    void apply_transpose(std::span<const double> y, std::span<double> x) const override;
    DenseMatrix materialize() const override;
    const DenseMatrix& left() const { return left_; }
    const DenseMatrix& right() const { return right_; }

private:
    DenseMatrix left_;
    DenseMatrix right_;
};

// u * diag(sigma) * v^T with prescribed singular values and random orthonormal
// factors; carries its own exact SVD for bound experiments.
class SyntheticSpectrumOperator final : public LinearOperator {
public:
    SyntheticSpectrumOperator(DenseMatrix u, Vector sigma, DenseMatrix v);
    std::size_t rows() const override { return u_.rows(); }
    std::size_t cols() const override { return v_.rows(); }
    void apply(std::span<const double> x, std::span<double> y) const override;
    void apply_transpose(std::span<const double> y, std::span<double> x) const override;
    DenseMatrix materialize() const override;
    SvdFactors factors() const { return {u_, sigma_, v_}; }

private:
    DenseMatrix u_;
    Vector sigma_;
    DenseMatrix v_;
};

std::shared_ptr<LinearOperator> dense_operator(DenseMatrix m);
std::shared_ptr<LinearOperator> kronecker_operator(DenseMatrix left, DenseMatrix right);

struct SyntheticOperator {
    std::shared_ptr<LinearOperator> op;
    SvdFactors factors;
};

// Operator with exactly the prescribed nonincreasing singular values; the
// orthonormal factors come from QR of seeded Gaussian matrices.
SyntheticOperator synthetic_operator(const Vector& sigma, std::size_t m, std::size_t n, RngSeed seed);

} // namespace rctls
