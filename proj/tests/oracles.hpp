#pragma once

// Test-only reference implementations, independent of the library's
// computational paths. Everything here is written for clarity, not speed.

#include <cstdint>
#include <vector>

#include "rctls/dense_matrix.hpp"

namespace oracles {

using rctls::DenseMatrix;
using rctls::Vector;

// Eigenvalues of a symmetric matrix by the cyclic Jacobi rotation method,
// sorted nonincreasing.
Vector jacobi_eigenvalues(const DenseMatrix& sym, double tol = 1e-14);

// Singular values of m via jacobi_eigenvalues(m^T m), sorted nonincreasing.
Vector singular_values_via_gram(const DenseMatrix& m);

// Dense solve of a square system by LU with partial pivoting.
Vector lu_solve(DenseMatrix a, Vector b);

// Explicit Kronecker product left (x) right.
DenseMatrix kronecker_dense(const DenseMatrix& left, const DenseMatrix& right);

// Largest eigenpair of a symmetric matrix by plain power iteration.
void power_method(const DenseMatrix& sym, Vector& eigvec, double& eigval,
                  std::size_t iterations = 2000);

// ||a - q q^T a|| in the spectral norm, q with orthonormal columns.
double projection_residual_norm(const DenseMatrix& a, const DenseMatrix& q);

// ||q^T q - I|| in the spectral norm.
double orthonormality_defect(const DenseMatrix& q);

// Simple deterministic LCG-based uniform in [lo, hi), independent of the
// library's Gaussian sampler.
class UniformRng {
public:
    explicit UniformRng(std::uint64_t seed) : state_(seed * 2862933555777941757ULL + 3037000493ULL) {}
    double next(double lo, double hi);
    std::uint64_t next_u64();

private:
    std::uint64_t state_;
};

} // namespace oracles
