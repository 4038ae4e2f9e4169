#pragma once

#include "rctls/core_reduction.hpp"
#include "rctls/dense_matrix.hpp"
#include "rctls/linear_operator.hpp"

namespace rctls {

enum class TlsMethod { randomized_core, classical, truncated };

struct TlsSolution {
    Vector x;                    // solution in original coordinates
    Vector y;                    // core solution / spectral coefficients (method-dependent)
    double sigma_min_core = 0.0; // smallest singular value of the augmented core
    double residual_norm = 0.0;  // ||b - A x|| against the true operator
    double gap = 0.0;            // min_i (sigma_i^2 - sigma_min_core^2) over solved components
    TlsMethod method = TlsMethod::randomized_core;
    std::size_t rank = 0;        // sample rank / retained components / truncation level
};

struct CoreSolve {
    Vector y;
    double sigma_min;
    double gap;
};

// Closed-form solve of the diagonal core problem. With phi_tail > 0 the
// inverse of the augmented core C = [A11, b1] is formed explicitly (diagonal
// inverse, rescaled last column) and sigma_min = 1 / ||C^{-1}||; with
// phi_tail = 0 the problem degenerates to the linear system y_i = phi_i/sigma_i.
// Throws NongenericError when min_i(sigma_i^2 - sigma_min^2) <= 1e-12 sigma_1^2.
CoreSolve solve_core_closed_form(const CoreProblem& core);

// x = back_map * y
Vector back_transform(const CoreProblem& core, const Vector& y);

// Full pipeline: randomized SVD -> core problem -> closed-form solve -> back
// transform. The residual is measured against the true operator.
TlsSolution solve_randomized_tls(const LinearOperator& op, const Vector& b,
                                 const RangeFinderConfig& cfg);

// Classical SVD-based TLS: minimum-norm solution of
// (A^T A - sigma_{n+1}^2([A, b]) I) x = A^T b, solved diagonally in the SVD
// basis of A; components whose denominators sit below 1e-12 of the largest are
// dropped, which realizes the minimum-norm solution on numerically singular
// systems. Throws NongenericError on a definite genericity violation.
TlsSolution classical_tls(const DenseMatrix& a, const Vector& b);

// Same solution through the right null vector of [A, b] (x = -v12 / v22).
TlsSolution classical_tls_nullspace(const DenseMatrix& a, const Vector& b);

// Truncated TLS at level t: x = -V12 V22^+ from the SVD of [A, b].
// Requires a spectral gap sigma_{t+1} < sigma_t and V22 != 0.
TlsSolution truncated_tls(const DenseMatrix& a, const Vector& b, std::size_t t);

// Alternate truncated-TLS routes (equal in exact arithmetic; the
// pseudoinverse route is the least accurate of the three).
Vector truncated_tls_via_v11(const DenseMatrix& a, const Vector& b, std::size_t t);
Vector truncated_tls_via_pinv(const DenseMatrix& a, const Vector& b, std::size_t t);

} // namespace rctls
