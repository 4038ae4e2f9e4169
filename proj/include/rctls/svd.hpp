#pragma once

#include "rctls/dense_matrix.hpp"

namespace rctls {

// Thin SVD a = u * diag(sigma) * v^T with orthonormal u, v and
// sigma sorted nonincreasing.
struct SvdFactors {
    DenseMatrix u;  // rows x k
    Vector sigma;   // k = min(rows, cols)
    DenseMatrix v;  // cols x k
};

// Full thin SVD via Golub-Kahan bidiagonalization followed by implicit-shift
// QR iteration on the bidiagonal. Deterministic: singular vector pairs are
// sign-fixed so the largest-magnitude entry of each left vector is positive.
// Throws NumericalFailureError if the iteration cap (100 per value) is hit.
SvdFactors svd_dense(const DenseMatrix& m);

// Singular values only (no vector accumulation; much cheaper).
Vector singular_values(const DenseMatrix& m);

// Largest singular value; 0 for an empty or zero matrix.
double spectral_norm(const DenseMatrix& m);

namespace detail {

// Shared engine, rows >= cols required. Optionally skips factor accumulation
// and can track u^T b for a given vector b at O(1) cost per rotation, which
// is what the classical TLS solver needs at large sizes.
struct SvdRequest {
    bool want_u = true;
    bool want_v = true;
    const Vector* project_left = nullptr; // when set, result.left_proj = u^T * (*project_left)
};

struct SvdResult {
    Vector sigma;
    DenseMatrix u;      // rows x cols if requested
    DenseMatrix v;      // cols x cols if requested
    Vector left_proj;   // length cols if requested
    std::size_t qr_steps = 0;
};

SvdResult svd_engine(const DenseMatrix& a, const SvdRequest& req);

} // namespace detail

} // namespace rctls
