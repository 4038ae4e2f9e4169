#pragma once

#include "rctls/dense_matrix.hpp"

namespace rctls {

struct QrFactors {
    DenseMatrix q; // m x n, orthonormal columns
    DenseMatrix r; // n x n, upper triangular
};

// Thin Householder QR of an m x n matrix with m >= n.
QrFactors householder_qr(const DenseMatrix& m);

} // namespace rctls
