#pragma once

#include <vector>

#include "rctls/dense_matrix.hpp"
#include "rctls/linear_operator.hpp"
#include "rctls/rangefinder.hpp"

namespace rctls {

// Approximate factorization A ~ u1 diag(sigma1) v1^T restricted to the sampled
// range; zero singular values are trimmed so sigma1 is strictly positive.
struct RandSvd {
    DenseMatrix u1;  // m x rank
    Vector sigma1;   // strictly positive, nonincreasing
    DenseMatrix v1;  // n x rank
    std::size_t rank = 0;
};

struct CoreGroup {
    std::size_t multiplicity;
    std::size_t first_index; // position of the group head in sigma1
};

// The reduced pair {A11, b1}: A11 = [diag(sigma); 0], b1 = [phi; phi_tail],
// plus the map back to original coordinates (x = back_map * y).
struct CoreProblem {
    Vector sigma;          // t strictly decreasing group representatives
    Vector phi;            // t strictly positive projections
    double phi_tail = 0.0; // ||b - u1 u1^T b||
    DenseMatrix back_map;  // n x t, orthonormal columns
    std::vector<CoreGroup> groups;
};

// Range finder + subspace iteration, then an exact SVD of the projected
// r x n matrix q^T A, with u1 lifted back by q.
RandSvd randomized_svd(const LinearOperator& op, const RangeFinderConfig& cfg);

// Same projection SVD starting from an existing basis (used to restart from a
// truncated sample when the closed-form solve reports a nongeneric core).
RandSvd randomized_svd_from_basis(const LinearOperator& op, const RangeBasis& basis,
                                  std::size_t power);

// Builds the approximate core problem. Singular values within a relative
// cluster_tol of their predecessor are grouped (multiplicity path); per group
// the Householder product collapses to back_map_j = v1[:,group] * w / ||w||
// with w = u1[:,group]^T b. Groups with ||w|| <= 1e-14 ||b|| are dropped.
CoreProblem build_core(const RandSvd& svd, const Vector& b, double cluster_tol = 1e-10);

} // namespace rctls
