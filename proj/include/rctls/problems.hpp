#pragma once

#include <map>
#include <memory>
#include <string>

#include "rctls/dense_matrix.hpp"
#include "rctls/linear_operator.hpp"

namespace rctls {

// A generated benchmark instance. Generators are deterministic: identical
// inputs give bit-identical problems, and b is always op * x_true.
struct TestProblem {
    std::string name;
    std::shared_ptr<LinearOperator> op;
    Vector b;
    Vector x_true;
    std::size_t n = 0;
    std::map<std::string, double> metadata;
};

enum class Problem1d { shaw, gravity, foxgood, phillips, deriv2 };

// First-kind Fredholm discretizations at size n:
//
//   shaw     Galerkin-type collocation of the one-dimensional image
//            restoration kernel k(s,t) = (cos s + cos t)^2 (sin u / u)^2,
//            u = pi (sin s + sin t), on [-pi/2, pi/2] midpoints, weight pi/n.
//   gravity  midpoint quadrature of k(s,t) = d (d^2 + (s-t)^2)^(-3/2) on
//            [0,1], depth d (default 0.25, metadata key "d").
//   foxgood  midpoint quadrature of k(s,t) = sqrt(s^2 + t^2) on [0,1].
//   phillips Galerkin with orthonormal box functions for the convolution
//            kernel k(u) = 1 + cos(pi u / 3) on |u| < 3, domain [-6, 6];
//            entries come from the closed-form second difference of the
//            twice-integrated kernel. n must be divisible by 4.
//   deriv2   Galerkin with orthonormal box functions for the Green function
//            of the second derivative, g(s,t) = min(s,t) (max(s,t) - 1).
TestProblem make_problem_1d(Problem1d which, std::size_t n,
                            const std::map<std::string, double>& params = {});
TestProblem make_problem_1d(const std::string& name, std::size_t n,
                            const std::map<std::string, double>& params = {});

// Two-dimensional gravity surveying on the unit square: midpoint collocation
// of K = d (d^2 + (x-s)^2 + (y-t)^2)^(-3/2) on a grid x grid mesh (n = grid^2)
// with true solution f(s,t) = sin(pi s) sin(pi t).
TestProblem make_gravity_2d(std::size_t grid, double d = 0.25);

// Separable Gaussian blur: A = T (x) T with T banded symmetric Toeplitz,
// T_ij = exp(-(i-j)^2 / (2 spread^2)) / (spread sqrt(2 pi)) for |i-j| < band.
// The true image is a deterministic two-rectangle pattern.
TestProblem make_blur(std::size_t grid, std::size_t band = 8, double spread = 2.5);

// Optional exploration knob: perturbs b by seeded white noise scaled to
// rel_level * ||b||. Benchmarks run noiseless unless asked otherwise.
TestProblem with_noise(TestProblem p, double rel_level, RngSeed seed);

} // namespace rctls
