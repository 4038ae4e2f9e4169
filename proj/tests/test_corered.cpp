#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rctls/core_reduction.hpp"
#include "rctls/errors.hpp"
#include "rctls/problems.hpp"
#include "rctls/qr.hpp"
#include "rctls/svd.hpp"
#include "rctls/tls.hpp"

using namespace rctls;

namespace {

DenseMatrix materialize_randsvd(const RandSvd& r) {
    DenseMatrix us = r.u1;
    for (std::size_t i = 0; i < us.rows(); ++i)
        for (std::size_t j = 0; j < us.cols(); ++j) us(i, j) *= r.sigma1[j];
    return multiply_a_bt(us, r.v1);
}

RandSvd synthetic_randsvd(const Vector& sigma, std::size_t m, std::size_t n, RngSeed seed) {
    RandSvd r;
    r.u1 = householder_qr(gaussian_matrix(m, sigma.size(), seed)).q;
    r.v1 = householder_qr(gaussian_matrix(n, sigma.size(), derive_seed(seed, 9))).q;
    r.sigma1 = sigma;
    r.rank = sigma.size();
    return r;
}

} // namespace

TEST_CASE("randomized_svd recovers an exact low-rank operator") {
    Vector sigma(12, 0.0);
    sigma[0] = 4.0;
    sigma[1] = 2.0;
    auto so = synthetic_operator(sigma, 16, 12, RngSeed{1});
    RangeFinderConfig cfg;
    cfg.tolerance = 1e-8;
    cfg.seed = RngSeed{2};
    RandSvd r = randomized_svd(*so.op, cfg);
    REQUIRE(r.rank == 2);
    CHECK(std::abs(r.sigma1[0] - 4.0) <= 1e-10);
    CHECK(std::abs(r.sigma1[1] - 2.0) <= 1e-10);
    CHECK(oracles::orthonormality_defect(r.u1) <= 1e-12);
    CHECK(oracles::orthonormality_defect(r.v1) <= 1e-12);
}

TEST_CASE("randomized_svd zero operator") {
    auto zero = dense_operator(DenseMatrix(8, 6));
    RangeFinderConfig cfg;
    cfg.tolerance = 1e-6;
    RandSvd r = randomized_svd(*zero, cfg);
    CHECK(r.rank == 0);
    CHECK(r.sigma1.empty());
}

TEST_CASE("randomized_svd equals the projected matrix and meets the tolerance on shaw") {
    TestProblem prob = make_problem_1d(Problem1d::shaw, 64);
    DenseMatrix a = prob.op->materialize();
    SvdFactors truth = svd_dense(a);

    std::size_t ok = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        RangeFinderConfig cfg;
        cfg.tolerance = 1e-3;
        cfg.seed = RngSeed{seed};
        RandSvd r = randomized_svd(*prob.op, cfg);
        DenseMatrix ar = materialize_randsvd(r);
        DenseMatrix diff(a.rows(), a.cols(), subtract(a.entries(), ar.entries()));
        const double resid = spectral_norm(diff);
        if (resid <= 1e-3) ++ok;
        if (seed < 10) {
            // A_r equals Q Q^T A to machine precision: compare against the
            // basis-projection residual measured independently
            RangeBasis basis = subspace_iteration(
                *prob.op, adaptive_rangefinder(*prob.op, cfg), cfg.power);
            const double proj_resid = oracles::projection_residual_norm(a, basis.q_basis);
            CHECK(std::abs(resid - proj_resid) <= 1e-12);
        }
        // interlacing on a materializable run
        CHECK(r.sigma1[0] <= truth.sigma[0] * (1.0 + 1e-12));
        CHECK(r.sigma1[r.rank - 1] <= truth.sigma[r.rank - 1] * (1.0 + 1e-12));
        // Eckart-Young floor
        CHECK(resid >= truth.sigma[r.rank] - 1e-12);
    }
    CHECK(ok >= 99);
}

TEST_CASE("build_core generic path") {
    RandSvd r = synthetic_randsvd(Vector{3.0, 2.0, 0.5}, 10, 8, RngSeed{11});
    Vector b = gaussian_vector(10, RngSeed{12}, 0);
    CoreProblem core = build_core(r, b, 0.0);
    REQUIRE(core.sigma.size() == 3);
    for (std::size_t j = 0; j < 3; ++j) {
        CHECK(core.sigma[j] == r.sigma1[j]);
        CHECK(core.groups[j].multiplicity == 1);
        const double utb = dot(column(r.u1, j), b);
        CHECK(core.phi[j] == doctest::Approx(std::abs(utb)).epsilon(1e-14));
        // back_map is v1 with the sign absorbed
        Vector v = column(r.v1, j);
        const double sign = utb >= 0.0 ? 1.0 : -1.0;
        for (std::size_t i = 0; i < 8; ++i)
            CHECK(core.back_map(i, j) == doctest::Approx(sign * v[i]).epsilon(1e-14));
    }
    CHECK(oracles::orthonormality_defect(core.back_map) <= 1e-12);

    // orthogonal decomposition of b
    double sum = core.phi_tail * core.phi_tail;
    for (double p : core.phi) sum += p * p;
    CHECK(std::sqrt(sum) == doctest::Approx(norm2(b)).epsilon(1e-10));
}

TEST_CASE("build_core consistent right-hand side has zero tail") {
    RandSvd r = synthetic_randsvd(Vector{2.0, 1.0}, 9, 7, RngSeed{13});
    // b inside range(u1)
    Vector c{0.7, -0.3};
    Vector b = matvec(r.u1, c);
    CoreProblem core = build_core(r, b);
    CHECK(core.phi_tail <= 1e-12);
}

TEST_CASE("build_core groups exact multiplicities and matches classical TLS") {
    RandSvd r = synthetic_randsvd(Vector{3.0, 3.0, 2.0, 1.0}, 5, 4, RngSeed{14});
    Vector b = gaussian_vector(5, RngSeed{15}, 0);
    CoreProblem core = build_core(r, b);
    REQUIRE(core.sigma.size() == 3);
    CHECK(core.groups[0].multiplicity == 2);
    CHECK(core.groups[1].multiplicity == 1);
    CHECK(core.groups[2].multiplicity == 1);
    CHECK(oracles::orthonormality_defect(core.back_map) <= 1e-12);

    CoreSolve cs = solve_core_closed_form(core);
    Vector x_core = back_transform(core, cs.y);
    TlsSolution classical = classical_tls(materialize_randsvd(r), b);
    CHECK(norm2(subtract(x_core, classical.x)) / norm2(classical.x) <= 1e-10);
}

TEST_CASE("core solve equals classical TLS on generic sampled instances") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const std::size_t m = 12 + seed, n = 6 + seed % 5;
        Vector sigma(n);
        for (std::size_t i = 0; i < n; ++i) sigma[i] = 4.0 / (1.0 + static_cast<double>(i));
        RandSvd r = synthetic_randsvd(sigma, m, n, RngSeed{100 + seed});
        Vector b = gaussian_vector(m, RngSeed{200 + seed}, 0);
        CoreProblem core = build_core(r, b);
        CoreSolve cs = solve_core_closed_form(core);
        Vector x_core = back_transform(core, cs.y);
        TlsSolution classical = classical_tls(materialize_randsvd(r), b);
        CHECK(norm2(subtract(x_core, classical.x)) / norm2(classical.x) <= 1e-10);
        // the closed form's sigma_min is the smallest singular value of [A_r, b]
        CHECK(cs.sigma_min ==
              doctest::Approx(classical.sigma_min_core).epsilon(1e-10));
    }
}

TEST_CASE("build_core drops groups with zero projection") {
    RandSvd r;
    r.u1 = DenseMatrix::identity(4);
    r.v1 = DenseMatrix::identity(4);
    r.sigma1 = {4.0, 3.0, 2.0, 1.0};
    r.rank = 4;
    Vector b{1.0, 0.0, 2.0, 0.0}; // components 1 and 3 vanish
    CoreProblem core = build_core(r, b);
    REQUIRE(core.sigma.size() == 2);
    CHECK(core.sigma[0] == 4.0);
    CHECK(core.sigma[1] == 2.0);
    CHECK(core.phi[0] == doctest::Approx(1.0));
    CHECK(core.phi[1] == doctest::Approx(2.0));
}

TEST_CASE("build_core input validation") {
    RandSvd r = synthetic_randsvd(Vector{1.0}, 5, 4, RngSeed{16});
    CHECK_THROWS_AS(build_core(r, Vector{}), InvalidInputError);
    CHECK_THROWS_AS(build_core(r, Vector(3, 1.0)), InvalidInputError);
    CHECK_THROWS_AS(build_core(r, Vector(5, 1.0), -1.0), InvalidInputError);
}
