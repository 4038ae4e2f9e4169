// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exit code 0 only if all pass.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "rctls/bench.hpp"
#include "rctls/bounds.hpp"
#include "rctls/core_reduction.hpp"
#include "rctls/errors.hpp"
#include "rctls/problems.hpp"
#include "rctls/qr.hpp"
#include "rctls/rng.hpp"
#include "rctls/svd.hpp"
#include "rctls/tls.hpp"

using namespace rctls;

namespace {

int g_failures = 0;
std::vector<std::pair<int, std::string>> g_lines;

void report(int criterion, bool pass, const std::string& detail) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%2d", criterion);
    g_lines.emplace_back(criterion, std::string("criterion ") + buf + ": " +
                                        (pass ? "PASS" : "FAIL") + "  " + detail);
    std::fprintf(stderr, "[acceptance] criterion %d %s\n", criterion, pass ? "ok" : "FAILED");
    if (!pass) ++g_failures;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

double rel_err(const Vector& x, const Vector& ref) {
    return norm2(subtract(x, ref)) / norm2(ref);
}

// shared tally for the floor and interlacing criteria, fed by every run on a
// materializable instance
struct MaterializedChecks {
    std::size_t runs = 0;
    std::size_t floor_violations = 0;
    std::size_t interlacing_violations = 0;

    void record(const Vector& true_sigma, const RandSvd& rsvd, double residual_norm) {
        ++runs;
        const double floor = rsvd.rank < true_sigma.size() ? true_sigma[rsvd.rank] : 0.0;
        if (residual_norm < floor - 1e-12) ++floor_violations;
        if (rsvd.rank > 0) {
            if (rsvd.sigma1[0] > true_sigma[0] * (1.0 + 1e-12)) ++interlacing_violations;
            if (rsvd.sigma1[rsvd.rank - 1] > true_sigma[rsvd.rank - 1] * (1.0 + 1e-12))
                ++interlacing_violations;
        }
    }
};

MaterializedChecks g_checks;

double residual_spectral_norm(const DenseMatrix& a, const RandSvd& rsvd) {
    DenseMatrix us = rsvd.u1;
    for (std::size_t i = 0; i < us.rows(); ++i)
        for (std::size_t j = 0; j < us.cols(); ++j) us(i, j) *= rsvd.sigma1[j];
    DenseMatrix ar = multiply_a_bt(us, rsvd.v1);
    DenseMatrix diff(a.rows(), a.cols(), subtract(a.entries(), ar.entries()));
    return spectral_norm(diff);
}

struct StagedRun {
    RandSvd rsvd;
    TlsSolution sol;
};

// pipeline run through the bench harness restart policy, keeping the
// intermediate factorization for the materialized checks
StagedRun staged_solve(const LinearOperator& op, const Vector& b, const RangeFinderConfig& cfg) {
    StagedRun run;
    run.sol = solve_with_restart(op, b, cfg, 3, nullptr, &run.rsvd);
    return run;
}

// --- criterion 1: full-rank sampling equals classical TLS -------------------

void criterion_1() {
    std::size_t done = 0, attempts = 0;
    double worst = 0.0;
    while (done < 50 && attempts < 200) {
        ++attempts;
        const std::uint64_t seed = 1000 + attempts;
        const std::size_t n = 8 + (attempts * 5) % 25; // 8..32
        const std::size_t m = std::min<std::size_t>(48, n + 4 + (attempts * 7) % 16);
        DenseMatrix a = gaussian_matrix(m, n, RngSeed{seed});
        Vector b = gaussian_vector(m, RngSeed{seed + 5000}, 0);
        try {
            TlsSolution cls = classical_tls(a, b);
            if (cls.gap < 1e-6) continue; // keep the comparison well posed
            auto op = dense_operator(a);
            RangeFinderConfig cfg;
            cfg.tolerance = 1e-11;
            cfg.power = 2;
            cfg.seed = RngSeed{seed + 9000};
            TlsSolution sol = solve_randomized_tls(*op, b, cfg);
            if (sol.rank != n) continue;
            worst = std::max(worst, rel_err(sol.x, cls.x));
            ++done;
        } catch (const NongenericError&) {
            continue;
        } catch (const RankOverflowError&) {
            // the tolerance sits below this draw's roundoff floor, so the
            // stopping rule cannot certify; take the next instance
            continue;
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "full-rank randomized vs classical on %zu/50 instances, worst rel err %.3e "
                  "(tol 1e-8)",
                  done, worst);
    report(1, done == 50 && worst <= 1e-8, buf);
}

// --- criterion 2: closed-form core solve vs dense oracles -------------------

void criterion_2() {
    oracles::UniformRng rng(987654321);
    std::size_t done = 0, attempts = 0;
    double worst_sigma = 0.0, worst_y = 0.0;
    while (done < 200 && attempts < 4000) {
        ++attempts;
        const std::size_t t = 1 + static_cast<std::size_t>(rng.next_u64() % 20);
        CoreProblem core;
        double v = rng.next(5.0, 10.0);
        for (std::size_t i = 0; i < t; ++i) {
            core.sigma.push_back(v);
            core.phi.push_back(rng.next(0.1, 2.0));
            core.groups.push_back({1, i});
            v *= rng.next(0.5, 0.95);
        }
        core.phi_tail = rng.next(0.0, 2.0);
        core.back_map = take_columns(DenseMatrix::identity(t), t);

        CoreSolve cs;
        try {
            cs = solve_core_closed_form(core);
        } catch (const NongenericError&) {
            continue;
        }
        const double s1 = core.sigma.front();
        if (cs.gap <= 1e-3 * s1 * s1) continue; // keep the oracle comparison well conditioned
        ++done;

        // oracle 1: sigma_min as the smallest singular value of materialized C
        DenseMatrix c(t + 1, t + 1);
        for (std::size_t i = 0; i < t; ++i) {
            c(i, i) = core.sigma[i];
            c(i, t) = core.phi[i];
        }
        c(t, t) = core.phi_tail;
        Vector sv = singular_values(c);
        const double sigma_min_oracle = sv.back();
        worst_sigma = std::max(worst_sigma, std::abs(cs.sigma_min - sigma_min_oracle) / sv.front());

        // oracle 2: dense LU solve of (A11^T A11 - sigma_min^2 I) y = A11^T b1
        // with the oracle sigma_min
        DenseMatrix lhs(t, t);
        Vector rhs(t);
        for (std::size_t i = 0; i < t; ++i) {
            lhs(i, i) = core.sigma[i] * core.sigma[i] - sigma_min_oracle * sigma_min_oracle;
            rhs[i] = core.sigma[i] * core.phi[i];
        }
        Vector y_oracle = oracles::lu_solve(lhs, rhs);
        for (std::size_t i = 0; i < t; ++i)
            worst_y = std::max(worst_y,
                               std::abs(cs.y[i] - y_oracle[i]) / (1.0 + std::abs(y_oracle[i])));
    }
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "sigma_min vs dense SVD worst %.3e, y vs dense solve worst %.3e on %zu/200 "
                  "cores (tol 1e-10)",
                  worst_sigma, worst_y, done);
    report(2, done == 200 && worst_sigma <= 1e-10 && worst_y <= 1e-10, buf);
}

// --- criteria 3 and 4: 1-D regime reproduction and rank ordering ------------

struct RegimeResult {
    double med_rank = 0.0;
    double med_err = 0.0;
};

RegimeResult regime_run(const TestProblem& prob, const Vector& true_sigma, const Vector* cls_x,
                        std::size_t seeds, bool materialized_checks) {
    DenseMatrix a;
    if (materialized_checks) a = prob.op->materialize();
    std::vector<double> ranks, errs;
    for (std::uint64_t s = 0; s < seeds; ++s) {
        RangeFinderConfig cfg;
        cfg.tolerance = 1e-3;
        cfg.seed = RngSeed{10 + s};
        StagedRun run = staged_solve(*prob.op, prob.b, cfg);
        ranks.push_back(static_cast<double>(run.sol.rank));
        if (cls_x) errs.push_back(rel_err(run.sol.x, *cls_x));
        if (materialized_checks)
            g_checks.record(true_sigma, run.rsvd, residual_spectral_norm(a, run.rsvd));
    }
    RegimeResult r;
    r.med_rank = median(ranks);
    if (cls_x) r.med_err = median(errs);
    return r;
}

void criteria_3_4() {
    struct Row {
        const char* name;
        double rank_lo, rank_hi, err_tol;
    };
    const Row rows[] = {
        {"shaw", 8, 20, 4e-2},
        {"gravity", 14, 30, 3e-3},
        {"foxgood", 7, 16, 3e-2},
    };

    bool pass3 = true;
    std::string detail3;
    double shaw_rank = 0.0, gravity_rank = 0.0;
    for (const Row& row : rows) {
        TestProblem prob = make_problem_1d(row.name, 1024);
        DenseMatrix a = prob.op->materialize();
        Vector true_sigma = singular_values(a);
        TlsSolution cls = classical_tls(a, prob.b);
        RegimeResult res = regime_run(prob, true_sigma, &cls.x, 20, true);
        const bool ok =
            res.med_rank >= row.rank_lo && res.med_rank <= row.rank_hi && res.med_err <= row.err_tol;
        pass3 = pass3 && ok;
        char buf[120];
        std::snprintf(buf, sizeof(buf), "%s[rank %.0f in [%g,%g], err %.3e <= %g] ", row.name,
                      res.med_rank, row.rank_lo, row.rank_hi, res.med_err, row.err_tol);
        detail3 += buf;
        if (std::string(row.name) == "shaw") shaw_rank = res.med_rank;
        if (std::string(row.name) == "gravity") gravity_rank = res.med_rank;
    }
    report(3, pass3, detail3);

    // phillips ranks for the ordering criterion (no classical baseline needed)
    TestProblem phil = make_problem_1d(Problem1d::phillips, 1024);
    std::vector<double> phil_ranks;
    for (std::uint64_t s = 0; s < 5; ++s) {
        RangeFinderConfig cfg;
        cfg.tolerance = 1e-3;
        cfg.seed = RngSeed{10 + s};
        StagedRun run = staged_solve(*phil.op, phil.b, cfg);
        phil_ranks.push_back(static_cast<double>(run.sol.rank));
    }
    const double phillips_rank = median(phil_ranks);
    char buf[160];
    std::snprintf(buf, sizeof(buf), "ranks shaw %.0f < gravity %.0f < phillips %.0f", shaw_rank,
                  gravity_rank, phillips_rank);
    report(4, shaw_rank < gravity_rank && gravity_rank < phillips_rank, buf);
}

// --- criterion 5: residual bound violation rate ------------------------------

void criterion_5() {
    std::size_t violations = 0, runs = 0;
    for (const char* name : {"shaw", "gravity", "foxgood"}) {
        TestProblem prob = make_problem_1d(name, 256);
        DenseMatrix a = prob.op->materialize();
        SvdFactors truth = svd_dense(a);
        SolutionBoundContext ctx;
        ctx.norm_b = norm2(prob.b);
        ctx.norm_x_star = norm2(prob.x_true);
        ctx.sigma_bar_np1 = 0.0;
        for (std::uint64_t s = 0; s < 67 && runs < 200; ++s) {
            RangeFinderConfig cfg;
            cfg.tolerance = 1e-3;
            cfg.seed = RngSeed{5000 + s};
            StagedRun run = staged_solve(*prob.op, prob.b, cfg);
            ++runs;
            ctx.r = run.sol.rank;
            BoundParams bp{run.sol.rank, 0, 0, cfg.power, 0.01};
            BoundReport rep = bound_report(truth, run.sol, bp, ctx);
            if (run.sol.residual_norm > rep.residual_bound) ++violations;
            g_checks.record(truth.sigma, run.rsvd, residual_spectral_norm(a, run.rsvd));
        }
    }
    const double rate = static_cast<double>(violations) / static_cast<double>(runs);
    char buf[120];
    std::snprintf(buf, sizeof(buf), "residual bound violated %zu/%zu times (rate %.3f, tol 0.02)",
                  violations, runs, rate);
    report(5, runs >= 200 && rate <= 0.02, buf);
}

// --- criterion 6: sampling bound violation rates -----------------------------

void criterion_6() {
    const std::size_t n = 64, k = 10, s = 5, trials = 500;
    const double delta = 0.01;
    Vector sigma(n);
    for (std::size_t i = 0; i < n; ++i) sigma[i] = std::pow(0.7, static_cast<double>(i));

    bool pass = true;
    double worst_rate = 0.0;
    for (std::size_t q = 0; q <= 2; ++q) {
        std::vector<double> residuals;
        residuals.reserve(trials);
        for (std::uint64_t t = 0; t < trials; ++t) {
            auto so = synthetic_operator(sigma, n, n, RngSeed{20000 + 8 * t + q});
            RangeFinderConfig cfg;
            cfg.oversample = s;
            cfg.power = q;
            cfg.seed = RngSeed{30000 + 8 * t + q};
            RangeBasis basis = fixed_rank_rangefinder(*so.op, k, cfg);
            DenseMatrix a = so.op->materialize();
            DenseMatrix qta = multiply_at_b(basis.q_basis, a);
            DenseMatrix qqta = multiply(basis.q_basis, qta);
            DenseMatrix diff(n, n, subtract(a.entries(), qqta.entries()));
            const double resid = spectral_norm(diff);
            residuals.push_back(resid);
            // floor check against the known spectrum
            if (basis.rank < n && resid < sigma[basis.rank] - 1e-12) ++g_checks.floor_violations;
            ++g_checks.runs;
        }
        for (std::size_t p = 0; p <= s; ++p) {
            const double rhs = sampled_residual_bound(sigma, n, BoundParams{k, s, p, q, delta});
            std::size_t violations = 0;
            for (double r : residuals)
                if (r > rhs) ++violations;
            const double rate = static_cast<double>(violations) / static_cast<double>(trials);
            worst_rate = std::max(worst_rate, rate);
            if (rate > 0.05) pass = false;
        }
    }
    char buf[120];
    std::snprintf(buf, sizeof(buf),
                  "sampling bound worst violation rate %.3f over p=0..5, q=0..2 (tol 0.05)",
                  worst_rate);
    report(6, pass, buf);
}

// --- criterion 9: truncated TLS at t = n equals classical --------------------

void criterion_9() {
    std::size_t done = 0, attempts = 0;
    double worst = 0.0;
    while (done < 50 && attempts < 200) {
        ++attempts;
        const std::size_t n = 4 + (attempts * 3) % 10;
        const std::size_t m = n + 2 + (attempts * 5) % 10;
        DenseMatrix a = gaussian_matrix(m, n, RngSeed{40000 + attempts});
        Vector b = gaussian_vector(m, RngSeed{41000 + attempts}, 0);
        try {
            TlsSolution cls = classical_tls(a, b);
            if (cls.gap < 1e-6) continue;
            TlsSolution tr = truncated_tls(a, b, n);
            worst = std::max(worst, rel_err(tr.x, cls.x));
            ++done;
        } catch (const NongenericError&) {
            continue;
        } catch (const InvalidTruncationError&) {
            continue;
        }
    }
    char buf[140];
    std::snprintf(buf, sizeof(buf),
                  "truncated(t=n) vs classical on %zu/50 instances, worst rel err %.3e (tol 1e-8)",
                  done, worst);
    report(9, done == 50 && worst <= 1e-8, buf);
}

// --- criterion 10: 2-D gravity regime ----------------------------------------

void criterion_10() {
    bool pass = true;
    std::string detail;
    const struct {
        std::size_t grid;
        double tol;
    } rows[] = {{8, 5e-3}, {16, 0.3}};
    for (const auto& row : rows) {
        TestProblem prob = make_gravity_2d(row.grid);
        DenseMatrix a = prob.op->materialize();
        Vector true_sigma = singular_values(a);
        std::vector<double> errs;
        for (std::uint64_t s = 0; s < 10; ++s) {
            RangeFinderConfig cfg;
            cfg.tolerance = 1e-3;
            cfg.seed = RngSeed{60000 + s};
            StagedRun run = staged_solve(*prob.op, prob.b, cfg);
            errs.push_back(rel_err(run.sol.x, prob.x_true));
            g_checks.record(true_sigma, run.rsvd, residual_spectral_norm(a, run.rsvd));
        }
        const double med = median(errs);
        pass = pass && med <= row.tol;
        char buf[80];
        std::snprintf(buf, sizeof(buf), "grid %zu err %.3e <= %g  ", row.grid, med, row.tol);
        detail += buf;
    }
    report(10, pass, detail);
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criteria_3_4();
    criterion_5();
    criterion_6();
    criterion_9();
    criterion_10();

    // criteria 7 and 8 accumulate over every materializable run above
    {
        char buf[140];
        std::snprintf(buf, sizeof(buf),
                      "Eckart-Young floor violated %zu times over %zu materializable runs",
                      g_checks.floor_violations, g_checks.runs);
        report(7, g_checks.floor_violations == 0 && g_checks.runs > 0, buf);
        std::snprintf(buf, sizeof(buf),
                      "interlacing violated %zu times over %zu materializable runs",
                      g_checks.interlacing_violations, g_checks.runs);
        report(8, g_checks.interlacing_violations == 0, buf);
    }

    std::sort(g_lines.begin(), g_lines.end());
    for (const auto& [num, line] : g_lines) std::printf("%s\n", line.c_str());
    std::printf("%s (%d failure%s)\n", g_failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED",
                g_failures, g_failures == 1 ? "" : "s");
    return g_failures == 0 ? 0 : 1;
}
