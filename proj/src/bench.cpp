#include "rctls/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "rctls/bounds.hpp"
#include "rctls/errors.hpp"
#include "rctls/problem_io.hpp"
#include "rctls/svd.hpp"

namespace rctls {

namespace {

double rel_err(const Vector& x, const Vector& ref) {
    return norm2(subtract(x, ref)) / norm2(ref);
}

std::size_t grid_side(std::size_t n, const char* what) {
    const auto g = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(n))));
    if (g * g != n)
        throw InvalidInputError(std::string(what) + ": n must be a perfect square (grid^2)");
    return g;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

TestProblem load_problem(const RunConfig& cfg) {
    if (!cfg.from_file.empty()) return import_problem(cfg.from_file);
    if (cfg.problem == "gravity2d") {
        const std::size_t g = grid_side(cfg.n, "gravity2d");
        if (g > kMaxGridSide)
            throw InvalidInputError("gravity2d: grid side capped at " + std::to_string(kMaxGridSide));
        auto it = cfg.params.find("d");
        return make_gravity_2d(g, it == cfg.params.end() ? 0.25 : it->second);
    }
    if (cfg.problem == "blur") {
        const std::size_t g = grid_side(cfg.n, "blur");
        if (g > kMaxGridSide)
            throw InvalidInputError("blur: grid side capped at " + std::to_string(kMaxGridSide));
        auto band = cfg.params.find("band");
        auto spread = cfg.params.find("spread");
        return make_blur(g, band == cfg.params.end() ? 8 : static_cast<std::size_t>(band->second),
                         spread == cfg.params.end() ? 2.5 : spread->second);
    }
    if (cfg.n > kMax1dSize)
        throw InvalidInputError("1-D problems capped at n = " + std::to_string(kMax1dSize));
    return make_problem_1d(cfg.problem, cfg.n, cfg.params);
}

TlsSolution solve_with_restart(const LinearOperator& op, const Vector& b, RangeFinderConfig cfg,
                               std::size_t max_restarts, std::size_t* restarts_out,
                               RandSvd* rsvd_out) {
    std::size_t restarts = 0;
    bool capped = false;
    for (;;) {
        RandSvd rsvd;
        if (capped) {
            // the reduced cap usually fires the overflow error before the
            // stopping rule; the partial basis is exactly the wanted sample
            try {
                rsvd = randomized_svd(op, cfg);
            } catch (const RankOverflowError& e) {
                rsvd = randomized_svd_from_basis(op, e.partial, cfg.power);
            }
        } else {
            rsvd = randomized_svd(op, cfg);
        }
        try {
            CoreProblem core = build_core(rsvd, b);
            CoreSolve cs = solve_core_closed_form(core);
            TlsSolution sol;
            sol.x = back_transform(core, cs.y);
            sol.y = cs.y;
            sol.sigma_min_core = cs.sigma_min;
            sol.gap = cs.gap;
            sol.method = TlsMethod::randomized_core;
            sol.rank = rsvd.rank;
            sol.residual_norm = norm2(subtract(b, op.apply(sol.x)));
            if (restarts_out) *restarts_out = restarts;
            if (rsvd_out) *rsvd_out = std::move(rsvd);
            return sol;
        } catch (const NongenericError&) {
            if (restarts >= max_restarts || rsvd.rank <= 1) throw;
            ++restarts;
            if (restarts == 1) {
                cfg.max_rank = rsvd.rank - 1;
            } else {
                // back off to the clearly separated part of the sampled spectrum
                const double cut = (restarts == 2 ? 1e-5 : 1e-4) * rsvd.sigma1[0];
                std::size_t r = 0;
                while (r < rsvd.rank && rsvd.sigma1[r] >= cut) ++r;
                cfg.max_rank = std::max<std::size_t>(1, r);
            }
            capped = true;
        }
    }
}

std::vector<RunRecord> cmd_solve(const RunConfig& cfg) {
    if (cfg.trials < 1) throw InvalidInputError("cmd_solve: trials must be at least 1");
    if (!(cfg.epsilon > 0.0)) throw InvalidInputError("cmd_solve: epsilon must be positive");

    TestProblem prob = load_problem(cfg);
    if (cfg.noise > 0.0) prob = with_noise(std::move(prob), cfg.noise, derive_seed(cfg.seed, 777));

    // baseline solution, shared across trials
    Vector baseline_x;
    if (cfg.baseline == RunConfig::Baseline::classical) {
        baseline_x = classical_tls(prob.op->materialize(), prob.b).x;
    }

    std::vector<RunRecord> records;
    records.reserve(cfg.trials);
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        const RngSeed trial_seed = cfg.trials == 1 ? cfg.seed : derive_seed(cfg.seed, t);
        RangeFinderConfig rf;
        rf.tolerance = cfg.epsilon;
        rf.power = cfg.power;
        rf.seed = trial_seed;

        const auto t0 = std::chrono::steady_clock::now();
        std::size_t restarts = 0;
        TlsSolution sol = solve_with_restart(*prob.op, prob.b, rf, 3, &restarts);
        const auto t1 = std::chrono::steady_clock::now();

        RunRecord rec;
        rec.problem = prob.name;
        rec.n = prob.n;
        rec.epsilon = cfg.epsilon;
        rec.seed = trial_seed.value;
        rec.rank = sol.rank;
        rec.err_true = rel_err(sol.x, prob.x_true);
        rec.residual = sol.residual_norm;
        rec.time_s = std::chrono::duration<double>(t1 - t0).count();
        rec.restarts = restarts;
        if (cfg.baseline == RunConfig::Baseline::classical) {
            rec.err_classical = rel_err(sol.x, baseline_x);
        } else if (cfg.baseline == RunConfig::Baseline::truncated) {
            TlsSolution tr = truncated_tls(prob.op->materialize(), prob.b, sol.rank);
            rec.err_classical = rel_err(sol.x, tr.x);
        }
        records.push_back(std::move(rec));
    }
    return records;
}

void write_csv(std::ostream& out, const std::vector<RunRecord>& records) {
    out << "# rctls-csv v1\n";
    out << "problem,n,epsilon,seed,rank,err_classical,err_true,residual,time_s\n";
    for (const RunRecord& r : records) {
        out << r.problem << ',' << r.n << ',' << format_double(r.epsilon) << ',' << r.seed << ','
            << r.rank << ',' << (r.err_classical ? format_double(*r.err_classical) : "") << ','
            << format_double(r.err_true) << ',' << format_double(r.residual) << ','
            << format_double(r.time_s) << '\n';
    }
    if (!out) throw IoError("write_csv: write failed");
}

namespace {

void bench_runs(const std::vector<RunConfig>& configs, std::ostream& out, std::ostream& diag) {
    std::vector<RunRecord> all;
    for (const RunConfig& cfg : configs) {
        diag << "bench: " << cfg.problem << " n=" << cfg.n << " eps=" << cfg.epsilon << "\n";
        std::vector<RunRecord> recs = cmd_solve(cfg);
        all.insert(all.end(), recs.begin(), recs.end());
    }
    write_csv(out, all);
}

void bench_bounds(std::size_t trials, RngSeed seed, std::ostream& out, std::ostream& diag) {
    out << "# rctls-csv v1\n";
    out << "check,problem,n,k,s,p,q,delta,trials,violations,rate\n";

    // sampling bound on a synthetic geometric spectrum
    {
        const std::size_t n = 64, k = 10, s = 5;
        const double delta = 0.01;
        Vector sigma(n);
        for (std::size_t i = 0; i < n; ++i) sigma[i] = std::pow(0.7, static_cast<double>(i));
        diag << "bench: sampling bound, " << trials << " trials\n";
        for (std::size_t q = 0; q <= 2; ++q) {
            // one set of samples per q; the balance parameter only moves the bound
            std::vector<double> residuals(trials);
            for (std::size_t t = 0; t < trials; ++t) {
                SyntheticOperator so = synthetic_operator(sigma, n, n, derive_seed(seed, t * 16 + q));
                RangeFinderConfig rf;
                rf.oversample = s;
                rf.power = q;
                rf.seed = derive_seed(seed, t * 16 + q + 7);
                RangeBasis basis = fixed_rank_rangefinder(*so.op, k, rf);
                DenseMatrix a = so.op->materialize();
                DenseMatrix qta = multiply_at_b(basis.q_basis, a);
                DenseMatrix qqta = multiply(basis.q_basis, qta);
                for (std::size_t i = 0; i < a.rows(); ++i)
                    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) -= qqta(i, j);
                residuals[t] = spectral_norm(a);
            }
            for (std::size_t p = 0; p <= s; ++p) {
                BoundParams bp{k, s, p, q, delta};
                const double rhs = sampled_residual_bound(sigma, n, bp);
                std::size_t violations = 0;
                for (double r : residuals)
                    if (r > rhs) ++violations;
                out << "sampling,synthetic," << n << ',' << k << ',' << s << ',' << p << ',' << q
                    << ',' << delta << ',' << trials << ',' << violations << ','
                    << format_double(static_cast<double>(violations) / static_cast<double>(trials))
                    << '\n';
            }
        }
    }

    // residual bound across the 1-D problems at n = 256
    for (const char* name : {"shaw", "gravity", "foxgood"}) {
        diag << "bench: residual bound on " << name << "\n";
        TestProblem prob = make_problem_1d(name, 256);
        DenseMatrix a = prob.op->materialize();
        SvdFactors truth = svd_dense(a);
        const double delta = 0.01;
        std::size_t violations = 0;
        for (std::size_t t = 0; t < trials; ++t) {
            RangeFinderConfig rf;
            rf.tolerance = 1e-3;
            rf.seed = derive_seed(seed, 1000 + t);
            TlsSolution sol = solve_with_restart(*prob.op, prob.b, rf, 3);
            BoundParams bp{sol.rank, 0, 0, rf.power, delta};
            SolutionBoundContext ctx;
            ctx.norm_b = norm2(prob.b);
            ctx.norm_x_star = norm2(prob.x_true);
            ctx.sigma_bar_np1 = 0.0;
            ctx.r = sol.rank;
            BoundReport rep = bound_report(truth, sol, bp, ctx);
            if (sol.residual_norm > rep.residual_bound) ++violations;
        }
        out << "residual," << name << ",256,,,,," << delta << ',' << trials << ',' << violations
            << ',' << format_double(static_cast<double>(violations) / static_cast<double>(trials))
            << '\n';
    }
    if (!out) throw IoError("bench_bounds: write failed");
}

} // namespace

void cmd_bench(const std::string& suite, std::size_t trials, RngSeed seed, std::ostream& out,
               std::ostream& diag) {
    const std::vector<std::string> one_d = {"shaw", "gravity", "foxgood", "phillips", "deriv2"};
    if (suite == "table2" || suite == "table3") {
        std::vector<RunConfig> cfgs;
        for (const std::string& p : one_d) {
            RunConfig c;
            c.problem = p;
            c.n = suite == "table2" ? 1024 : 4096;
            c.trials = trials;
            c.seed = seed;
            cfgs.push_back(std::move(c));
        }
        bench_runs(cfgs, out, diag);
    } else if (suite == "table4") {
        std::vector<RunConfig> cfgs;
        for (std::size_t g : {8, 16, 32, 64}) {
            RunConfig c;
            c.problem = "gravity2d";
            c.n = g * g;
            c.baseline = RunConfig::Baseline::none;
            c.trials = trials;
            c.seed = seed;
            cfgs.push_back(std::move(c));
        }
        bench_runs(cfgs, out, diag);
    } else if (suite == "table5") {
        std::vector<RunConfig> cfgs;
        for (std::size_t g : {16, 32}) {
            RunConfig c;
            c.problem = "blur";
            c.n = g * g;
            c.epsilon = 0.1;
            c.baseline = RunConfig::Baseline::none;
            c.trials = trials;
            c.seed = seed;
            cfgs.push_back(std::move(c));
        }
        bench_runs(cfgs, out, diag);
    } else if (suite == "bounds") {
        bench_bounds(trials, seed, out, diag);
    } else {
        throw InvalidInputError("cmd_bench: unknown suite '" + suite +
                                "' (expected table2|table3|table4|table5|bounds)");
    }
}

} // namespace rctls
