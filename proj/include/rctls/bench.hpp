#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rctls/problems.hpp"
#include "rctls/rangefinder.hpp"
#include "rctls/tls.hpp"

namespace rctls {

// One benchmark request: which problem, at what size and tolerance, how many
// seeded trials, and which baseline the error column is measured against.
struct RunConfig {
    std::string problem = "shaw"; // generator name; ignored when from_file is set
    std::string from_file;        // load an exported problem instead of generating
    std::size_t n = 1024;         // problem size (grid^2 for the 2-D problems)
    double epsilon = 1e-3;
    std::size_t power = 1;
    RngSeed seed{1};
    std::size_t trials = 1;
    double noise = 0.0; // relative white-noise level applied to b (off by default)
    enum class Baseline { classical, truncated, none };
    Baseline baseline = Baseline::classical;
    std::map<std::string, double> params;
};

struct RunRecord {
    std::string problem;
    std::size_t n = 0;
    double epsilon = 0.0;
    std::uint64_t seed = 0;
    std::size_t rank = 0;
    std::optional<double> err_classical; // empty when no baseline was requested
    double err_true = 0.0;
    double residual = 0.0;
    double time_s = 0.0;
    std::size_t restarts = 0;
};

// Desk-scale caps enforced by load_problem.
inline constexpr std::size_t kMax1dSize = 4096;
inline constexpr std::size_t kMaxGridSide = 64;

TestProblem load_problem(const RunConfig& cfg);

// Randomized solve with the rank-perturbing restart: when the closed-form
// core solve reports a nongeneric core, the sample rank is reduced (by one
// first, then to the clearly separated part of the sampled spectrum) and the
// solve retried, at most max_restarts times. rsvd_out, when given, receives
// the factorization behind the returned solution.
TlsSolution solve_with_restart(const LinearOperator& op, const Vector& b, RangeFinderConfig cfg,
                               std::size_t max_restarts, std::size_t* restarts_out = nullptr,
                               RandSvd* rsvd_out = nullptr);

// Runs cfg.trials seeded solves (per-trial seeds derived from cfg.seed) and
// returns one record per trial.
std::vector<RunRecord> cmd_solve(const RunConfig& cfg);

// '# rctls-csv v1' line, then the header row, then one row per record.
void write_csv(std::ostream& out, const std::vector<RunRecord>& records);

// Benchmark suites: table2 (1-D, n=1024), table3 (1-D, n=4096),
// table4 (2-D gravity), table5 (blur), bounds (empirical violation rates).
void cmd_bench(const std::string& suite, std::size_t trials, RngSeed seed, std::ostream& out,
               std::ostream& diag);

} // namespace rctls
