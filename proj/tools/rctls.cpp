// Command-line harness: generate problems, run the randomized TLS solver
// against baselines, reproduce the benchmark tables as CSV, and export
// problems to the text format.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "rctls/bench.hpp"
#include "rctls/errors.hpp"
#include "rctls/problem_io.hpp"
#include "rctls/rangefinder.hpp"

namespace {

// exit codes: 0 ok, 2 invalid input, 3 numerical failure, 4 rank overflow,
// 5 nongeneric problem, 6 i/o failure
int error_exit(const char* code, const std::string& msg, int status) {
    std::cerr << "error: code=" << code << " " << msg << "\n";
    return status;
}

std::map<std::string, double> parse_params(const std::vector<std::string>& kvs) {
    std::map<std::string, double> params;
    for (const std::string& kv : kvs) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw rctls::InvalidInputError("--param expects key=value, got '" + kv + "'");
        params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    }
    return params;
}

struct OutputTarget {
    std::ofstream file;
    std::ostream* stream = &std::cout;
    void open(const std::string& path) {
        if (path.empty()) return;
        file.open(path);
        if (!file) throw rctls::IoError("cannot open output file '" + path + "'");
        stream = &file;
    }
    void finish() {
        if (file.is_open()) {
            file.flush();
            if (!file) throw rctls::IoError("write to output file failed");
        }
    }
};

void print_human(const std::vector<rctls::RunRecord>& records) {
    for (const auto& r : records) {
        std::cout << r.problem << " n=" << r.n << " eps=" << r.epsilon << " seed=" << r.seed
                  << " rank=" << r.rank;
        if (r.err_classical) std::cout << " err_classical=" << *r.err_classical;
        std::cout << " err_true=" << r.err_true << " residual=" << r.residual
                  << " time_s=" << r.time_s;
        if (r.restarts > 0) std::cout << " restarts=" << r.restarts;
        std::cout << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"randomized core-reduction TLS solver and benchmark harness"};
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "run the randomized TLS solver on one problem");
    rctls::RunConfig cfg;
    std::vector<std::string> param_kvs;
    std::string out_path, format = "csv", baseline = "classical";
    std::uint64_t seed_value = 1;
    solve->add_option("--problem", cfg.problem,
                      "shaw|gravity|foxgood|phillips|deriv2|gravity2d|blur");
    solve->add_option("--from-file", cfg.from_file, "load an exported problem file instead");
    solve->add_option("--n", cfg.n, "problem size (grid^2 for 2-D; 1-D capped at 4096, grids at 64)");
    solve->add_option("--eps", cfg.epsilon, "range finder tolerance");
    solve->add_option("--power", cfg.power, "subspace iteration rounds");
    solve->add_option("--seed", seed_value, "base seed; trial seeds derive from it");
    solve->add_option("--trials", cfg.trials, "number of seeded trials");
    solve->add_option("--baseline", baseline, "classical|truncated|none");
    solve->add_option("--noise", cfg.noise, "relative white-noise level added to b (default 0)");
    solve->add_option("--param", param_kvs, "problem parameter key=value (d, band, spread)")
        ->take_all();
    solve->add_option("--out", out_path, "output file (default: stdout)");
    solve->add_option("--format", format, "csv|human");

    // bench
    auto* bench = app.add_subcommand("bench", "emit a benchmark table as CSV");
    std::string suite;
    std::size_t bench_trials = 0;
    std::string bench_out;
    std::uint64_t bench_seed = 1;
    bench->add_option("suite", suite, "table2|table3|table4|table5|bounds")->required();
    bench->add_option("--trials", bench_trials, "trials per row (default 1; bounds default 500)");
    bench->add_option("--seed", bench_seed, "base seed");
    bench->add_option("--out", bench_out, "output file (default: stdout)");

    // export
    auto* exp = app.add_subcommand("export", "write a generated problem to the text format");
    rctls::RunConfig ecfg;
    std::vector<std::string> eparam_kvs;
    std::string export_out;
    exp->add_option("--problem", ecfg.problem, "generator name")->required();
    exp->add_option("--n", ecfg.n, "problem size")->required();
    exp->add_option("--param", eparam_kvs, "problem parameter key=value")->take_all();
    exp->add_option("--out", export_out, "output file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve) {
            cfg.seed = rctls::RngSeed{seed_value};
            cfg.params = parse_params(param_kvs);
            if (baseline == "classical")
                cfg.baseline = rctls::RunConfig::Baseline::classical;
            else if (baseline == "truncated")
                cfg.baseline = rctls::RunConfig::Baseline::truncated;
            else if (baseline == "none")
                cfg.baseline = rctls::RunConfig::Baseline::none;
            else
                throw rctls::InvalidInputError("--baseline must be classical|truncated|none");
            if (format != "csv" && format != "human")
                throw rctls::InvalidInputError("--format must be csv|human");

            std::vector<rctls::RunRecord> records = rctls::cmd_solve(cfg);
            for (const auto& r : records)
                if (r.restarts > 0)
                    std::cerr << "note: seed " << r.seed << " needed " << r.restarts
                              << " restart(s)\n";
            if (format == "human") {
                print_human(records);
            } else {
                OutputTarget target;
                target.open(out_path);
                rctls::write_csv(*target.stream, records);
                target.finish();
            }
        } else if (*bench) {
            if (bench_trials == 0) bench_trials = (suite == "bounds") ? 500 : 1;
            OutputTarget target;
            target.open(bench_out);
            rctls::cmd_bench(suite, bench_trials, rctls::RngSeed{bench_seed}, *target.stream,
                             std::cerr);
            target.finish();
        } else if (*exp) {
            ecfg.params = parse_params(eparam_kvs);
            ecfg.baseline = rctls::RunConfig::Baseline::none;
            rctls::TestProblem prob = rctls::load_problem(ecfg);
            rctls::export_problem(prob, export_out);
            std::cerr << "exported " << prob.name << " (n=" << prob.n << ") to " << export_out
                      << "\n";
        }
    } catch (const rctls::RankOverflowError& e) {
        return error_exit("rank-overflow", e.what(), 4);
    } catch (const rctls::NongenericError& e) {
        return error_exit("nongeneric", e.what(), 5);
    } catch (const rctls::NumericalFailureError& e) {
        return error_exit("numerical-failure", e.what(), 3);
    } catch (const rctls::IoError& e) {
        return error_exit("io", e.what(), 6);
    } catch (const rctls::InvalidInputError& e) {
        return error_exit("invalid-input", e.what(), 2);
    } catch (const std::exception& e) {
        return error_exit("internal", e.what(), 1);
    }
    return 0;
}
