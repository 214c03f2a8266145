#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "CLI11.hpp"

#include "polyopt/dag.hpp"
#include "polyopt/horner.hpp"
#include "polyopt/parser.hpp"
#include "polyopt/polynomial.hpp"
#include "polyopt/report.hpp"
#include "polyopt/resultant.hpp"
#include "polyopt/rng.hpp"
#include "polyopt/search.hpp"
#include "polyopt/sweep.hpp"

namespace {

using namespace polyopt;
using Clock = std::chrono::steady_clock;

std::string read_input(const std::string& path) {
    std::ostringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open " + path);
        buf << in.rdbuf();
    }
    return buf.str();
}

// An empty path or "-" means stdout.
void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        std::cout.flush();
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed on " + path);
}

Direction parse_direction(const std::string& s) {
    return s == "backward" ? Direction::Backward : Direction::Forward;
}

double elapsed(Clock::time_point start, bool timing) {
    if (!timing) return 0.0;
    const std::chrono::duration<double> dt = Clock::now() - start;
    return dt.count();
}

struct StrategyOpts {
    std::string strategy = "occurrence";
    double cp = 1.0;
    std::uint64_t iterations = 1000;
    std::uint32_t repetitions = 1;
    std::string direction = "forward";
    std::uint64_t seed = 1;
    int level = 1;
    std::uint32_t cap = 8;
};

// Runs the requested strategy; seeded strategies run `repetitions` times
// with run seeds derive_seed(seed, r) and keep the best total (first run
// wins ties).  `evaluations` returns the summed budget over all runs.
SearchResult run_strategy(const Polynomial& p, const StrategyOpts& o,
                          std::uint64_t& evaluations) {
    const Direction dir = parse_direction(o.direction);
    if (o.strategy == "occurrence") {
        SearchResult r = occurrence_search(p, dir);
        evaluations = r.evaluations;
        return r;
    }
    if (o.strategy == "exhaustive") {
        SearchResult r = exhaustive_search(p, dir, o.cap);
        evaluations = r.evaluations;
        return r;
    }
    SearchResult best;
    evaluations = 0;
    for (std::uint32_t r = 0; r < o.repetitions; ++r) {
        const std::uint64_t run_seed = derive_seed(o.seed, r);
        SearchResult run;
        if (o.strategy == "nmcs") {
            NmcsConfig cfg;
            cfg.level = o.level;
            cfg.direction = dir;
            cfg.seed = run_seed;
            run = nmcs_search(p, cfg);
        } else {
            SearchConfig cfg;
            cfg.criterion = o.strategy == "mcts-sa-uct"
                                ? SearchConfig::Criterion::SaUct
                                : SearchConfig::Criterion::Uct;
            cfg.cp = o.cp;
            cfg.iterations = o.iterations;
            cfg.direction = dir;
            cfg.seed = run_seed;
            run = mcts_search(p, cfg);
        }
        evaluations += run.evaluations;
        if (r == 0 || run.best_ops.total() < best.best_ops.total())
            best = std::move(run);
    }
    return best;
}

void add_strategy_fields(Report& rep, const StrategyOpts& o) {
    rep.add("strategy", o.strategy);
    rep.add("direction", o.direction);
    if (o.strategy == "mcts-uct" || o.strategy == "mcts-sa-uct") {
        rep.add("cp", o.cp);
        rep.add("iterations", o.iterations);
        rep.add("repetitions", std::uint64_t{o.repetitions});
    } else if (o.strategy == "nmcs") {
        rep.add("level", o.level);
        rep.add("repetitions", std::uint64_t{o.repetitions});
    } else if (o.strategy == "exhaustive") {
        rep.add("cap", std::uint64_t{o.cap});
    }
    rep.add("seed", o.seed);
}

std::string render(const Report& rep, const std::string& format) {
    return format == "json" ? rep.json() : rep.text();
}

int cmd_simplify(const std::string& input, const StrategyOpts& o,
                 const std::string& format, const std::string& output,
                 const std::string& emit_path, bool timing) {
    const Polynomial p = parse_polynomial(read_input(input));
    const Clock::time_point start = Clock::now();
    std::uint64_t evaluations = 0;
    const SearchResult res = run_strategy(p, o, evaluations);
    const double wall = elapsed(start, timing);

    const OpCount original = p.expanded_op_count();
    Report rep;
    rep.add("input", input);
    add_strategy_fields(rep, o);
    rep.add("variables", std::uint64_t{p.occurrence_order().size()});
    rep.add("terms", std::uint64_t{p.terms().size()});
    rep.add("original_muls", original.muls);
    rep.add("original_adds", original.adds);
    rep.add("original_total", original.total());
    rep.add("final_muls", res.best_ops.muls);
    rep.add("final_adds", res.best_ops.adds);
    rep.add("final_total", res.best_ops.total());
    rep.add("delta", res.best_delta);
    rep.add("scheme", scheme_names(p, res.best_scheme));
    rep.add("evaluations", evaluations);
    rep.add("wall_seconds", wall);
    write_output(output, render(rep, format));

    if (!emit_path.empty()) {
        const ExprDag d = build_dag(apply_scheme(p, res.best_scheme));
        write_output(emit_path, emit_code(d, p.vars(), "result") + "\n");
    }
    return 0;
}

int cmd_emit(const std::string& input, const StrategyOpts& o,
             const std::string& output) {
    const Polynomial p = parse_polynomial(read_input(input));
    std::uint64_t evaluations = 0;
    const SearchResult res = run_strategy(p, o, evaluations);
    const ExprDag d = build_dag(apply_scheme(p, res.best_scheme));
    write_output(output, emit_code(d, p.vars(), "result") + "\n");
    return 0;
}

int cmd_count(const std::string& input, const std::string& format,
              const std::string& output) {
    const Polynomial p = parse_polynomial(read_input(input));
    const OpCount c = p.expanded_op_count();
    Report rep;
    rep.add("input", input);
    rep.add("variables", std::uint64_t{p.occurrence_order().size()});
    rep.add("terms", std::uint64_t{p.terms().size()});
    rep.add("muls", c.muls);
    rep.add("adds", c.adds);
    rep.add("total", c.total());
    rep.add("convention",
            "x^k costs k-1 muls, a coefficient of magnitude 1 is free, "
            "signs and subtraction are free; "
            "x^2*z + x^3*y + x^3*y*z counts 9m+2a");
    rep.add("convention_note",
            "other counting conventions quote 8m for that example; every "
            "report here uses the rule above");
    write_output(output, render(rep, format));
    return 0;
}

int cmd_gen_res(std::uint32_t m, std::uint32_t n, const std::string& output,
                const std::string& cache_dir, const std::string& format,
                bool timing) {
    const bool swapped = n > m;
    if (swapped) std::swap(m, n);

    const Clock::time_point start = Clock::now();
    const Polynomial p =
        cache_dir.empty() ? gen_res(m, n) : gen_res_cached(m, n, cache_dir);
    const double wall = elapsed(start, timing);

    const std::string path =
        output.empty()
            ? "res_" + std::to_string(m) + "_" + std::to_string(n) + ".txt"
            : output;
    write_output(path, print(p) + "\n");
    if (path == "-") return 0;  // polynomial went to stdout; skip the report

    const OpCount c = p.expanded_op_count();
    Report rep;
    rep.add("m", std::uint64_t{m});
    rep.add("n", std::uint64_t{n});
    if (swapped) rep.add("note", "degrees swapped so that m >= n");
    rep.add("variables", std::uint64_t{p.occurrence_order().size()});
    rep.add("terms", std::uint64_t{p.terms().size()});
    rep.add("expanded_muls", c.muls);
    rep.add("expanded_adds", c.adds);
    rep.add("expanded_total", c.total());
    rep.add("output", path);
    rep.add("wall_seconds", wall);
    write_output("", render(rep, format));
    return 0;
}

int cmd_sweep(const std::string& input, const std::string& strategy,
              const SweepSpec& base, unsigned jobs,
              const std::string& output) {
    const Polynomial p = parse_polynomial(read_input(input));
    SweepSpec spec = base;
    spec.criterion = strategy == "mcts-sa-uct" ? SearchConfig::Criterion::SaUct
                                               : SearchConfig::Criterion::Uct;
    const std::vector<SweepRecord> rows = run_sweep(p, spec, jobs);
    std::ostringstream os;
    write_csv(os, rows);
    write_output(output, os.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Arithmetic-cost reduction for sparse multivariate "
                 "polynomials: nested-form search plus subexpression "
                 "sharing"};
    app.require_subcommand(1);

    StrategyOpts stra;
    std::string input;
    std::string format = "text";
    std::string output;
    std::string emit_path;
    bool timing = false;

    const std::vector<std::string> all_strategies = {
        "occurrence", "exhaustive", "mcts-uct", "mcts-sa-uct", "nmcs"};
    const std::vector<std::string> directions = {"forward", "backward"};

    auto add_strategy_flags = [&](CLI::App* cmd) {
        cmd->add_option("--strategy", stra.strategy, "Search strategy")
            ->check(CLI::IsMember(all_strategies));
        cmd->add_option("--cp", stra.cp,
                        "Exploration constant (mcts-uct) or starting "
                        "temperature (mcts-sa-uct)");
        cmd->add_option("--iterations", stra.iterations,
                        "Search iterations per run")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--repetitions", stra.repetitions,
                        "Independent runs; the best result is kept")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--direction", stra.direction,
                        "Extraction direction of the variable order")
            ->check(CLI::IsMember(directions));
        cmd->add_option("--seed", stra.seed,
                        "Base seed; run r uses a seed derived from (seed, r)");
        cmd->add_option("--level", stra.level, "Nesting level for nmcs")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--cap", stra.cap,
                        "Variable-count cap for exhaustive search")
            ->check(CLI::PositiveNumber);
    };

    CLI::App* simplify =
        app.add_subcommand("simplify", "Search for a cheap nested form and "
                                       "report the operation counts");
    simplify->add_option("input", input, "Polynomial file, or - for stdin")
        ->required();
    add_strategy_flags(simplify);
    simplify->add_option("--format", format, "Report format")
        ->check(CLI::IsMember({"text", "json"}));
    simplify->add_option("--output", output, "Report destination (default stdout)");
    simplify->add_option("--emit", emit_path,
                         "Also write straight-line code for the result here");
    simplify->add_flag("--timing", timing,
                       "Measure wall time (off keeps reports byte-stable)");

    CLI::App* sweep = app.add_subcommand(
        "sweep", "Scatter the best-of-R search outcome over a geometric "
                 "exploration-constant grid and write CSV");
    std::string sweep_strategy = "mcts-uct";
    SweepSpec sspec;
    unsigned jobs = 1;
    sweep->add_option("input", input, "Polynomial file, or - for stdin")
        ->required();
    sweep->add_option("--strategy", sweep_strategy, "Search strategy")
        ->check(CLI::IsMember({"mcts-uct", "mcts-sa-uct"}));
    sweep->add_option("--cp-min", sspec.cp_min, "Smallest grid value")
        ->check(CLI::PositiveNumber);
    sweep->add_option("--cp-max", sspec.cp_max, "Largest grid value")
        ->check(CLI::PositiveNumber);
    sweep->add_option("--points", sspec.points, "Grid points")
        ->check(CLI::PositiveNumber);
    sweep->add_option("--dots", sspec.dots, "Scatter dots per grid point")
        ->check(CLI::PositiveNumber);
    sweep->add_option("--repetitions", sspec.repetitions,
                      "Runs per dot; each dot records the best")
        ->check(CLI::PositiveNumber);
    sweep->add_option("--iterations", sspec.iterations,
                      "Search iterations per run")
        ->check(CLI::PositiveNumber);
    sweep->add_option("--direction", stra.direction,
                      "Extraction direction of the variable order")
        ->check(CLI::IsMember(directions));
    sweep->add_option("--seed", sspec.seed, "Base seed for the whole sweep");
    sweep->add_option("--jobs", jobs, "Dots evaluated concurrently")
        ->check(CLI::PositiveNumber);
    sweep->add_option("--output", output, "CSV destination (default stdout)");
    sweep->add_flag("--timing", timing,
                    "Record per-dot wall time in the CSV");

    CLI::App* gen_res_cmd = app.add_subcommand(
        "gen-res", "Generate the expanded determinant of the coefficient "
                   "matrix of two generic univariate polynomials");
    std::uint32_t deg_m = 0, deg_n = 0;
    std::string cache_dir;
    gen_res_cmd->add_option("m", deg_m, "Degree of the first polynomial")
        ->required();
    gen_res_cmd->add_option("n", deg_n, "Degree of the second polynomial")
        ->required();
    gen_res_cmd->add_option("--output", output,
                            "Polynomial destination (default res_<m>_<n>.txt; "
                            "- writes it to stdout and skips the report)");
    gen_res_cmd->add_option("--cache-dir", cache_dir,
                            "Reuse or create res_<m>_<n>.txt under this "
                            "directory");
    gen_res_cmd->add_option("--format", format, "Report format")
        ->check(CLI::IsMember({"text", "json"}));
    gen_res_cmd->add_flag("--timing", timing, "Measure generation wall time");

    CLI::App* count = app.add_subcommand(
        "count", "Report expanded operation counts of a polynomial");
    count->add_option("input", input, "Polynomial file, or - for stdin")
        ->required();
    count->add_option("--format", format, "Report format")
        ->check(CLI::IsMember({"text", "json"}));
    count->add_option("--output", output, "Report destination (default stdout)");

    CLI::App* emit = app.add_subcommand(
        "emit", "Search, then print straight-line code with one assignment "
                "per shared operation");
    emit->add_option("input", input, "Polynomial file, or - for stdin")
        ->required();
    add_strategy_flags(emit);
    emit->add_option("--output", output, "Code destination (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (simplify->parsed())
            return cmd_simplify(input, stra, format, output, emit_path, timing);
        if (sweep->parsed()) {
            sspec.direction = parse_direction(stra.direction);
            sspec.timing = timing;
            if (sspec.cp_max < sspec.cp_min) {
                std::cerr << "error: --cp-max must be >= --cp-min\n";
                return 1;
            }
            return cmd_sweep(input, sweep_strategy, sspec, jobs, output);
        }
        if (gen_res_cmd->parsed())
            return cmd_gen_res(deg_m, deg_n, output, cache_dir, format, timing);
        if (count->parsed()) return cmd_count(input, format, output);
        if (emit->parsed()) return cmd_emit(input, stra, output);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
