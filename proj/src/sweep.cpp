#include "polyopt/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "polyopt/rng.hpp"

namespace polyopt {

std::vector<double> geometric_grid(double lo, double hi, std::uint32_t points) {
    if (points == 0) throw std::invalid_argument("geometric_grid: zero points");
    if (!(lo > 0.0) || !(hi >= lo))
        throw std::invalid_argument("geometric_grid: need 0 < lo <= hi");
    std::vector<double> grid(points);
    grid[0] = lo;
    if (points == 1) return grid;
    const double step = std::log(hi / lo) / static_cast<double>(points - 1);
    for (std::uint32_t k = 1; k + 1 < points; ++k)
        grid[k] = lo * std::exp(step * static_cast<double>(k));
    grid[points - 1] = hi;
    return grid;
}

std::string scheme_names(const Polynomial& p, const HornerScheme& s) {
    std::string out;
    for (std::size_t i = 0; i < s.order.size(); ++i) {
        if (i) out += ' ';
        out += p.vars().name(s.order[i]);
    }
    return out;
}

std::vector<SweepRecord> run_sweep(const Polynomial& p, const SweepSpec& spec,
                                   unsigned jobs) {
    if (spec.dots == 0 || spec.repetitions == 0 || spec.iterations == 0)
        throw std::invalid_argument("run_sweep: counts must be positive");
    const std::vector<double> grid =
        geometric_grid(spec.cp_min, spec.cp_max, spec.points);
    const char* strategy =
        spec.criterion == SearchConfig::Criterion::Uct ? "mcts-uct"
                                                       : "mcts-sa-uct";

    const std::size_t total =
        static_cast<std::size_t>(spec.points) * spec.dots;
    std::vector<SweepRecord> rows(total);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;

    auto work = [&]() {
        for (;;) {
            const std::size_t slot = next.fetch_add(1);
            if (slot >= total) return;
            try {
                const std::size_t point = slot / spec.dots;
                const auto start = std::chrono::steady_clock::now();
                const std::uint64_t dot_seed = derive_seed(spec.seed, slot);

                SearchConfig cfg;
                cfg.criterion = spec.criterion;
                cfg.cp = grid[point];
                cfg.iterations = spec.iterations;
                cfg.direction = spec.direction;
                SearchResult best;
                for (std::uint32_t r = 0; r < spec.repetitions; ++r) {
                    cfg.seed = derive_seed(dot_seed, r);
                    SearchResult run = mcts_search(p, cfg);
                    if (r == 0 || run.best_ops.total() < best.best_ops.total())
                        best = std::move(run);
                }

                SweepRecord& rec = rows[slot];
                rec.strategy = strategy;
                rec.cp = grid[point];
                rec.iterations = spec.iterations;
                rec.repetitions = spec.repetitions;
                rec.direction = spec.direction;
                rec.seed = dot_seed;
                rec.ops = best.best_ops;
                rec.best_scheme = scheme_names(p, best.best_scheme);
                if (spec.timing) {
                    const std::chrono::duration<double> dt =
                        std::chrono::steady_clock::now() - start;
                    rec.wall_seconds = dt.count();
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mu);
                if (!failure) failure = std::current_exception();
                next.store(total);
                return;
            }
        }
    };

    if (jobs <= 1) {
        work();
    } else {
        const unsigned n =
            static_cast<unsigned>(std::min<std::size_t>(jobs, total));
        std::vector<std::thread> pool;
        pool.reserve(n);
        for (unsigned t = 0; t < n; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    return rows;
}

void write_csv(std::ostream& os, const std::vector<SweepRecord>& rows) {
    os << "strategy,cp,iterations,repetitions,direction,seed,"
          "ops_total,ops_muls,ops_adds,best_scheme,wall_seconds\n";
    char buf[64];
    for (const SweepRecord& r : rows) {
        os << r.strategy << ',';
        std::snprintf(buf, sizeof buf, "%.10g", r.cp);
        os << buf << ',' << r.iterations << ',' << r.repetitions << ','
           << to_string(r.direction) << ',' << r.seed << ','
           << r.ops.total() << ',' << r.ops.muls << ',' << r.ops.adds << ','
           << r.best_scheme << ',';
        std::snprintf(buf, sizeof buf, "%.6f", r.wall_seconds);
        os << buf << '\n';
    }
}

GoodRegion good_region(const std::vector<double>& cp_values,
                       const std::vector<std::vector<std::uint64_t>>& dot_totals,
                       std::uint64_t best, double tolerance) {
    if (cp_values.size() != dot_totals.size())
        throw std::invalid_argument("good_region: size mismatch");
    const double cutoff = static_cast<double>(best) * tolerance;

    std::vector<char> good(cp_values.size(), 0);
    std::vector<std::uint64_t> sorted;
    for (std::size_t k = 0; k < dot_totals.size(); ++k) {
        if (dot_totals[k].empty())
            throw std::invalid_argument("good_region: empty grid point");
        sorted = dot_totals[k];
        std::sort(sorted.begin(), sorted.end());
        // Lower median: for even counts the smaller of the middle pair.
        const std::uint64_t median = sorted[(sorted.size() - 1) / 2];
        good[k] = static_cast<double>(median) <= cutoff;
    }

    GoodRegion region;
    std::size_t k = 0;
    while (k < good.size()) {
        if (!good[k]) { ++k; continue; }
        std::size_t end = k;
        while (end + 1 < good.size() && good[end + 1]) ++end;
        const double width = cp_values[end] - cp_values[k];
        if (!region.found || width > region.width) {
            region.found = true;
            region.lo = k;
            region.hi = end;
            region.width = width;
        }
        k = end + 1;
    }
    return region;
}

} // namespace polyopt
