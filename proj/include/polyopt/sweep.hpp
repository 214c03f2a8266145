#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "polyopt/horner.hpp"
#include "polyopt/polynomial.hpp"
#include "polyopt/search.hpp"

namespace polyopt {

// Exploration-constant sensitivity sweep: a geometric C_p grid, `dots`
// scatter dots per grid point, each dot the best of `repetitions` runs of
// `iterations` search iterations.
struct SweepSpec {
    SearchConfig::Criterion criterion = SearchConfig::Criterion::Uct;
    double cp_min = 0.01;
    double cp_max = 10.0;
    std::uint32_t points = 25;
    std::uint32_t dots = 40;
    std::uint32_t repetitions = 1;
    std::uint64_t iterations = 1000;
    Direction direction = Direction::Forward;
    std::uint64_t seed = 1;
    bool timing = false;  // keep wall_seconds at zero so output is byte-stable
};

struct SweepRecord {
    std::string strategy;  // "mcts-uct" or "mcts-sa-uct"
    double cp = 0.0;
    std::uint64_t iterations = 0;
    std::uint32_t repetitions = 0;
    Direction direction = Direction::Forward;
    std::uint64_t seed = 0;  // dot seed; run r uses derive_seed(seed, r)
    OpCount ops;
    std::string best_scheme;  // variable names, space separated
    double wall_seconds = 0.0;
};

// points == 1 degenerates to {lo}; otherwise lo and hi are the endpoints
// and the ratio between neighbours is constant.
std::vector<double> geometric_grid(double lo, double hi, std::uint32_t points);

// Space-separated variable names of the scheme order, for reports.
std::string scheme_names(const Polynomial& p, const HornerScheme& s);

// Rows ordered by (grid point, dot index).  Dot (k, d) depends only on the
// spec and its flat index k*dots + d, so any `jobs` count produces the same
// rows as a serial run.
std::vector<SweepRecord> run_sweep(const Polynomial& p, const SweepSpec& spec,
                                   unsigned jobs = 1);

void write_csv(std::ostream& os, const std::vector<SweepRecord>& rows);

// Longest contiguous run of grid points whose lower-median dot total stays
// within `tolerance` times `best`; bounds index cp_values, width is the
// linear length of the interval.
struct GoodRegion {
    bool found = false;
    std::size_t lo = 0;
    std::size_t hi = 0;
    double width = 0.0;
};

GoodRegion good_region(const std::vector<double>& cp_values,
                       const std::vector<std::vector<std::uint64_t>>& dot_totals,
                       std::uint64_t best, double tolerance);

} // namespace polyopt
