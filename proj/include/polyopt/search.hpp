#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "polyopt/bigint.hpp"
#include "polyopt/dag.hpp"
#include "polyopt/horner.hpp"
#include "polyopt/polynomial.hpp"

namespace polyopt {

// Improvement ratio: expanded operation total divided by the total after
// nesting and sharing.  Defined as 1 when both totals are zero; higher is
// better and it is deliberately left unnormalized.
double score_delta(std::uint64_t original_total, std::uint64_t final_total);

// Repeated scheme evaluation against one fixed polynomial.  Owns reusable
// arenas so the per-call cost is dominated by the actual tree and DAG
// construction, not allocation.
class SchemeEvaluator {
public:
    explicit SchemeEvaluator(const Polynomial& p);

    const Polynomial& poly() const { return *poly_; }
    std::uint64_t original_total() const { return original_total_; }
    const OpCount& original_ops() const { return original_; }

    // Variables that occur in at least one term, ascending id; schemes must
    // cover exactly these (extra table entries that never occur are not
    // required).
    const std::vector<VarId>& occurring() const { return occurring_; }

    // (ops after nesting + sharing, improvement ratio).  Throws
    // std::invalid_argument if the scheme does not cover every occurring
    // variable.
    std::pair<OpCount, double> evaluate(const HornerScheme& s);

    std::uint64_t calls() const { return calls_; }

private:
    const Polynomial* poly_;
    HornerBuilder horner_;
    DagBuilder dag_builder_;
    HornerTree tree_;
    ExprDag dag_;
    OpCount original_;
    std::uint64_t original_total_ = 0;
    std::vector<VarId> occurring_;
    std::vector<char> occurs_;
    std::vector<char> cover_;
    std::uint64_t calls_ = 0;
};

// One-shot variant of SchemeEvaluator::evaluate.
std::pair<OpCount, double> evaluate_scheme(const Polynomial& p,
                                           const HornerScheme& s);

struct SearchConfig {
    enum class Criterion { Uct, SaUct };
    Criterion criterion = Criterion::Uct;
    double cp = 1.0;            // exploration constant; SA start temperature
    std::uint64_t iterations = 1000;
    Direction direction = Direction::Forward;
    std::uint64_t seed = 0;
};

struct NmcsConfig {
    int level = 1;
    Direction direction = Direction::Forward;
    std::uint64_t seed = 0;
};

struct SearchResult {
    HornerScheme best_scheme;
    OpCount best_ops;
    double best_delta = 1.0;
    std::uint64_t evaluations = 0;
    std::vector<std::pair<std::uint64_t, double>> trace;  // (iteration, delta)
};

// Tree node of the in-memory search tree, exposed for white-box tests.
struct SearchNode {
    VarId variable = UINT32_MAX;   // undefined at the root
    std::uint32_t parent = UINT32_MAX;
    std::uint32_t depth = 0;
    std::uint64_t visits = 0;
    std::uint64_t own_playouts = 0;
    double mean_score = 0.0;
    std::vector<std::uint32_t> children;
    std::vector<VarId> untried;
};

// argmax over children of mean + 2*C*sqrt(2*ln(visits(s))/visits(c)); ties
// go to the lowest variable id.  Node must be fully expanded with every
// child visited at least once, else std::logic_error.
std::uint32_t uct_best_child(const std::vector<SearchNode>& tree,
                             std::uint32_t node, double c);

// Linearly decaying exploration coefficient: cp*(N-i)/N.  Throws
// std::invalid_argument when i > n or n == 0.
double sa_uct_temperature(double cp, std::uint64_t i, std::uint64_t n);

// Monte Carlo tree search over variable orders: per iteration, descend
// through fully expanded nodes by best child, expand one random untried
// child, complete the order with a random playout, evaluate, and push the
// score back up the path.  Exactly cfg.iterations evaluations; the best
// complete scheme ever evaluated is returned.  When `tree_out` is given the
// final search tree is copied there (for inspection and invariant tests).
SearchResult mcts_search(const Polynomial& p, const SearchConfig& cfg,
                         bool record_trace = false,
                         std::vector<SearchNode>* tree_out = nullptr);

// Nested search: at each depth every remaining variable is scored, level 1
// by one random completion, level k by a level k-1 search under that choice;
// the best-scoring variable is fixed and the walk continues.  Returns the
// best complete scheme ever evaluated and the exact evaluation count.
SearchResult nmcs_search(const Polynomial& p, const NmcsConfig& cfg);

// Evaluation budget the nesting formula predicts for a level-k search over
// n variables: the unsigned Stirling number of the first kind c(n+k, n).
BigInt nmcs_eval_count(std::uint32_t n, std::uint32_t k);

// All n! orders of the occurring variables; global optimum by total ops,
// ties to the lexicographically smallest order.  Refuses more variables
// than `cap`.
SearchResult exhaustive_search(const Polynomial& p, Direction direction,
                               std::uint32_t cap = 8);

// The one-evaluation baseline: variables ordered by descending number of
// terms they appear in.
SearchResult occurrence_search(const Polynomial& p, Direction direction);

} // namespace polyopt
