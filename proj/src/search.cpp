#include "polyopt/search.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "polyopt/rng.hpp"

namespace polyopt {

double score_delta(std::uint64_t original_total, std::uint64_t final_total) {
    if (final_total == 0)
        return original_total == 0 ? 1.0
                                   : static_cast<double>(original_total);
    return static_cast<double>(original_total) /
           static_cast<double>(final_total);
}

SchemeEvaluator::SchemeEvaluator(const Polynomial& p)
    : poly_(&p), horner_(p) {
    original_ = p.expanded_op_count();
    original_total_ = original_.total();
    occurs_.assign(p.vars().size(), 0);
    for (const Term& t : p.terms())
        for (const auto& [var, exp] : t.exps) occurs_[var] = 1;
    for (VarId v = 0; v < p.vars().size(); ++v)
        if (occurs_[v]) occurring_.push_back(v);
    cover_.assign(p.vars().size(), 0);
}

std::pair<OpCount, double> SchemeEvaluator::evaluate(const HornerScheme& s) {
    std::fill(cover_.begin(), cover_.end(), 0);
    for (VarId v : s.order) {
        if (v >= cover_.size())
            throw std::invalid_argument("scheme variable out of range");
        cover_[v] = 1;
    }
    for (VarId v : occurring_)
        if (!cover_[v])
            throw std::invalid_argument(
                "incomplete scheme: missing " + poly_->vars().name(v));
    horner_.build(s, tree_);
    dag_builder_.build(tree_, dag_);
    const OpCount ops = count_ops(dag_);
    ++calls_;
    return {ops, score_delta(original_total_, ops.total())};
}

std::pair<OpCount, double> evaluate_scheme(const Polynomial& p,
                                           const HornerScheme& s) {
    SchemeEvaluator ev(p);
    return ev.evaluate(s);
}

std::uint32_t uct_best_child(const std::vector<SearchNode>& tree,
                             std::uint32_t node, double c) {
    const SearchNode& s = tree[node];
    if (!s.untried.empty() || s.children.empty())
        throw std::logic_error("uct_best_child: node not fully expanded");
    const double ln_n = std::log(static_cast<double>(s.visits));
    std::uint32_t best = UINT32_MAX;
    double best_value = 0.0;
    for (const std::uint32_t cid : tree[node].children) {
        const SearchNode& ch = tree[cid];
        if (ch.visits == 0)
            throw std::logic_error("uct_best_child: unvisited child");
        const double value =
            ch.mean_score +
            2.0 * c * std::sqrt(2.0 * ln_n / static_cast<double>(ch.visits));
        if (best == UINT32_MAX || value > best_value ||
            (value == best_value && ch.variable < tree[best].variable)) {
            best = cid;
            best_value = value;
        }
    }
    return best;
}

double sa_uct_temperature(double cp, std::uint64_t i, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("temperature: n must be positive");
    if (i > n) throw std::invalid_argument("temperature: i exceeds n");
    return cp * static_cast<double>(n - i) / static_cast<double>(n);
}

namespace {

struct BestTracker {
    bool have = false;
    OpCount ops;
    double delta = 1.0;
    std::vector<VarId> order;

    void offer(const OpCount& o, double d, const std::vector<VarId>& ord) {
        if (!have || o.total() < ops.total()) {
            have = true;
            ops = o;
            delta = d;
            order = ord;
        }
    }
};

} // namespace

SearchResult mcts_search(const Polynomial& p, const SearchConfig& cfg,
                         bool record_trace,
                         std::vector<SearchNode>* tree_out) {
    if (p.empty()) throw std::invalid_argument("mcts: empty polynomial");
    if (cfg.iterations == 0)
        throw std::invalid_argument("mcts: iterations must be positive");
    if (cfg.cp < 0) throw std::invalid_argument("mcts: cp must be >= 0");

    SchemeEvaluator ev(p);
    SplitMix64 rng(cfg.seed);
    const std::vector<VarId>& all = ev.occurring();
    const std::uint32_t n = static_cast<std::uint32_t>(all.size());

    std::vector<SearchNode> tree;
    tree.emplace_back();
    tree[0].untried = all;
    tree[0].visits = 1;  // counted as visited once so ln is defined at first use

    BestTracker best;
    SearchResult res;
    HornerScheme scheme;
    scheme.dir = cfg.direction;
    std::vector<VarId> path;
    std::vector<char> used(p.vars().size(), 0);

    auto backprop = [&](std::uint32_t from, double delta) {
        for (std::uint32_t id = from; id != UINT32_MAX; id = tree[id].parent) {
            SearchNode& nd = tree[id];
            ++nd.visits;
            nd.mean_score +=
                (delta - nd.mean_score) / static_cast<double>(nd.visits);
        }
    };

    for (std::uint64_t i = 0; i < cfg.iterations; ++i) {
        const double c = cfg.criterion == SearchConfig::Criterion::Uct
                             ? cfg.cp
                             : sa_uct_temperature(cfg.cp, i, cfg.iterations);
        std::uint32_t node = 0;
        path.clear();
        double delta = 0.0;
        for (;;) {
            if (tree[node].depth == n) {
                // Complete order reached inside the tree: score it again.
                scheme.order = path;
                auto [ops, d] = ev.evaluate(scheme);
                delta = d;
                best.offer(ops, d, path);
                ++tree[node].own_playouts;
                backprop(node, d);
                break;
            }
            if (!tree[node].untried.empty()) {
                auto& untried = tree[node].untried;
                const std::uint64_t pick = rng.below(untried.size());
                const VarId var = untried[pick];
                untried[pick] = untried.back();
                untried.pop_back();

                SearchNode child;
                child.variable = var;
                child.parent = node;
                child.depth = tree[node].depth + 1;
                std::fill(used.begin(), used.end(), 0);
                for (VarId u : path) used[u] = 1;
                used[var] = 1;
                for (VarId u : all)
                    if (!used[u]) child.untried.push_back(u);
                const std::uint32_t cid =
                    static_cast<std::uint32_t>(tree.size());
                tree[node].children.push_back(cid);
                tree.push_back(std::move(child));

                path.push_back(var);
                std::vector<VarId> tail = tree[cid].untried;
                shuffle(tail, rng);
                scheme.order = path;
                scheme.order.insert(scheme.order.end(), tail.begin(),
                                    tail.end());
                auto [ops, d] = ev.evaluate(scheme);
                delta = d;
                best.offer(ops, d, scheme.order);
                ++tree[cid].own_playouts;
                backprop(cid, d);
                break;
            }
            node = uct_best_child(tree, node, c);
            path.push_back(tree[node].variable);
        }
        if (record_trace) res.trace.emplace_back(i, delta);
    }

    res.best_scheme = HornerScheme{best.order, cfg.direction};
    res.best_ops = best.ops;
    res.best_delta = best.delta;
    res.evaluations = ev.calls();
    if (tree_out) *tree_out = std::move(tree);
    return res;
}

namespace {

class NmcsRun {
public:
    NmcsRun(SchemeEvaluator& ev, Direction dir, std::uint64_t seed)
        : ev_(ev), rng_(seed) {
        scheme_.dir = dir;
    }

    // Best score found in this nested call; `prefix` and `remaining` are
    // restored before returning.
    double nested(int level, std::vector<VarId>& prefix,
                  std::vector<VarId>& remaining) {
        if (remaining.empty()) return eval_complete(prefix);
        double local_best = 0.0;
        bool have_local = false;
        const std::size_t fixed = prefix.size();
        while (!remaining.empty()) {
            std::size_t best_idx = 0;
            double best_score = 0.0;
            for (std::size_t i = 0; i < remaining.size(); ++i) {
                double score;
                if (level == 1) {
                    score = playout(prefix, remaining, i);
                } else {
                    const VarId v = remaining[i];
                    prefix.push_back(v);
                    remaining.erase(remaining.begin() + i);
                    score = nested(level - 1, prefix, remaining);
                    remaining.insert(remaining.begin() + i, v);
                    prefix.pop_back();
                }
                // Strict improvement keeps ties on the lowest variable id
                // (remaining stays sorted ascending).
                if (i == 0 || score > best_score) {
                    best_score = score;
                    best_idx = i;
                }
            }
            prefix.push_back(remaining[best_idx]);
            remaining.erase(remaining.begin() + best_idx);
            if (!have_local || best_score > local_best) {
                local_best = best_score;
                have_local = true;
            }
        }
        remaining.insert(remaining.begin(), prefix.begin() + fixed,
                         prefix.end());
        std::sort(remaining.begin(), remaining.end());
        prefix.resize(fixed);
        return local_best;
    }

    const BestTracker& best() const { return best_; }

private:
    SchemeEvaluator& ev_;
    SplitMix64 rng_;
    HornerScheme scheme_;
    BestTracker best_;

    double eval_complete(const std::vector<VarId>& order) {
        scheme_.order = order;
        auto [ops, d] = ev_.evaluate(scheme_);
        best_.offer(ops, d, order);
        return d;
    }

    double playout(const std::vector<VarId>& prefix,
                   const std::vector<VarId>& remaining, std::size_t pick) {
        std::vector<VarId> order = prefix;
        order.push_back(remaining[pick]);
        std::vector<VarId> tail;
        for (std::size_t i = 0; i < remaining.size(); ++i)
            if (i != pick) tail.push_back(remaining[i]);
        shuffle(tail, rng_);
        order.insert(order.end(), tail.begin(), tail.end());
        return eval_complete(order);
    }
};

} // namespace

SearchResult nmcs_search(const Polynomial& p, const NmcsConfig& cfg) {
    if (cfg.level < 1) throw std::invalid_argument("nmcs: level must be >= 1");
    if (p.empty()) throw std::invalid_argument("nmcs: empty polynomial");

    SchemeEvaluator ev(p);
    NmcsRun run(ev, cfg.direction, cfg.seed);
    std::vector<VarId> prefix;
    std::vector<VarId> remaining = ev.occurring();
    run.nested(cfg.level, prefix, remaining);

    SearchResult res;
    res.best_scheme = HornerScheme{run.best().order, cfg.direction};
    res.best_ops = run.best().ops;
    res.best_delta = run.best().delta;
    res.evaluations = ev.calls();
    return res;
}

BigInt nmcs_eval_count(std::uint32_t n, std::uint32_t k) {
    // Unsigned Stirling numbers of the first kind by the usual recurrence
    // c(a,b) = c(a-1,b-1) + (a-1)*c(a-1,b), rolled row by row.
    const std::uint32_t a_max = n + k;
    std::vector<BigInt> row(a_max + 1), next(a_max + 1);
    row[0] = 1;  // c(0,0)
    for (std::uint32_t a = 1; a <= a_max; ++a) {
        for (std::uint32_t b = 0; b <= a; ++b) {
            next[b] = (b > 0 ? row[b - 1] : BigInt(0)) +
                      BigInt(a - 1) * row[b];
        }
        for (std::uint32_t b = 0; b <= a; ++b) row[b] = next[b];
    }
    return row[n];
}

SearchResult exhaustive_search(const Polynomial& p, Direction direction,
                               std::uint32_t cap) {
    if (p.empty())
        throw std::invalid_argument("exhaustive: empty polynomial");
    SchemeEvaluator ev(p);
    std::vector<VarId> perm = ev.occurring();
    if (perm.size() > cap)
        throw std::invalid_argument(
            "exhaustive: too many variables (cap " + std::to_string(cap) +
            "); use a Monte Carlo strategy");
    BestTracker best;
    HornerScheme scheme;
    scheme.dir = direction;
    do {
        scheme.order = perm;
        auto [ops, d] = ev.evaluate(scheme);
        // Lexicographic enumeration plus strict improvement leaves ties on
        // the lexicographically smallest order.
        best.offer(ops, d, perm);
    } while (std::next_permutation(perm.begin(), perm.end()));

    SearchResult res;
    res.best_scheme = HornerScheme{best.order, direction};
    res.best_ops = best.ops;
    res.best_delta = best.delta;
    res.evaluations = ev.calls();
    return res;
}

SearchResult occurrence_search(const Polynomial& p, Direction direction) {
    if (p.empty())
        throw std::invalid_argument("occurrence: empty polynomial");
    SchemeEvaluator ev(p);
    HornerScheme scheme{p.occurrence_order(), direction};
    auto [ops, d] = ev.evaluate(scheme);

    SearchResult res;
    res.best_scheme = scheme;
    res.best_ops = ops;
    res.best_delta = d;
    res.evaluations = ev.calls();
    return res;
}

} // namespace polyopt
