#include "polyopt/dag.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace polyopt {

namespace {

constexpr std::uint32_t kNone = UINT32_MAX;

std::uint64_t op_key(DagNode::Kind kind, bool bneg, std::uint32_t a,
                     std::uint32_t b) {
    // 31 bits per operand id; enough by orders of magnitude at this scale.
    if (a >= (1u << 31) || b >= (1u << 31))
        throw std::length_error("expression DAG too large");
    return (static_cast<std::uint64_t>(kind == DagNode::Kind::Mul) << 63) |
           (static_cast<std::uint64_t>(bneg) << 62) |
           (static_cast<std::uint64_t>(a) << 31) | b;
}

std::uint64_t sat_add(std::uint64_t x, std::uint64_t y) {
    std::uint64_t r;
    if (__builtin_add_overflow(x, y, &r))
        return std::numeric_limits<std::uint64_t>::max();
    return r;
}

} // namespace

std::uint32_t DagBuilder::intern(DagNode n, std::uint64_t key) {
    auto [it, fresh] =
        ops_.emplace(key, static_cast<std::uint32_t>(out_->nodes.size()));
    if (fresh) out_->nodes.push_back(n);
    return it->second;
}

std::uint32_t DagBuilder::var_node(VarId v) {
    if (var_ids_[v] == kNone) {
        DagNode n;
        n.kind = DagNode::Kind::Var;
        n.a = v;
        out_->nodes.push_back(n);
        var_ids_[v] = static_cast<std::uint32_t>(out_->nodes.size() - 1);
    }
    return var_ids_[v];
}

std::uint32_t DagBuilder::const_node(std::uint32_t cls) {
    if (cls_ids_[cls] == kNone) {
        DagNode n;
        n.kind = DagNode::Kind::Const;
        n.a = cls;
        out_->nodes.push_back(n);
        cls_ids_[cls] = static_cast<std::uint32_t>(out_->nodes.size() - 1);
    }
    return cls_ids_[cls];
}

std::uint32_t DagBuilder::mul2(std::uint32_t x, std::uint32_t y) {
    if (x > y) std::swap(x, y);
    DagNode n;
    n.kind = DagNode::Kind::Mul;
    n.a = x;
    n.b = y;
    return intern(n, op_key(n.kind, false, x, y));
}

SignedRef DagBuilder::add2(SignedRef x, SignedRef y) {
    if (y.id < x.id || (y.id == x.id && x.neg && !y.neg)) std::swap(x, y);
    // A leading negative operand flips the whole sum so that a-b and -a+b
    // land on the same node with opposite reference signs.
    bool out_neg = false;
    if (x.neg) {
        out_neg = true;
        y.neg = !y.neg;
    }
    DagNode n;
    n.kind = DagNode::Kind::Add;
    n.bneg = y.neg;
    n.a = x.id;
    n.b = y.id;
    return SignedRef{intern(n, op_key(n.kind, n.bneg, n.a, n.b)), out_neg};
}

std::uint32_t DagBuilder::pow_chain(VarId v, std::uint32_t e) {
    std::uint32_t id = var_node(v);
    const std::uint32_t base = id;
    for (std::uint32_t k = 2; k <= e; ++k) id = mul2(id, base);
    return id;
}

SignedRef DagBuilder::convert(std::uint32_t id, std::size_t depth) {
    if (gather_pool_.size() <= depth) gather_pool_.resize(depth + 1);
    const HornerNode& n = tree_->nodes[id];
    switch (n.kind) {
        case HornerNode::Kind::Var:
            return SignedRef{var_node(n.var), false};
        case HornerNode::Kind::Pow:
            return SignedRef{pow_chain(n.var, n.exp), false};
        case HornerNode::Kind::Const:
            return SignedRef{const_node(n.cls), false};
        case HornerNode::Kind::Mul: {
            auto& ops = gather_pool_[depth];
            ops.clear();
            for (std::uint32_t s = n.kids_begin; s < n.kids_end; ++s)
                ops.push_back(convert(tree_->slots[s].id, depth + 1));
            bool neg = false;
            for (SignedRef& r : ops) neg = neg != r.neg;
            std::sort(ops.begin(), ops.end(),
                      [](SignedRef a, SignedRef b) { return a.id < b.id; });
            std::uint32_t acc = ops[0].id;
            for (std::size_t i = 1; i < ops.size(); ++i)
                acc = mul2(acc, ops[i].id);
            return SignedRef{acc, neg};
        }
        case HornerNode::Kind::Sum: {
            auto& ops = gather_pool_[depth];
            ops.clear();
            for (std::uint32_t s = n.kids_begin; s < n.kids_end; ++s) {
                const SignedRef slot = tree_->slots[s];
                SignedRef r = convert(slot.id, depth + 1);
                r.neg = r.neg != slot.neg;
                ops.push_back(r);
            }
            std::sort(ops.begin(), ops.end(), [](SignedRef a, SignedRef b) {
                if (a.id != b.id) return a.id < b.id;
                return a.neg < b.neg;
            });
            SignedRef acc = ops[0];
            for (std::size_t i = 1; i < ops.size(); ++i)
                acc = add2(acc, ops[i]);
            return acc;
        }
    }
    throw std::logic_error("corrupt tree node");
}

void DagBuilder::build(const HornerTree& tree, ExprDag& out) {
    tree_ = &tree;
    out_ = &out;
    out.nodes.clear();
    out.root = SignedRef{};
    if (out.consts != tree.consts) out.consts = tree.consts;
    ops_.clear();

    std::uint32_t max_var = 0;
    bool any_var = false;
    for (const HornerNode& n : tree.nodes)
        if (n.kind == HornerNode::Kind::Var || n.kind == HornerNode::Kind::Pow) {
            max_var = std::max(max_var, n.var);
            any_var = true;
        }
    var_ids_.assign(any_var ? max_var + 1 : 0, kNone);
    cls_ids_.assign(tree.consts.size(), kNone);

    // Leaves are created up front in id order so that the node table is a
    // function of the expression alone, not of traversal order.  The arena
    // can hold orphaned nodes, so reachability is established first
    // (children precede parents; one reverse pass marks them all).
    if (tree.nodes.empty()) throw std::invalid_argument("empty tree");
    live_.assign(tree.nodes.size(), 0);
    var_used_.assign(var_ids_.size(), 0);
    cls_used_.assign(cls_ids_.size(), 0);
    live_[tree.root.id] = 1;
    for (std::uint32_t i = static_cast<std::uint32_t>(tree.nodes.size());
         i-- > 0;) {
        if (!live_[i]) continue;
        const HornerNode& n = tree.nodes[i];
        switch (n.kind) {
            case HornerNode::Kind::Var:
            case HornerNode::Kind::Pow:
                var_used_[n.var] = 1;
                break;
            case HornerNode::Kind::Const:
                cls_used_[n.cls] = 1;
                break;
            case HornerNode::Kind::Mul:
            case HornerNode::Kind::Sum:
                for (std::uint32_t s = n.kids_begin; s < n.kids_end; ++s)
                    live_[tree.slots[s].id] = 1;
                break;
        }
    }
    for (std::uint32_t v = 0; v < var_used_.size(); ++v)
        if (var_used_[v]) var_node(v);
    for (std::uint32_t c = 0; c < cls_used_.size(); ++c)
        if (cls_used_[c]) const_node(c);

    SignedRef root = convert(tree.root.id, 0);
    root.neg = root.neg != tree.root.neg;
    out.root = root;
    tree_ = nullptr;
    out_ = nullptr;
}

ExprDag build_dag(const HornerTree& tree) {
    DagBuilder b;
    ExprDag d;
    b.build(tree, d);
    return d;
}

OpCount count_ops(const ExprDag& d) {
    OpCount c;
    for (const DagNode& n : d.nodes) {
        if (n.kind == DagNode::Kind::Mul) ++c.muls;
        else if (n.kind == DagNode::Kind::Add) ++c.adds;
    }
    return c;
}

OpCount unshared_ops(const ExprDag& d) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> cost(d.nodes.size(),
                                                              {0, 0});
    for (std::size_t i = 0; i < d.nodes.size(); ++i) {
        const DagNode& n = d.nodes[i];
        if (n.kind == DagNode::Kind::Mul) {
            cost[i].first =
                sat_add(sat_add(cost[n.a].first, cost[n.b].first), 1);
            cost[i].second = sat_add(cost[n.a].second, cost[n.b].second);
        } else if (n.kind == DagNode::Kind::Add) {
            cost[i].first = sat_add(cost[n.a].first, cost[n.b].first);
            cost[i].second =
                sat_add(sat_add(cost[n.a].second, cost[n.b].second), 1);
        }
    }
    OpCount c;
    c.muls = cost[d.root.id].first;
    c.adds = cost[d.root.id].second;
    return c;
}

namespace {

std::string ref_text(const ExprDag& d, const VarTable& vars,
                     const std::vector<std::uint32_t>& temp, std::uint32_t id) {
    const DagNode& n = d.nodes[id];
    switch (n.kind) {
        case DagNode::Kind::Var:
            return vars.name(n.a);
        case DagNode::Kind::Const:
            return d.consts[n.a].get_str();
        default:
            return "Z" + std::to_string(temp[id]);
    }
}

} // namespace

std::string emit_code(const ExprDag& d, const VarTable& vars,
                      const std::string& target) {
    std::vector<std::uint32_t> temp(d.nodes.size(), 0);
    std::uint32_t next = 1;
    std::ostringstream os;
    for (std::uint32_t i = 0; i < d.nodes.size(); ++i) {
        const DagNode& n = d.nodes[i];
        if (n.kind == DagNode::Kind::Var || n.kind == DagNode::Kind::Const)
            continue;
        temp[i] = next++;
        os << "Z" << temp[i] << " = " << ref_text(d, vars, temp, n.a);
        if (n.kind == DagNode::Kind::Mul)
            os << "*" << ref_text(d, vars, temp, n.b);
        else
            os << (n.bneg ? " - " : " + ") << ref_text(d, vars, temp, n.b);
        os << ";\n";
    }
    os << target << " = " << (d.root.neg ? "-" : "")
       << ref_text(d, vars, temp, d.root.id) << ";";
    return os.str();
}

BigInt evaluate(const ExprDag& d, const std::vector<BigInt>& point) {
    std::vector<BigInt> val(d.nodes.size());
    for (std::size_t i = 0; i < d.nodes.size(); ++i) {
        const DagNode& n = d.nodes[i];
        switch (n.kind) {
            case DagNode::Kind::Var:
                if (n.a >= point.size())
                    throw std::invalid_argument("evaluate: point too short");
                val[i] = point[n.a];
                break;
            case DagNode::Kind::Const:
                val[i] = d.consts[n.a];
                break;
            case DagNode::Kind::Mul:
                val[i] = val[n.a] * val[n.b];
                break;
            case DagNode::Kind::Add:
                if (n.bneg) val[i] = val[n.a] - val[n.b];
                else val[i] = val[n.a] + val[n.b];
                break;
        }
    }
    BigInt r = val[d.root.id];
    if (d.root.neg) r = -r;
    return r;
}

namespace {

BigInt eval_tree_node(const HornerTree& t, const std::vector<BigInt>& point,
                      std::uint32_t id) {
    const HornerNode& n = t.nodes[id];
    switch (n.kind) {
        case HornerNode::Kind::Var:
            if (n.var >= point.size())
                throw std::invalid_argument("evaluate: point too short");
            return point[n.var];
        case HornerNode::Kind::Pow: {
            BigInt r;
            if (n.var >= point.size())
                throw std::invalid_argument("evaluate: point too short");
            mpz_pow_ui(r.get_mpz_t(), point[n.var].get_mpz_t(), n.exp);
            return r;
        }
        case HornerNode::Kind::Const:
            return t.consts[n.cls];
        case HornerNode::Kind::Mul: {
            BigInt r = 1;
            for (std::uint32_t s = n.kids_begin; s < n.kids_end; ++s)
                r *= eval_tree_node(t, point, t.slots[s].id);
            return r;
        }
        case HornerNode::Kind::Sum: {
            BigInt r = 0;
            for (std::uint32_t s = n.kids_begin; s < n.kids_end; ++s) {
                const SignedRef kid = t.slots[s];
                BigInt v = eval_tree_node(t, point, kid.id);
                if (kid.neg) r -= v;
                else r += v;
            }
            return r;
        }
    }
    throw std::logic_error("corrupt tree node");
}

} // namespace

BigInt evaluate(const HornerTree& t, const std::vector<BigInt>& point) {
    BigInt r = eval_tree_node(t, point, t.root.id);
    if (t.root.neg) r = -r;
    return r;
}

} // namespace polyopt
