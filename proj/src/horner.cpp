#include "polyopt/horner.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace polyopt {

std::vector<VarId> effective_order(const HornerScheme& s) {
    std::vector<VarId> order = s.order;
    if (s.dir == Direction::Backward)
        std::reverse(order.begin(), order.end());
    return order;
}

HornerBuilder::HornerBuilder(const Polynomial& poly)
    : poly_(&poly), nvars_(poly.vars().size()) {
    const auto& terms = poly.terms();
    expmat_.assign(static_cast<std::size_t>(terms.size()) * nvars_, 0);
    term_cls_.resize(terms.size());
    term_neg_.resize(terms.size());
    std::map<BigInt, std::uint32_t> classes;
    for (std::size_t t = 0; t < terms.size(); ++t) {
        for (const auto& [var, exp] : terms[t].exps)
            expmat_[t * nvars_ + var] = exp;
        term_neg_[t] = terms[t].coeff < 0;
        BigInt mag = abs(terms[t].coeff);
        auto [it, fresh] =
            classes.emplace(std::move(mag), static_cast<std::uint32_t>(pool_.size()));
        if (fresh) pool_.push_back(it->first);
        term_cls_[t] = it->second;
    }
    one_cls_ = UINT32_MAX;
    for (std::uint32_t c = 0; c < pool_.size(); ++c)
        if (pool_[c] == 1) one_cls_ = c;
}

SignedRef HornerBuilder::leaf_power(VarId v, std::uint32_t e) {
    HornerNode n;
    if (e == 1) {
        n.kind = HornerNode::Kind::Var;
        n.var = v;
    } else {
        n.kind = HornerNode::Kind::Pow;
        n.var = v;
        n.exp = e;
    }
    out_->nodes.push_back(n);
    return SignedRef{static_cast<std::uint32_t>(out_->nodes.size() - 1), false};
}

// pw * rest with the sign of `rest` hoisted; multiplying a literal one
// away keeps products free of unit factors.
SignedRef HornerBuilder::mul_prefix(SignedRef pw, SignedRef rest) {
    const HornerNode& rn = out_->nodes[rest.id];
    if (rn.kind == HornerNode::Kind::Const && rn.cls == one_cls_)
        return SignedRef{pw.id, rest.neg};
    HornerNode n;
    n.kind = HornerNode::Kind::Mul;
    n.kids_begin = static_cast<std::uint32_t>(out_->slots.size());
    out_->slots.push_back(SignedRef{pw.id, false});
    out_->slots.push_back(SignedRef{rest.id, false});
    n.kids_end = static_cast<std::uint32_t>(out_->slots.size());
    out_->nodes.push_back(n);
    return SignedRef{static_cast<std::uint32_t>(out_->nodes.size() - 1), rest.neg};
}

// a + b, splicing a nested sum on the left so sums stay flat.
SignedRef HornerBuilder::sum2(SignedRef a, SignedRef b) {
    HornerNode n;
    n.kind = HornerNode::Kind::Sum;
    n.kids_begin = static_cast<std::uint32_t>(out_->slots.size());
    const HornerNode& an = out_->nodes[a.id];
    if (an.kind == HornerNode::Kind::Sum) {
        for (std::uint32_t s = an.kids_begin; s < an.kids_end; ++s) {
            SignedRef kid = out_->slots[s];
            kid.neg = kid.neg != a.neg;
            out_->slots.push_back(kid);
        }
    } else {
        out_->slots.push_back(a);
    }
    out_->slots.push_back(b);
    n.kids_end = static_cast<std::uint32_t>(out_->slots.size());
    out_->nodes.push_back(n);
    return SignedRef{static_cast<std::uint32_t>(out_->nodes.size() - 1), false};
}

// Product form of one term, skipping variables already extracted along the
// current path (strictly the first `vi` entries of the order).
SignedRef HornerBuilder::monomial(std::uint32_t term, std::uint32_t vi,
                                  const std::vector<VarId>& order) {
    mono_tmp_.clear();
    const bool neg = term_neg_[term];
    const std::uint32_t cls = term_cls_[term];
    if (cls != one_cls_) {
        HornerNode n;
        n.kind = HornerNode::Kind::Const;
        n.cls = cls;
        out_->nodes.push_back(n);
        mono_tmp_.push_back(
            SignedRef{static_cast<std::uint32_t>(out_->nodes.size() - 1), false});
    }
    for (const auto& [var, exp] : poly_->terms()[term].exps) {
        if (pos_[var] < vi) continue;
        mono_tmp_.push_back(leaf_power(var, exp));
    }
    if (mono_tmp_.empty()) {
        HornerNode n;
        n.kind = HornerNode::Kind::Const;
        n.cls = one_cls_;
        out_->nodes.push_back(n);
        return SignedRef{static_cast<std::uint32_t>(out_->nodes.size() - 1), neg};
    }
    if (mono_tmp_.size() == 1)
        return SignedRef{mono_tmp_[0].id, neg};
    HornerNode n;
    n.kind = HornerNode::Kind::Mul;
    n.kids_begin = static_cast<std::uint32_t>(out_->slots.size());
    out_->slots.insert(out_->slots.end(), mono_tmp_.begin(), mono_tmp_.end());
    n.kids_end = static_cast<std::uint32_t>(out_->slots.size());
    out_->nodes.push_back(n);
    return SignedRef{static_cast<std::uint32_t>(out_->nodes.size() - 1), neg};
}

SignedRef HornerBuilder::build_range(std::uint32_t lo, std::uint32_t hi,
                                     std::uint32_t vi,
                                     const std::vector<VarId>& order) {
    if (hi - lo == 1) return monomial(idx_[lo], vi, order);
    if (vi == order.size()) {
        // Residual sum of monomials; only non-scheme variables remain.
        sum_tmp_.clear();
        for (std::uint32_t i = lo; i < hi; ++i)
            sum_tmp_.push_back(monomial(idx_[i], vi, order));
        HornerNode n;
        n.kind = HornerNode::Kind::Sum;
        n.kids_begin = static_cast<std::uint32_t>(out_->slots.size());
        out_->slots.insert(out_->slots.end(), sum_tmp_.begin(), sum_tmp_.end());
        n.kids_end = static_cast<std::uint32_t>(out_->slots.size());
        out_->nodes.push_back(n);
        return SignedRef{static_cast<std::uint32_t>(out_->nodes.size() - 1), false};
    }

    const VarId v = order[vi];
    std::sort(idx_.begin() + lo, idx_.begin() + hi,
              [&](std::uint32_t a, std::uint32_t b) {
                  const std::uint32_t ea = expo(a, v), eb = expo(b, v);
                  if (ea != eb) return ea < eb;
                  return a < b;
              });
    if (expo(idx_[lo], v) == expo(idx_[hi - 1], v) && expo(idx_[lo], v) == 0)
        return build_range(lo, hi, vi + 1, order);

    // Group boundaries by ascending exponent of v; the nested form is
    //   v^e1 * (Q1 + v^(e2-e1) * (Q2 + ... ))
    // built innermost-out.  Deeper levels run inside the group loop, so the
    // boundary scratch is per depth.
    auto& groups = groups_pool_[vi];  // (start, exp)
    groups.clear();
    groups.emplace_back(lo, expo(idx_[lo], v));
    for (std::uint32_t i = lo + 1; i < hi; ++i)
        if (expo(idx_[i], v) != groups.back().second)
            groups.emplace_back(i, expo(idx_[i], v));

    const std::uint32_t m = static_cast<std::uint32_t>(groups.size());
    std::uint32_t gend = hi;
    SignedRef acc{};
    for (std::uint32_t gi = m; gi-- > 0;) {
        const auto [gstart, gexp] = groups[gi];
        if (gi == m - 1) {
            acc = build_range(gstart, gend, vi + 1, order);
        } else {
            const std::uint32_t d = groups[gi + 1].second - gexp;
            SignedRef tail = mul_prefix(leaf_power(v, d), acc);
            SignedRef q = build_range(gstart, gend, vi + 1, order);
            acc = sum2(q, tail);
        }
        gend = gstart;
    }
    if (groups[0].second > 0)
        acc = mul_prefix(leaf_power(v, groups[0].second), acc);
    return acc;
}

void HornerBuilder::build(const HornerScheme& scheme, HornerTree& out) {
    const std::vector<VarId> order = effective_order(scheme);
    pos_.assign(nvars_, UINT32_MAX);
    for (std::uint32_t i = 0; i < order.size(); ++i) {
        const VarId v = order[i];
        if (v >= nvars_)
            throw std::invalid_argument("scheme variable out of range");
        if (pos_[v] != UINT32_MAX)
            throw std::invalid_argument("scheme variable repeated");
        pos_[v] = i;
    }

    out.nodes.clear();
    out.slots.clear();
    out.root = SignedRef{};
    out_ = &out;
    if (groups_pool_.size() < order.size()) groups_pool_.resize(order.size());
    // Reassigned only when it differs so a reused tree keeps its buffers.
    if (out.consts != pool_) out.consts = pool_;
    const std::size_t nterms = poly_->term_count();
    if (nterms == 0) {
        HornerNode n;
        n.kind = HornerNode::Kind::Const;
        n.cls = static_cast<std::uint32_t>(out.consts.size());
        out.consts.push_back(BigInt(0));
        out.nodes.push_back(n);
        out.root = SignedRef{0, false};
        out_ = nullptr;
        return;
    }
    idx_.resize(nterms);
    for (std::uint32_t i = 0; i < nterms; ++i) idx_[i] = i;
    out.root = build_range(0, static_cast<std::uint32_t>(nterms), 0, order);
    out_ = nullptr;
}

HornerTree apply_scheme(const Polynomial& poly, const HornerScheme& scheme) {
    HornerBuilder b(poly);
    HornerTree t;
    b.build(scheme, t);
    return t;
}

OpCount tree_op_count(const HornerTree& t) {
    // The arena can hold nodes orphaned by sum splicing, so only nodes
    // reachable from the root count.  Children precede parents, which makes
    // one reverse marking pass sufficient.
    OpCount c;
    if (t.nodes.empty()) return c;
    std::vector<char> live(t.nodes.size(), 0);
    live[t.root.id] = 1;
    for (std::uint32_t i = static_cast<std::uint32_t>(t.nodes.size()); i-- > 0;) {
        if (!live[i]) continue;
        const HornerNode& n = t.nodes[i];
        switch (n.kind) {
            case HornerNode::Kind::Pow:
                c.muls += n.exp - 1;
                break;
            case HornerNode::Kind::Mul:
                c.muls += (n.kids_end - n.kids_begin) - 1;
                for (std::uint32_t s = n.kids_begin; s < n.kids_end; ++s)
                    live[t.slots[s].id] = 1;
                break;
            case HornerNode::Kind::Sum:
                c.adds += (n.kids_end - n.kids_begin) - 1;
                for (std::uint32_t s = n.kids_begin; s < n.kids_end; ++s)
                    live[t.slots[s].id] = 1;
                break;
            default:
                break;
        }
    }
    return c;
}

namespace {

void print_node(std::ostringstream& os, const HornerTree& t,
                const VarTable& vars, std::uint32_t id, bool parenthesize_sum) {
    const HornerNode& n = t.nodes[id];
    switch (n.kind) {
        case HornerNode::Kind::Var:
            os << vars.name(n.var);
            break;
        case HornerNode::Kind::Pow:
            os << vars.name(n.var) << "^" << n.exp;
            break;
        case HornerNode::Kind::Const:
            os << t.consts[n.cls].get_str();
            break;
        case HornerNode::Kind::Mul: {
            bool first = true;
            for (std::uint32_t s = n.kids_begin; s < n.kids_end; ++s) {
                if (!first) os << "*";
                print_node(os, t, vars, t.slots[s].id, true);
                first = false;
            }
            break;
        }
        case HornerNode::Kind::Sum: {
            if (parenthesize_sum) os << "(";
            bool first = true;
            for (std::uint32_t s = n.kids_begin; s < n.kids_end; ++s) {
                const SignedRef kid = t.slots[s];
                if (first) {
                    if (kid.neg) os << "-";
                } else {
                    os << (kid.neg ? " - " : " + ");
                }
                print_node(os, t, vars, kid.id, true);
                first = false;
            }
            if (parenthesize_sum) os << ")";
            break;
        }
    }
}

} // namespace

std::string print(const HornerTree& t, const VarTable& vars) {
    std::ostringstream os;
    if (t.root.neg) os << "-";
    print_node(os, t, vars, t.root.id, t.root.neg);
    return os.str();
}

} // namespace polyopt
