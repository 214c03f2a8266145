#include "doctest.h"

#include <map>

#include "polyopt/dag.hpp"
#include "polyopt/parser.hpp"
#include "polyopt/rng.hpp"

#include "oracles.hpp"

using namespace polyopt;

namespace {

HornerScheme named_scheme(const Polynomial& p,
                          const std::vector<std::string>& names) {
    HornerScheme s;
    for (const auto& n : names) s.order.push_back(p.vars().id_of(n));
    return s;
}

// Mirrors a DAG back into a nested-form arena (binary products and sums)
// so canonicalization can be checked to be a fixed point.
HornerTree tree_from_dag(const ExprDag& d) {
    HornerTree t;
    t.consts = d.consts;
    std::map<BigInt, std::uint32_t> cls;
    for (std::uint32_t i = 0; i < t.consts.size(); ++i) cls[t.consts[i]] = i;
    for (const DagNode& n : d.nodes) {
        HornerNode h;
        switch (n.kind) {
            case DagNode::Kind::Var:
                h.kind = HornerNode::Kind::Var;
                h.var = n.a;
                break;
            case DagNode::Kind::Const:
                h.kind = HornerNode::Kind::Const;
                h.cls = n.a;
                break;
            case DagNode::Kind::Mul:
            case DagNode::Kind::Add:
                h.kind = n.kind == DagNode::Kind::Mul ? HornerNode::Kind::Mul
                                                      : HornerNode::Kind::Sum;
                h.kids_begin = static_cast<std::uint32_t>(t.slots.size());
                t.slots.push_back(SignedRef{n.a, false});
                t.slots.push_back(SignedRef{n.b, n.bneg});
                h.kids_end = static_cast<std::uint32_t>(t.slots.size());
                break;
        }
        t.nodes.push_back(h);
    }
    t.root = d.root;
    return t;
}

} // namespace

TEST_CASE("shared DAG of the cubic example counts six operations") {
    Polynomial p = parse_polynomial("x^2*z + x^3*y + x^3*y*z");
    ExprDag d = build_dag(apply_scheme(p, named_scheme(p, {"x", "y", "z"})));
    CHECK(count_ops(d) == OpCount{4, 2});
    CHECK(count_ops(d).total() == 6);
}

TEST_CASE("a twice-used product of a sum is paid for once") {
    // Nested form: x*(b*(a + e)) + y*(b*(a + e)).
    Polynomial p = parse_polynomial("x*b*a + x*b*e + y*b*a + y*b*e");
    HornerTree t = apply_scheme(p, named_scheme(p, {"x", "y", "b"}));
    ExprDag d = build_dag(t);
    OpCount shared = count_ops(d);
    OpCount unshared = unshared_ops(d);
    CHECK(unshared == tree_op_count(t));
    CHECK(shared.muls + 1 == unshared.muls);
    CHECK(shared.adds + 1 == unshared.adds);
}

TEST_CASE("commuted operands collapse to one node") {
    VarTable vars;
    const VarId a = vars.intern("a");
    const VarId b = vars.intern("b");
    auto sum_tree = [&](VarId first, VarId second, bool neg_first,
                        bool neg_second) {
        HornerTree t;
        t.nodes.push_back(
            HornerNode{HornerNode::Kind::Var, first, 0, 0, 0, 0});
        t.nodes.push_back(
            HornerNode{HornerNode::Kind::Var, second, 0, 0, 0, 0});
        t.slots.push_back(SignedRef{0, neg_first});
        t.slots.push_back(SignedRef{1, neg_second});
        t.nodes.push_back(HornerNode{HornerNode::Kind::Sum, 0, 0, 0, 0, 2});
        t.root = SignedRef{2, false};
        return t;
    };
    ExprDag ab = build_dag(sum_tree(a, b, false, false));
    ExprDag ba = build_dag(sum_tree(b, a, false, false));
    CHECK(ab.nodes == ba.nodes);
    CHECK(ab.root.id == ba.root.id);
    CHECK(count_ops(ab) == OpCount{0, 1});

    // a-b and -a+b share the node; only the reference sign differs.
    ExprDag amb = build_dag(sum_tree(a, b, false, true));
    ExprDag bma = build_dag(sum_tree(a, b, true, false));
    CHECK(amb.nodes == bma.nodes);
    CHECK(amb.root.id == bma.root.id);
    CHECK(!amb.root.neg);
    CHECK(bma.root.neg);
}

TEST_CASE("power chains share prefixes") {
    Polynomial p = parse_polynomial("x^3 + x^2");
    ExprDag d = build_dag(apply_scheme(p, HornerScheme{}));
    CHECK(count_ops(d) == OpCount{2, 1});
}

TEST_CASE("emitted code for a bare product") {
    Polynomial p = parse_polynomial("x*y");
    ExprDag d = build_dag(apply_scheme(p, HornerScheme{}));
    CHECK(emit_code(d, p.vars(), "result") == "Z1 = x*y;\nresult = Z1;");
}

TEST_CASE("emitted code evaluates like the polynomial") {
    SplitMix64 rng(2024);
    for (int i = 0; i < 10; ++i) {
        Polynomial p = oracles::random_poly(rng, 4, 8, 3);
        HornerScheme s{p.occurrence_order(), Direction::Forward};
        HornerTree t = apply_scheme(p, s);
        ExprDag d = build_dag(t);
        const std::string code = emit_code(d, p.vars(), "out");
        for (int k = 0; k < 10; ++k) {
            auto pt = oracles::random_point(rng, p.vars().size());
            std::map<std::string, BigInt> env;
            for (VarId v = 0; v < p.vars().size(); ++v)
                env[p.vars().name(v)] = pt[v];
            oracles::CodeInterpreter interp(code);
            CHECK(interp.run(env, "out") == p.evaluate(pt));
        }
    }
}

TEST_CASE("sharing is sound and never increases cost") {
    SplitMix64 rng(555);
    for (int i = 0; i < 30; ++i) {
        Polynomial p = oracles::random_poly(rng, 5, 8, 4);
        HornerScheme s{p.occurrence_order(), Direction::Forward};
        HornerTree t = apply_scheme(p, s);
        ExprDag d = build_dag(t);
        CHECK(count_ops(d).total() <= tree_op_count(t).total());
        CHECK(unshared_ops(d) == tree_op_count(t));
        for (int k = 0; k < 4; ++k) {
            auto pt = oracles::random_point(rng, p.vars().size());
            const BigInt want = p.evaluate(pt);
            CHECK(evaluate(t, pt) == want);
            CHECK(evaluate(d, pt) == want);
        }
    }
}

TEST_CASE("construction is deterministic and a fixed point") {
    SplitMix64 rng(77);
    for (int i = 0; i < 20; ++i) {
        Polynomial p = oracles::random_poly(rng, 4, 7, 3);
        HornerScheme s{p.occurrence_order(), Direction::Forward};
        HornerTree t = apply_scheme(p, s);
        ExprDag d1 = build_dag(t);
        ExprDag d2 = build_dag(t);
        CHECK(d1.nodes == d2.nodes);
        CHECK(d1.root.id == d2.root.id);
        CHECK(d1.root.neg == d2.root.neg);

        // Rebuilding from the DAG's own binary structure keeps the size,
        // the cost, and the meaning; node numbering may shift.
        ExprDag d3 = build_dag(tree_from_dag(d1));
        CHECK(d3.nodes.size() == d1.nodes.size());
        CHECK(count_ops(d3) == count_ops(d1));
        CHECK(d3.root.neg == d1.root.neg);
        auto pt = oracles::random_point(rng, p.vars().size());
        CHECK(evaluate(d3, pt) == evaluate(d1, pt));
    }
}

TEST_CASE("DAG invariants hold structurally") {
    SplitMix64 rng(31);
    for (int i = 0; i < 20; ++i) {
        Polynomial p = oracles::random_poly(rng, 5, 8, 4);
        HornerScheme s{p.occurrence_order(), Direction::Forward};
        ExprDag d = build_dag(apply_scheme(p, s));
        for (std::size_t id = 0; id < d.nodes.size(); ++id) {
            const DagNode& n = d.nodes[id];
            if (n.kind == DagNode::Kind::Add || n.kind == DagNode::Kind::Mul) {
                CHECK(n.a < id);
                CHECK(n.b < id);
                CHECK(n.a <= n.b);
                if (n.kind == DagNode::Kind::Mul) CHECK(!n.bneg);
            }
            for (std::size_t j = id + 1; j < d.nodes.size(); ++j)
                CHECK(!(d.nodes[j] == n));
        }
    }
}
