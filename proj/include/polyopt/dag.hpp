#pragma once

#include <cstdint>
#include <deque>
#include <string>
#include <unordered_map>
#include <vector>

#include "polyopt/horner.hpp"

namespace polyopt {

// One node of the shared expression DAG.  Operands always have smaller ids
// than the node itself.  Add and Mul keep left id <= right id so commuted
// duplicates collapse; Mul operands carry no sign (signs fold into the
// referencing edge), an Add may negate its right operand only.
struct DagNode {
    enum class Kind : std::uint8_t { Var, Const, Add, Mul };
    Kind kind;
    bool bneg = false;      // Add: right operand is subtracted
    std::uint32_t a = 0;    // Var: variable id; Const: const index; else left id
    std::uint32_t b = 0;    // Add, Mul: right id

    friend bool operator==(const DagNode& x, const DagNode& y) {
        return x.kind == y.kind && x.bneg == y.bneg && x.a == y.a && x.b == y.b;
    }
};

// Deduplicated expression DAG: structurally identical subexpressions occupy
// one node, so counting nodes counts the operations that remain after
// sharing.  Every node is reachable from the root.
struct ExprDag {
    std::vector<DagNode> nodes;
    std::vector<BigInt> consts;
    SignedRef root;
};

// Canonicalizing DAG construction.  Powers become left-deep multiplication
// chains (x, x*x, (x*x)*x, ...) so partial powers are shared as prefixes;
// each node's own operand list is sorted by node id and rebuilt left-deep
// (nesting between nodes is kept, so a bracketed subproduct stays a unit
// and is shared wherever it reappears); every (kind, operands) pair is
// hash-consed.  The builder keeps its tables across builds so repeated use
// stays cheap.
class DagBuilder {
public:
    void build(const HornerTree& tree, ExprDag& out);

private:
    const HornerTree* tree_ = nullptr;
    ExprDag* out_ = nullptr;
    std::unordered_map<std::uint64_t, std::uint32_t> ops_;
    std::vector<std::uint32_t> var_ids_;
    std::vector<std::uint32_t> cls_ids_;
    std::vector<char> live_;
    std::vector<char> var_used_;
    std::vector<char> cls_used_;
    // deque: grown mid-recursion while outer frames hold references
    std::deque<std::vector<SignedRef>> gather_pool_;

    std::uint32_t var_node(VarId v);
    std::uint32_t const_node(std::uint32_t cls);
    std::uint32_t intern(DagNode n, std::uint64_t key);
    std::uint32_t mul2(std::uint32_t x, std::uint32_t y);
    SignedRef add2(SignedRef x, SignedRef y);
    std::uint32_t pow_chain(VarId v, std::uint32_t e);
    SignedRef convert(std::uint32_t id, std::size_t depth);
};

ExprDag build_dag(const HornerTree& tree);

// muls = number of Mul nodes, adds = number of Add nodes; sharing means
// each is paid for exactly once.
OpCount count_ops(const ExprDag& d);

// Cost the same expression would have as a fully unshared tree (saturating
// at the numeric limit); the gap to count_ops is what sharing saved.
OpCount unshared_ops(const ExprDag& d);

// Straight-line code: one assignment `Z<k> = <op>;` per internal node in
// topological order, then a final assignment to `target`.  Lines are
// newline-separated without a trailing newline.
std::string emit_code(const ExprDag& d, const VarTable& vars,
                      const std::string& target);

// Exact bottom-up evaluation at an integer point (one value per variable id).
BigInt evaluate(const ExprDag& d, const std::vector<BigInt>& point);

// Exact recursive evaluation of a nested form at an integer point.
BigInt evaluate(const HornerTree& t, const std::vector<BigInt>& point);

} // namespace polyopt
