#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polyopt/polynomial.hpp"

namespace polyopt {

// Forward: order[0] is extracted first and ends up outermost.
// Backward: order[0] is extracted last and ends up innermost.
enum class Direction { Forward, Backward };

constexpr const char* to_string(Direction d) {
    return d == Direction::Forward ? "forward" : "backward";
}

struct HornerScheme {
    std::vector<VarId> order;
    Direction dir = Direction::Forward;

    friend bool operator==(const HornerScheme& a, const HornerScheme& b) {
        return a.order == b.order && a.dir == b.dir;
    }
};

// Outermost-first extraction sequence after direction normalization.
std::vector<VarId> effective_order(const HornerScheme& s);

// Reference to a tree node plus the sign it carries at that use site.
// Signs live on the edges: products keep unsigned children and hoist the
// sign outward, sums carry one sign per slot, and a sign is never an
// arithmetic operation of its own.
struct SignedRef {
    std::uint32_t id = 0;
    bool neg = false;
};

struct HornerNode {
    enum class Kind : std::uint8_t { Var, Pow, Const, Mul, Sum };
    Kind kind;
    VarId var = 0;                  // Var, Pow
    std::uint32_t exp = 0;          // Pow, always >= 2
    std::uint32_t cls = 0;          // Const: index into const pool
    std::uint32_t kids_begin = 0;   // Mul, Sum: range into the slot arena
    std::uint32_t kids_end = 0;
};

// Arena representation of one nested form.  Invariants: children precede
// their parent; Mul slots are never negative and never a literal one;
// Sum nodes are flat (no Sum child slot); the const pool holds distinct
// magnitudes (zero only for the zero polynomial).
struct HornerTree {
    std::vector<HornerNode> nodes;
    std::vector<SignedRef> slots;
    std::vector<BigInt> consts;
    SignedRef root;

    void clear() {
        nodes.clear();
        slots.clear();
        consts.clear();
        root = SignedRef{};
    }
};

// Nested-form construction for a fixed variable order.  The builder is
// bound to one polynomial and precomputes a dense exponent table so that
// repeated builds (one per candidate order during search) stay cheap and
// allocation-free after warmup.
class HornerBuilder {
public:
    explicit HornerBuilder(const Polynomial& poly);

    const Polynomial& poly() const { return *poly_; }

    // Rebuilds `out` in place.  Scheme variables must be distinct and in
    // range; variables missing from the scheme stay expanded inside the
    // residual monomials.  Throws std::invalid_argument on a bad scheme.
    void build(const HornerScheme& scheme, HornerTree& out);

private:
    const Polynomial* poly_;
    std::uint32_t nvars_;
    std::vector<std::uint32_t> expmat_;     // term-major dense exponents
    std::vector<std::uint32_t> term_cls_;   // magnitude class per term
    std::vector<bool> term_neg_;
    std::vector<BigInt> pool_;              // magnitude per class
    std::uint32_t one_cls_;                 // class of 1, or UINT32_MAX

    std::vector<std::uint32_t> pos_;        // position of var in order
    std::vector<std::uint32_t> idx_;        // term permutation being grouped
    std::vector<SignedRef> sum_tmp_;
    std::vector<SignedRef> mono_tmp_;
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> groups_pool_;
    HornerTree* out_ = nullptr;

    std::uint32_t expo(std::uint32_t term, VarId v) const {
        return expmat_[static_cast<std::size_t>(term) * nvars_ + v];
    }

    SignedRef leaf_power(VarId v, std::uint32_t e);
    SignedRef mul_prefix(SignedRef pw, SignedRef rest);
    SignedRef sum2(SignedRef a, SignedRef b);
    SignedRef monomial(std::uint32_t term, std::uint32_t vi,
                       const std::vector<VarId>& order);
    SignedRef build_range(std::uint32_t lo, std::uint32_t hi, std::uint32_t vi,
                          const std::vector<VarId>& order);
};

// One-shot convenience wrapper around HornerBuilder.
HornerTree apply_scheme(const Polynomial& poly, const HornerScheme& scheme);

// Operation count of the tree as written, with no sharing: a power v^e
// costs e-1 multiplications, an n-slot product n-1, an n-slot sum n-1
// additions, and slot signs are free.
OpCount tree_op_count(const HornerTree& t);

std::string print(const HornerTree& t, const VarTable& vars);

} // namespace polyopt
