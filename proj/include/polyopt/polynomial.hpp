#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "polyopt/bigint.hpp"
#include "polyopt/opcount.hpp"
#include "polyopt/variables.hpp"

namespace polyopt {

// One monomial: nonzero coefficient times a product of variable powers.
// Exponents are stored sparsely, sorted by variable id; an absent entry
// means exponent zero, a present entry is always positive.
struct Term {
    BigInt coeff;
    std::vector<std::pair<VarId, std::uint32_t>> exps;

    std::uint32_t exponent_of(VarId v) const;
    std::uint64_t total_degree() const;

    friend bool operator==(const Term& a, const Term& b) {
        return a.coeff == b.coeff && a.exps == b.exps;
    }
};

// Sparse multivariate polynomial in fully collected form: no two terms share
// an exponent vector, no zero coefficients, and terms are kept in canonical
// order (descending graded lexicographic over ascending variable id) so that
// printing and iteration are deterministic.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(VarTable vars) : vars_(std::move(vars)) {}

    // Collects `raw` (merges like terms, drops zeros) and sorts canonically.
    static Polynomial collect(VarTable vars, std::vector<Term> raw);

    const VarTable& vars() const { return vars_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    // Variables sorted by descending number of terms they occur in
    // (presence, not exponent-weighted); ties by ascending id.
    // Throws std::invalid_argument on the empty polynomial.
    std::vector<VarId> occurrence_order() const;

    // Cost of evaluating the fully expanded form: every power is a repeated
    // multiplication, a coefficient of absolute value != 1 costs one
    // multiplication, and the sign rides on the addition.
    OpCount expanded_op_count() const;

    Polynomial add(const Polynomial& other) const;
    Polynomial mul(const Polynomial& other) const;
    Polynomial negate() const;

    // Exact evaluation at an integer point (one value per variable id).
    BigInt evaluate(const std::vector<BigInt>& point) const;

    // Name-normalized structural equality: variable identity is compared by
    // name, so a round trip through text (which may reorder the table) still
    // compares equal.
    friend bool operator==(const Polynomial& a, const Polynomial& b);

private:
    VarTable vars_;
    std::vector<Term> terms_;
};

// Canonical term comparison: higher total degree first; ties broken by the
// exponent vector read over ascending variable id, larger first.
bool canonical_term_less(const Term& a, const Term& b);

// Renders the canonical text form; parse(print(p)) == p.
std::string print(const Polynomial& p);

} // namespace polyopt
