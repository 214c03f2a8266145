#include "polyopt/polynomial.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace polyopt {

std::uint32_t Term::exponent_of(VarId v) const {
    for (const auto& [var, exp] : exps)
        if (var == v) return exp;
    return 0;
}

std::uint64_t Term::total_degree() const {
    std::uint64_t d = 0;
    for (const auto& [var, exp] : exps) d += exp;
    return d;
}

bool canonical_term_less(const Term& a, const Term& b) {
    const std::uint64_t da = a.total_degree();
    const std::uint64_t db = b.total_degree();
    if (da != db) return da > db;
    // Walk both sparse exponent vectors in ascending variable id; the first
    // position where they differ decides (larger exponent sorts first).
    std::size_t i = 0, j = 0;
    while (i < a.exps.size() && j < b.exps.size()) {
        if (a.exps[i].first != b.exps[j].first)
            return a.exps[i].first < b.exps[j].first;
        if (a.exps[i].second != b.exps[j].second)
            return a.exps[i].second > b.exps[j].second;
        ++i;
        ++j;
    }
    return i < a.exps.size();
}

Polynomial Polynomial::collect(VarTable vars, std::vector<Term> raw) {
    for (Term& t : raw) {
        std::sort(t.exps.begin(), t.exps.end());
        // Merge duplicate variables within one monomial (x*x -> x^2).
        std::vector<std::pair<VarId, std::uint32_t>> merged;
        for (const auto& [var, exp] : t.exps) {
            if (exp == 0) continue;
            if (!merged.empty() && merged.back().first == var)
                merged.back().second += exp;
            else
                merged.emplace_back(var, exp);
        }
        t.exps = std::move(merged);
    }
    std::map<std::vector<std::pair<VarId, std::uint32_t>>, BigInt> acc;
    for (Term& t : raw) acc[std::move(t.exps)] += t.coeff;

    Polynomial out(std::move(vars));
    for (auto& [exps, coeff] : acc) {
        if (coeff == 0) continue;
        out.terms_.push_back(Term{std::move(coeff), exps});
    }
    std::sort(out.terms_.begin(), out.terms_.end(), canonical_term_less);
    return out;
}

std::vector<VarId> Polynomial::occurrence_order() const {
    if (terms_.empty())
        throw std::invalid_argument("occurrence_order: empty polynomial");
    std::vector<std::uint64_t> count(vars_.size(), 0);
    for (const Term& t : terms_)
        for (const auto& [var, exp] : t.exps) ++count[var];
    std::vector<VarId> order;
    for (VarId v = 0; v < vars_.size(); ++v)
        if (count[v] > 0) order.push_back(v);
    std::stable_sort(order.begin(), order.end(),
                     [&](VarId a, VarId b) { return count[a] > count[b]; });
    return order;
}

OpCount Polynomial::expanded_op_count() const {
    OpCount c;
    for (const Term& t : terms_) {
        std::uint64_t factors = 0;
        for (const auto& [var, exp] : t.exps) factors += exp;
        BigInt mag = abs(t.coeff);
        if (mag != 1) ++factors;
        if (factors > 0) c.muls += factors - 1;
    }
    if (!terms_.empty()) c.adds += terms_.size() - 1;
    return c;
}

Polynomial Polynomial::add(const Polynomial& other) const {
    if (!(vars_ == other.vars_))
        throw std::invalid_argument("add: variable tables differ");
    std::vector<Term> raw = terms_;
    raw.insert(raw.end(), other.terms_.begin(), other.terms_.end());
    return collect(vars_, std::move(raw));
}

Polynomial Polynomial::mul(const Polynomial& other) const {
    if (!(vars_ == other.vars_))
        throw std::invalid_argument("mul: variable tables differ");
    std::vector<Term> raw;
    raw.reserve(terms_.size() * other.terms_.size());
    for (const Term& a : terms_) {
        for (const Term& b : other.terms_) {
            Term t;
            t.coeff = a.coeff * b.coeff;
            t.exps = a.exps;
            t.exps.insert(t.exps.end(), b.exps.begin(), b.exps.end());
            raw.push_back(std::move(t));
        }
    }
    return collect(vars_, std::move(raw));
}

Polynomial Polynomial::negate() const {
    Polynomial out(vars_);
    out.terms_ = terms_;
    for (Term& t : out.terms_) t.coeff = -t.coeff;
    return out;
}

BigInt Polynomial::evaluate(const std::vector<BigInt>& point) const {
    if (point.size() < vars_.size())
        throw std::invalid_argument("evaluate: point too short");
    BigInt sum = 0;
    BigInt prod, pw;
    for (const Term& t : terms_) {
        prod = t.coeff;
        for (const auto& [var, exp] : t.exps) {
            mpz_pow_ui(pw.get_mpz_t(), point[var].get_mpz_t(), exp);
            prod *= pw;
        }
        sum += prod;
    }
    return sum;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    if (a.vars_ == b.vars_) return a.terms_ == b.terms_;
    // Tables differ: remap b's variable ids through names.  A name missing
    // on either side can still compare equal overall as long as it never
    // appears in a term.
    auto remap = [&](const Polynomial& src, const Polynomial& dst,
                     const Term& t, Term& out) -> bool {
        out.coeff = t.coeff;
        out.exps.clear();
        for (const auto& [var, exp] : t.exps) {
            const std::string& nm = src.vars_.name(var);
            if (!dst.vars_.contains(nm)) return false;
            out.exps.emplace_back(dst.vars_.id_of(nm), exp);
        }
        std::sort(out.exps.begin(), out.exps.end());
        return true;
    };
    std::vector<Term> mapped;
    mapped.reserve(b.terms_.size());
    for (const Term& t : b.terms_) {
        Term m;
        if (!remap(b, a, t, m)) return false;
        mapped.push_back(std::move(m));
    }
    std::sort(mapped.begin(), mapped.end(), canonical_term_less);
    return a.terms_ == mapped;
}

namespace {

void print_term(std::ostringstream& os, const VarTable& vars, const Term& t,
                bool first) {
    BigInt mag = abs(t.coeff);
    const bool neg = t.coeff < 0;
    if (first) {
        if (neg) os << "-";
    } else {
        os << (neg ? " - " : " + ");
    }
    bool need_star = false;
    if (mag != 1 || t.exps.empty()) {
        os << mag.get_str();
        need_star = true;
    }
    // Factors of a term print in name order, independent of interning order.
    std::vector<std::pair<std::string, std::uint32_t>> factors;
    factors.reserve(t.exps.size());
    for (const auto& [var, exp] : t.exps) factors.emplace_back(vars.name(var), exp);
    std::sort(factors.begin(), factors.end());
    for (const auto& [name, exp] : factors) {
        if (need_star) os << "*";
        os << name;
        if (exp > 1) os << "^" << exp;
        need_star = true;
    }
}

} // namespace

std::string print(const Polynomial& p) {
    if (p.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const Term& t : p.terms()) {
        print_term(os, p.vars(), t, first);
        first = false;
    }
    return os.str();
}

} // namespace polyopt
