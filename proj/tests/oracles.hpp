#pragma once

// Independent reference implementations used to check the library: these
// deliberately avoid the production code paths (no HornerTree/ExprDag
// reuse) so agreement is meaningful.

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "polyopt/bigint.hpp"
#include "polyopt/polynomial.hpp"
#include "polyopt/rng.hpp"

namespace oracles {

// Random sparse polynomial: up to max_terms monomials, per-variable degree
// at most max_deg, coefficients in [-9, 9] \ {0}.  Collection may merge
// terms, so the result can be smaller (never empty: retries on zero).
inline polyopt::Polynomial random_poly(polyopt::SplitMix64& rng,
                                       std::uint32_t nvars,
                                       std::uint32_t max_terms,
                                       std::uint32_t max_deg) {
    polyopt::VarTable vars;
    for (std::uint32_t v = 0; v < nvars; ++v)
        vars.intern("v" + std::to_string(v));
    for (;;) {
        std::vector<polyopt::Term> raw;
        const std::uint32_t nterms =
            1 + static_cast<std::uint32_t>(rng.below(max_terms));
        for (std::uint32_t t = 0; t < nterms; ++t) {
            polyopt::Term term;
            const long c = static_cast<long>(rng.below(18)) - 9;
            term.coeff = c >= 0 ? c + 1 : c;
            for (std::uint32_t v = 0; v < nvars; ++v) {
                const std::uint32_t e =
                    static_cast<std::uint32_t>(rng.below(max_deg + 1));
                if (e > 0) term.exps.emplace_back(v, e);
            }
            raw.push_back(std::move(term));
        }
        polyopt::Polynomial p =
            polyopt::Polynomial::collect(vars, std::move(raw));
        if (!p.empty()) return p;
    }
}

inline std::vector<polyopt::BigInt> random_point(polyopt::SplitMix64& rng,
                                                 std::size_t n) {
    std::vector<polyopt::BigInt> pt;
    for (std::size_t i = 0; i < n; ++i)
        pt.push_back(static_cast<long>(rng.below(21)) - 10);
    return pt;
}

// Interpreter for the emitted straight-line form: `name = operand op
// operand;` lines with names, integer literals, and an optional leading
// minus on the final right-hand side.
class CodeInterpreter {
public:
    explicit CodeInterpreter(const std::string& code) {
        std::istringstream in(code);
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty()) lines_.push_back(line);
        }
    }

    polyopt::BigInt run(const std::map<std::string, polyopt::BigInt>& inputs,
                        const std::string& target) {
        env_ = inputs;
        for (const std::string& line : lines_) exec(line);
        auto it = env_.find(target);
        if (it == env_.end())
            throw std::runtime_error("target never assigned: " + target);
        return it->second;
    }

private:
    std::vector<std::string> lines_;
    std::map<std::string, polyopt::BigInt> env_;

    static std::string strip(const std::string& s) {
        std::size_t b = s.find_first_not_of(" \t");
        std::size_t e = s.find_last_not_of(" \t");
        if (b == std::string::npos) return "";
        return s.substr(b, e - b + 1);
    }

    polyopt::BigInt operand(const std::string& tok) const {
        if (tok.empty()) throw std::runtime_error("empty operand");
        if (std::isdigit(static_cast<unsigned char>(tok[0])))
            return polyopt::BigInt(tok);
        auto it = env_.find(tok);
        if (it == env_.end())
            throw std::runtime_error("use before assignment: " + tok);
        return it->second;
    }

    void exec(const std::string& raw) {
        std::string line = strip(raw);
        if (line.empty()) return;
        if (line.back() != ';') throw std::runtime_error("missing ';'");
        line.pop_back();
        const std::size_t eq = line.find(" = ");
        if (eq == std::string::npos) throw std::runtime_error("missing '='");
        const std::string lhs = strip(line.substr(0, eq));
        std::string rhs = strip(line.substr(eq + 3));

        bool negate = false;
        if (!rhs.empty() && rhs[0] == '-') {
            negate = true;
            rhs = strip(rhs.substr(1));
        }
        polyopt::BigInt value;
        std::size_t pos;
        if ((pos = rhs.find(" + ")) != std::string::npos) {
            value = operand(strip(rhs.substr(0, pos))) +
                    operand(strip(rhs.substr(pos + 3)));
        } else if ((pos = rhs.find(" - ")) != std::string::npos) {
            value = operand(strip(rhs.substr(0, pos))) -
                    operand(strip(rhs.substr(pos + 3)));
        } else if ((pos = rhs.find('*')) != std::string::npos) {
            value = operand(strip(rhs.substr(0, pos))) *
                    operand(strip(rhs.substr(pos + 1)));
        } else {
            value = operand(rhs);
        }
        if (negate) value = -value;
        env_[lhs] = value;
    }
};

// Resultant of two univariate polynomials (coefficient vectors, index =
// degree, trailing zeros allowed) by the Euclidean remainder method over
// the rationals, using
//   res(f,g) = (-1)^(deg f * deg g) res(g,f)
//   res(f,c) = c^(deg f)
//   res(f,g) = (-1)^(deg f * deg g) lc(g)^(deg f - deg r) res(g,r),
//     r = f mod g.
inline mpq_class rational_resultant(std::vector<mpq_class> f,
                                    std::vector<mpq_class> g) {
    auto trim = [](std::vector<mpq_class>& p) {
        while (!p.empty() && p.back() == 0) p.pop_back();
    };
    trim(f);
    trim(g);
    if (f.empty() || g.empty()) return 0;
    const long m = static_cast<long>(f.size()) - 1;
    const long n = static_cast<long>(g.size()) - 1;
    mpq_class sign = ((m % 2) && (n % 2)) ? -1 : 1;
    if (m < n) return sign * rational_resultant(std::move(g), std::move(f));
    if (n == 0) {
        mpq_class p = 1;
        for (long i = 0; i < m; ++i) p *= g[0];
        return p;
    }
    std::vector<mpq_class> r = f;
    for (long i = m; i >= n; --i) {
        mpq_class q = r[i] / g[n];
        if (q == 0) continue;
        for (long j = 0; j <= n; ++j) r[i - n + j] -= q * g[j];
    }
    trim(r);
    if (r.empty()) return 0;
    const long d = static_cast<long>(r.size()) - 1;
    mpq_class lead = 1;
    for (long i = 0; i < m - d; ++i) lead *= g[n];
    return sign * lead * rational_resultant(std::move(g), std::move(r));
}

inline polyopt::BigInt numeric_resultant(const std::vector<mpq_class>& f,
                                         const std::vector<mpq_class>& g) {
    mpq_class r = rational_resultant(f, g);
    r.canonicalize();
    if (r.get_den() != 1)
        throw std::runtime_error("resultant oracle: non-integer result");
    return polyopt::BigInt(r.get_num());
}

} // namespace oracles
