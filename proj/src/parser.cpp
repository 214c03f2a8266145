#include "polyopt/parser.hpp"

#include <cctype>
#include <utility>
#include <vector>

namespace polyopt {

namespace {

// Recursive-descent parser producing fully expanded term lists; expansion
// before collection keeps intermediate sizes proportional to the expanded
// input, which is fine at the scale these tools target.
class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Polynomial run() {
        skip_ws();
        if (at_end()) fail("empty input");
        std::vector<Term> raw = parse_expr();
        skip_ws();
        if (!at_end()) fail("unexpected trailing input");
        return Polynomial::collect(std::move(vars_), std::move(raw));
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    VarTable vars_;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, line_, col_);
    }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek())))
            advance();
    }

    bool eat(char c) {
        skip_ws();
        if (!at_end() && peek() == c) {
            advance();
            return true;
        }
        return false;
    }

    BigInt parse_int() {
        skip_ws();
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
            fail("expected integer");
        std::string digits;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            digits.push_back(peek());
            advance();
        }
        return BigInt(digits);
    }

    std::string parse_ident() {
        std::string name;
        name.push_back(peek());
        advance();
        while (!at_end()) {
            const char c = peek();
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
                name.push_back(c);
                advance();
            } else {
                break;
            }
        }
        return name;
    }

    // expr := term (('+' | '-') term)*
    std::vector<Term> parse_expr() {
        std::vector<Term> acc = parse_term();
        for (;;) {
            skip_ws();
            if (at_end()) break;
            const char c = peek();
            if (c != '+' && c != '-') break;
            advance();
            std::vector<Term> rhs = parse_term();
            if (c == '-')
                for (Term& t : rhs) t.coeff = -t.coeff;
            acc.insert(acc.end(), std::make_move_iterator(rhs.begin()),
                       std::make_move_iterator(rhs.end()));
        }
        return acc;
    }

    // term := factor ('*' factor)*
    std::vector<Term> parse_term() {
        std::vector<Term> acc = parse_factor();
        while (eat('*')) {
            std::vector<Term> rhs = parse_factor();
            std::vector<Term> prod;
            prod.reserve(acc.size() * rhs.size());
            for (const Term& a : acc) {
                for (const Term& b : rhs) {
                    Term t;
                    t.coeff = a.coeff * b.coeff;
                    t.exps = a.exps;
                    t.exps.insert(t.exps.end(), b.exps.begin(), b.exps.end());
                    prod.push_back(std::move(t));
                }
            }
            acc = std::move(prod);
        }
        return acc;
    }

    // factor := INT | ident ('^' INT)? | '(' expr ')' | '-' factor
    std::vector<Term> parse_factor() {
        skip_ws();
        if (at_end()) fail("expected factor");
        const char c = peek();
        if (c == '-') {
            advance();
            std::vector<Term> inner = parse_factor();
            for (Term& t : inner) t.coeff = -t.coeff;
            return inner;
        }
        if (c == '(') {
            advance();
            std::vector<Term> inner = parse_expr();
            skip_ws();
            if (at_end() || peek() != ')') fail("expected ')'");
            advance();
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Term t;
            t.coeff = parse_int();
            return {std::move(t)};
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::string name = parse_ident();
            std::uint32_t exp = 1;
            if (eat('^')) {
                skip_ws();
                const int eline = line_, ecol = col_;
                BigInt e = parse_int();
                if (e <= 0)
                    throw ParseError("exponent must be positive", eline, ecol);
                if (e > 1000000)
                    throw ParseError("exponent too large", eline, ecol);
                exp = static_cast<std::uint32_t>(e.get_ui());
            }
            Term t;
            t.coeff = 1;
            t.exps.emplace_back(vars_.intern(name), exp);
            return {std::move(t)};
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

} // namespace

Polynomial parse_polynomial(std::string_view text) {
    return Parser(text).run();
}

} // namespace polyopt
