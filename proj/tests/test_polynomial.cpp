#include "doctest.h"

#include <stdexcept>

#include "polyopt/parser.hpp"
#include "polyopt/polynomial.hpp"
#include "polyopt/rng.hpp"

#include "oracles.hpp"

using namespace polyopt;

namespace {

std::vector<std::string> order_names(const Polynomial& p) {
    std::vector<std::string> names;
    for (VarId v : p.occurrence_order()) names.push_back(p.vars().name(v));
    return names;
}

} // namespace

TEST_CASE("parse/print round trip is canonical") {
    Polynomial p = parse_polynomial("x^2*z + x^3*y + x^3*y*z");
    CHECK(p.term_count() == 3);
    CHECK(print(p) == "x^3*y*z + x^3*y + x^2*z");
    CHECK(parse_polynomial(print(p)) == p);
}

TEST_CASE("like terms merge and zeros vanish") {
    CHECK(print(parse_polynomial("x*y + y*x")) == "2*x*y");
    CHECK(print(parse_polynomial("x - x")) == "0");
    CHECK(print(parse_polynomial("0")) == "0");
    CHECK(parse_polynomial("x - x").empty());
    CHECK(print(parse_polynomial("2*x + 3*x - 5*x + y")) == "y");
}

TEST_CASE("parser handles nesting, unary minus, and big coefficients") {
    CHECK(parse_polynomial("(x + y)*(x - y)") == parse_polynomial("x^2 - y^2"));
    CHECK(print(parse_polynomial("-x*-y")) == "x*y");
    CHECK(print(parse_polynomial("-(x + 1)")) == "-x - 1");
    const std::string big = "123456789012345678901234567890";
    CHECK(print(parse_polynomial(big + "*x")) == big + "*x");
    CHECK(print(parse_polynomial("x*x*x")) == "x^3");
}

TEST_CASE("parse errors carry position") {
    CHECK_THROWS_AS(parse_polynomial(""), ParseError);
    CHECK_THROWS_AS(parse_polynomial("x +"), ParseError);
    CHECK_THROWS_AS(parse_polynomial("(x"), ParseError);
    CHECK_THROWS_AS(parse_polynomial("x^0"), ParseError);
    CHECK_THROWS_AS(parse_polynomial("x^-2"), ParseError);
    CHECK_THROWS_AS(parse_polynomial("x $ y"), ParseError);
    try {
        parse_polynomial("x +\n y + )");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.column == 6);
    }
}

TEST_CASE("occurrence order sorts by term presence, ties by id") {
    // x appears in 3 terms, z and y in 2 each; z was interned before y.
    Polynomial p = parse_polynomial("x^2*z + x^3*y + x^3*y*z");
    CHECK(order_names(p) == std::vector<std::string>{"x", "z", "y"});

    Polynomial q = parse_polynomial("x^50*y + x^40 + y + y*z");
    CHECK(order_names(q) == std::vector<std::string>{"y", "x", "z"});

    CHECK_THROWS_AS(parse_polynomial("x - x").occurrence_order(),
                    std::invalid_argument);
}

TEST_CASE("expanded operation count convention") {
    // Powers as repeated multiplication, coefficient of magnitude != 1
    // costs one multiplication, signs are free.
    CHECK(parse_polynomial("x^2*z + x^3*y + x^3*y*z").expanded_op_count() ==
          OpCount{9, 2});
    CHECK(parse_polynomial("5").expanded_op_count() == OpCount{0, 0});
    CHECK(parse_polynomial("x").expanded_op_count() == OpCount{0, 0});
    CHECK(parse_polynomial("-x").expanded_op_count() == OpCount{0, 0});
    CHECK(parse_polynomial("2*x").expanded_op_count() == OpCount{1, 0});
    CHECK(parse_polynomial("-3*x^2").expanded_op_count() == OpCount{2, 0});
    CHECK(parse_polynomial("x + y").expanded_op_count() == OpCount{0, 1});
    CHECK(parse_polynomial("x^50*y + x^40 + y + y*z").expanded_op_count() ==
          OpCount{50 + 39 + 0 + 1, 3});
}

TEST_CASE("exact evaluation") {
    Polynomial p = parse_polynomial("x^2*z + x^3*y + x^3*y*z");
    // ids by first appearance: x, z, y
    CHECK(p.evaluate({2, 3, 5}) == 4 * 3 + 8 * 5 + 8 * 5 * 3);
    CHECK(parse_polynomial("x^10").evaluate({BigInt(3)}) == 59049);
    CHECK(parse_polynomial("0").evaluate({}) == 0);
}

TEST_CASE("ring helpers agree with parsing") {
    Polynomial x = parse_polynomial("x + y");
    Polynomial y = parse_polynomial("x - y");
    CHECK(x.mul(y) == parse_polynomial("x^2 - y^2"));
    CHECK(x.add(y) == parse_polynomial("2*x"));
    CHECK(x.negate() == parse_polynomial("-x - y"));
}

TEST_CASE("equality is name-based across interning orders") {
    CHECK(parse_polynomial("a + 2*b") == parse_polynomial("2*b + a"));
    CHECK(parse_polynomial("a + b") != parse_polynomial("a + c"));
    CHECK(parse_polynomial("a + b") != parse_polynomial("a - b"));
}

TEST_CASE("terms stay strictly ordered on random inputs") {
    SplitMix64 rng(41);
    for (int i = 0; i < 50; ++i) {
        Polynomial p = oracles::random_poly(rng, 4, 8, 4);
        const auto& ts = p.terms();
        for (std::size_t j = 0; j + 1 < ts.size(); ++j) {
            CHECK(canonical_term_less(ts[j], ts[j + 1]));
            CHECK(!canonical_term_less(ts[j + 1], ts[j]));
        }
        for (const Term& t : ts) CHECK(t.coeff != 0);
        CHECK(parse_polynomial(print(p)) == p);
    }
}
