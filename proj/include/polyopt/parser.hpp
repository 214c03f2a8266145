#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "polyopt/polynomial.hpp"

namespace polyopt {

struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(const std::string& msg, int line_, int column_)
        : std::runtime_error(msg), line(line_), column(column_) {}
};

// Parses the expression language accepted by the tools:
//
//   expr    := term (('+' | '-') term)*
//   term    := factor ('*' factor)*
//   factor  := INT | ident ('^' INT)? | '(' expr ')' | '-' factor
//   ident   := [A-Za-z_][A-Za-z0-9_]*
//
// '^' exponents must be positive integers; integers are unbounded.
// Variable ids are assigned by first appearance.  The result is fully
// expanded and collected.  Throws ParseError with 1-based line/column.
Polynomial parse_polynomial(std::string_view text);

} // namespace polyopt
