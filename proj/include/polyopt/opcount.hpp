#pragma once

#include <cstdint>
#include <ostream>

namespace polyopt {

// Arithmetic cost of an expression.  Subtraction counts as an addition;
// a sign on its own is free.
struct OpCount {
    std::uint64_t muls = 0;
    std::uint64_t adds = 0;

    std::uint64_t total() const { return muls + adds; }

    friend bool operator==(const OpCount& a, const OpCount& b) {
        return a.muls == b.muls && a.adds == b.adds;
    }

    friend std::ostream& operator<<(std::ostream& os, const OpCount& c) {
        return os << c.muls << "m+" << c.adds << "a";
    }
};

} // namespace polyopt
