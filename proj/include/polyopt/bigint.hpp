#pragma once

#include <gmpxx.h>

namespace polyopt {

// Exact integer arithmetic throughout; coefficients and test oracles must
// never overflow or round.
using BigInt = mpz_class;

} // namespace polyopt
