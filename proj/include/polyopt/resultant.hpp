#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polyopt/polynomial.hpp"

namespace polyopt {

// res(m,n): the resultant of two generic dense univariate polynomials
//   f = a_m x^m + ... + a_0,   g = b_n x^n + ... + b_0
// with symbolic coefficients, i.e. the Sylvester determinant with x
// eliminated.  The result is a polynomial in m+n+2 variables, interned in
// the fixed order a0..am, b0..bn; every term is homogeneous of total degree
// m+n, of degree n in the a's and degree m in the b's.

// Combined degree cap: an (m+n) x (m+n) determinant beyond this is out of
// scope for the benchmark family.
inline constexpr std::uint32_t kMaxSylvesterSize = 13;

// The (m+n) x (m+n) Sylvester matrix as variable ids under the interning
// order above (-1 marks a structural zero).  Row i < n carries a_m..a_0
// starting at column i; row n+i carries b_n..b_0 starting at column i.
std::vector<std::vector<int>> sylvester_matrix(std::uint32_t m,
                                               std::uint32_t n);

// Determinant of a square matrix whose entries are single variables or
// zero.  Expands by minors bottom-up, memoized on column subsets, so a
// shared minor is computed once.  Matrix sides above kMaxSylvesterSize or
// entries outside `vars` are rejected.
Polynomial symbolic_determinant(const std::vector<std::vector<int>>& mat,
                                VarTable vars);

// Builds res(m,n).  Requires 1 <= m+n <= kMaxSylvesterSize.
Polynomial gen_res(std::uint32_t m, std::uint32_t n);

// Like gen_res, but backed by res_<m>_<n>.txt under cache_dir: a readable
// cached copy is parsed and remapped onto the canonical variable order (so
// the result is bit-identical to a fresh generation), anything unusable is
// regenerated and rewritten.
Polynomial gen_res_cached(std::uint32_t m, std::uint32_t n,
                          const std::string& cache_dir);

} // namespace polyopt
