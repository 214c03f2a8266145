#include "polyopt/resultant.hpp"

#include <bit>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "polyopt/parser.hpp"

namespace polyopt {

std::vector<std::vector<int>> sylvester_matrix(std::uint32_t m,
                                               std::uint32_t n) {
    const std::uint32_t size = m + n;
    if (size < 1 || size > kMaxSylvesterSize)
        throw std::invalid_argument("sylvester_matrix: degree sum out of range");
    std::vector<std::vector<int>> mat(size, std::vector<int>(size, -1));
    // a_k has id k, b_k has id m+1+k.
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t k = 0; k <= m; ++k)
            mat[i][i + k] = static_cast<int>(m - k);
    for (std::uint32_t i = 0; i < m; ++i)
        for (std::uint32_t k = 0; k <= n; ++k)
            mat[n + i][i + k] = static_cast<int>(m + 1 + (n - k));
    return mat;
}

namespace {

// Exponent vectors are dense during expansion; minors stay small enough
// that an ordered map keeps accumulation simple and deterministic.
using Mono = std::vector<std::uint32_t>;
using Acc = std::map<Mono, BigInt>;

} // namespace

Polynomial symbolic_determinant(const std::vector<std::vector<int>>& mat,
                                VarTable vars) {
    const std::size_t size = mat.size();
    if (size == 0 || size > kMaxSylvesterSize)
        throw std::invalid_argument("symbolic_determinant: bad matrix size");
    for (const auto& row : mat) {
        if (row.size() != size)
            throw std::invalid_argument("symbolic_determinant: not square");
        for (int e : row)
            if (e < -1 || e >= static_cast<int>(vars.size()))
                throw std::invalid_argument(
                    "symbolic_determinant: entry outside the table");
    }

    // minors[mask]: determinant of the submatrix formed by the last
    // popcount(mask) rows and the columns in mask.  Level k is built from
    // level k-1 by expanding along row size-k, so only two levels live at
    // once.
    const std::uint32_t full = (1u << size) - 1;
    std::vector<Acc> prev(full + 1), cur(full + 1);
    for (std::uint32_t k = 1; k <= size; ++k) {
        const std::size_t row = size - k;
        for (std::uint32_t mask = 0; mask <= full; ++mask) {
            if (static_cast<std::uint32_t>(std::popcount(mask)) != k) continue;
            Acc& out = cur[mask];
            out.clear();
            std::uint32_t pos = 0;
            for (std::uint32_t j = 0; j < size; ++j) {
                if (!(mask & (1u << j))) continue;
                const bool negate = pos & 1;
                ++pos;
                const int entry = mat[row][j];
                if (entry < 0) continue;
                if (k == 1) {
                    Mono mono(vars.size(), 0);
                    ++mono[entry];
                    out[std::move(mono)] += negate ? BigInt(-1) : BigInt(1);
                    continue;
                }
                for (const auto& [mono, coeff] : prev[mask ^ (1u << j)]) {
                    Mono shifted = mono;
                    ++shifted[entry];
                    BigInt& slot = out[std::move(shifted)];
                    if (negate) slot -= coeff;
                    else slot += coeff;
                }
            }
            for (auto it = out.begin(); it != out.end();)
                it = it->second == 0 ? out.erase(it) : std::next(it);
        }
        std::swap(prev, cur);
    }

    std::vector<Term> terms;
    terms.reserve(prev[full].size());
    for (const auto& [mono, coeff] : prev[full]) {
        Term t;
        t.coeff = coeff;
        for (std::uint32_t v = 0; v < mono.size(); ++v)
            if (mono[v] > 0) t.exps.emplace_back(v, mono[v]);
        terms.push_back(std::move(t));
    }
    return Polynomial::collect(std::move(vars), std::move(terms));
}

namespace {

VarTable resultant_vars(std::uint32_t m, std::uint32_t n) {
    VarTable vars;
    for (std::uint32_t k = 0; k <= m; ++k) vars.intern("a" + std::to_string(k));
    for (std::uint32_t k = 0; k <= n; ++k) vars.intern("b" + std::to_string(k));
    return vars;
}

} // namespace

Polynomial gen_res(std::uint32_t m, std::uint32_t n) {
    return symbolic_determinant(sylvester_matrix(m, n), resultant_vars(m, n));
}

Polynomial gen_res_cached(std::uint32_t m, std::uint32_t n,
                          const std::string& cache_dir) {
    const std::filesystem::path path =
        std::filesystem::path(cache_dir) /
        ("res_" + std::to_string(m) + "_" + std::to_string(n) + ".txt");
    if (std::ifstream in{path}) {
        std::ostringstream text;
        text << in.rdbuf();
        try {
            const Polynomial parsed = parse_polynomial(text.str());
            // Reintern onto the canonical order so cached and fresh results
            // are indistinguishable downstream.
            VarTable canon = resultant_vars(m, n);
            std::vector<Term> terms = parsed.terms();
            for (Term& t : terms)
                for (auto& [var, exp] : t.exps)
                    var = canon.id_of(parsed.vars().name(var));
            return Polynomial::collect(std::move(canon), std::move(terms));
        } catch (const std::exception&) {
            // Unusable cache entry: fall through and regenerate.
        }
    }
    Polynomial p = gen_res(m, n);
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out{path, std::ios::trunc};
    out << print(p) << "\n";
    return p;
}

} // namespace polyopt
