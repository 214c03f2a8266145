#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "polyopt/parser.hpp"
#include "polyopt/resultant.hpp"
#include "polyopt/rng.hpp"

#include "oracles.hpp"

using namespace polyopt;

namespace {

std::uint64_t degree_in_range(const Term& t, VarId lo, VarId hi) {
    std::uint64_t d = 0;
    for (const auto& [var, exp] : t.exps)
        if (var >= lo && var <= hi) d += exp;
    return d;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in{p};
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("polyopt_res_" + std::to_string(std::rand()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

} // namespace

TEST_CASE("sylvester matrix layout for degrees 2 and 1") {
    // Row 0: a2 a1 a0; rows 1-2 carry b1 b0 shifted.  Ids: a_k = k,
    // b_k = m+1+k = 3+k.
    auto mat = sylvester_matrix(2, 1);
    REQUIRE(mat.size() == 3);
    CHECK(mat[0] == std::vector<int>{2, 1, 0});
    CHECK(mat[1] == std::vector<int>{4, 3, -1});
    CHECK(mat[2] == std::vector<int>{-1, 4, 3});
}

TEST_CASE("symbolic determinants of small explicit matrices") {
    VarTable vars;
    vars.intern("u");
    vars.intern("v");
    vars.intern("w");

    SUBCASE("one by one") {
        Polynomial d = symbolic_determinant({{0}}, vars);
        CHECK(d == parse_polynomial("u"));
    }
    SUBCASE("diagonal is the product") {
        Polynomial d = symbolic_determinant({{0, -1}, {-1, 1}}, vars);
        CHECK(d == parse_polynomial("u*v"));
    }
    SUBCASE("antidiagonal flips the sign") {
        Polynomial d = symbolic_determinant({{-1, 0}, {1, -1}}, vars);
        CHECK(d == parse_polynomial("-u*v"));
    }
    SUBCASE("repeated variable lands on the diagonal squared") {
        Polynomial d = symbolic_determinant({{0, -1}, {-1, 0}}, vars);
        CHECK(d == parse_polynomial("u^2"));
    }
    SUBCASE("a zero row kills the determinant") {
        Polynomial d = symbolic_determinant({{-1, -1}, {0, 1}}, vars);
        CHECK(d.empty());
    }
    SUBCASE("three-cycle permutation keeps sign plus") {
        // Columns 1,2,0: an even permutation of the identity.
        Polynomial d = symbolic_determinant(
            {{-1, 0, -1}, {-1, -1, 1}, {2, -1, -1}}, vars);
        CHECK(d == parse_polynomial("u*v*w"));
    }
    SUBCASE("full two by two expands to the textbook formula") {
        VarTable four;
        four.intern("p");
        four.intern("q");
        four.intern("r");
        four.intern("s");
        Polynomial d = symbolic_determinant({{0, 1}, {2, 3}}, four);
        CHECK(d == parse_polynomial("p*s - q*r"));
    }
    SUBCASE("bad shapes and entries are rejected") {
        CHECK_THROWS_AS(symbolic_determinant({}, vars), std::invalid_argument);
        CHECK_THROWS_AS(symbolic_determinant({{0, 1}}, vars),
                        std::invalid_argument);
        CHECK_THROWS_AS(symbolic_determinant({{3}}, vars),
                        std::invalid_argument);
        CHECK_THROWS_AS(symbolic_determinant({{-2}}, vars),
                        std::invalid_argument);
    }
}

TEST_CASE("res(1,1) is the two by two determinant") {
    CHECK(gen_res(1, 1) == parse_polynomial("a1*b0 - a0*b1"));
}

TEST_CASE("res(2,1) matches the classic discriminant-style formula") {
    CHECK(gen_res(2, 1) ==
          parse_polynomial("a2*b0^2 - a1*b0*b1 + a0*b1^2"));
}

TEST_CASE("degree bounds are enforced") {
    CHECK_THROWS_AS(gen_res(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(gen_res(8, 6), std::invalid_argument);
    CHECK_THROWS_AS(gen_res(14, 0), std::invalid_argument);
    CHECK_NOTHROW(gen_res(1, 0));
}

TEST_CASE("a constant second polynomial gives a pure power") {
    // res(f, b0) = b0^m.
    CHECK(gen_res(3, 0) == parse_polynomial("b0^3"));
}

TEST_CASE("every term is homogeneous of the expected degrees") {
    for (auto [m, n] : {std::pair<std::uint32_t, std::uint32_t>{2, 2},
                        {3, 2},
                        {4, 2},
                        {4, 3}}) {
        Polynomial p = gen_res(m, n);
        CHECK(p.vars().size() == m + n + 2);
        // Every interned coefficient variable occurs somewhere.
        CHECK(p.occurrence_order().size() == m + n + 2);
        for (const Term& t : p.terms()) {
            CHECK(t.total_degree() == m + n);
            CHECK(degree_in_range(t, 0, static_cast<VarId>(m)) == n);
            CHECK(degree_in_range(t, static_cast<VarId>(m + 1),
                                  static_cast<VarId>(m + 1 + n)) == m);
        }
    }
}

TEST_CASE("benchmark instances intern the documented variable counts") {
    CHECK(gen_res(7, 4).vars().size() == 13);
    CHECK(gen_res(7, 5).vars().size() == 14);
}

TEST_CASE("random specializations agree with the euclidean oracle") {
    SplitMix64 rng(20240);
    for (int trial = 0; trial < 10; ++trial) {
        const std::uint32_t m = 1 + static_cast<std::uint32_t>(rng.below(4));
        const std::uint32_t n =
            1 + static_cast<std::uint32_t>(rng.below(std::min(m, 3u)));
        Polynomial res = gen_res(m, n);

        auto draw = [&](std::uint32_t deg) {
            std::vector<mpq_class> c(deg + 1);
            for (auto& x : c)
                x = static_cast<long>(rng.below(19)) - 9;
            while (c.back() == 0)
                c.back() = static_cast<long>(rng.below(19)) - 9;
            return c;
        };
        const auto f = draw(m);
        const auto g = draw(n);

        std::vector<BigInt> point(m + n + 2);
        for (std::uint32_t k = 0; k <= m; ++k)
            point[k] = BigInt(f[k].get_num());
        for (std::uint32_t k = 0; k <= n; ++k)
            point[m + 1 + k] = BigInt(g[k].get_num());

        CHECK(res.evaluate(point) == oracles::numeric_resultant(f, g));
    }
}

TEST_CASE("cache round trip reproduces the generator bit for bit") {
    TempDir tmp;
    Polynomial fresh = gen_res(3, 2);
    Polynomial first = gen_res_cached(3, 2, tmp.path.string());
    const auto file = tmp.path / "res_3_2.txt";
    REQUIRE(std::filesystem::exists(file));
    const std::string bytes = slurp(file);

    Polynomial second = gen_res_cached(3, 2, tmp.path.string());
    CHECK(first == fresh);
    CHECK(second == fresh);
    // Identical interning, not merely name-equivalence.
    CHECK(second.vars() == fresh.vars());
    CHECK(second.terms() == fresh.terms());
    CHECK(slurp(file) == bytes);

    SUBCASE("corrupt cache entries are regenerated") {
        std::ofstream(file, std::ios::trunc) << "this is ) not a polynomial";
        Polynomial repaired = gen_res_cached(3, 2, tmp.path.string());
        CHECK(repaired == fresh);
        CHECK(slurp(file) == bytes);
    }
    SUBCASE("foreign variables in the cache are rejected and regenerated") {
        std::ofstream(file, std::ios::trunc) << "c0*c1 + c2";
        Polynomial repaired = gen_res_cached(3, 2, tmp.path.string());
        CHECK(repaired == fresh);
        CHECK(slurp(file) == bytes);
    }
}
