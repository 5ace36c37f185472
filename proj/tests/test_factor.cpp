#include <orbit3/factor.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace orbit3;

namespace {

IntPoly product(const std::vector<std::pair<IntPoly, int>>& fs) {
    IntPoly p({1});
    for (auto& [f, m] : fs)
        for (int i = 0; i < m; ++i) p = p * f;
    return p;
}

}  // namespace

TEST_CASE("factor quadratics and known irreducibles") {
    // (x^2 - 2)(x^2 - 3)
    IntPoly p = IntPoly({-2, 0, 1}) * IntPoly({-3, 0, 1});
    auto fs = factor(p);
    REQUIRE(fs.size() == 2);
    CHECK(product(fs) == p);

    // x^4 - 10x^2 + 1 is irreducible (minimal polynomial of sqrt2+sqrt3)
    IntPoly sw({1, 0, -10, 0, 1});
    fs = factor(sw);
    REQUIRE(fs.size() == 1);
    CHECK(fs[0].first == sw);

    // 5x^2 - 6x + 5 irreducible (roots (3 +- 4i)/5)
    fs = factor(IntPoly({5, -6, 5}));
    REQUIRE(fs.size() == 1);

    // content and sign are discarded: -2x^2 + 2 = -2(x-1)(x+1)
    fs = factor(IntPoly({2, 0, -2}));
    REQUIRE(fs.size() == 2);
    CHECK(product(fs) == IntPoly({-1, 0, 1}));
}

TEST_CASE("factor with multiplicities and x factors") {
    // x^3 (x-1)^2 (x^2+1)
    IntPoly p = mul_xk(IntPoly({-1, 1}) * IntPoly({-1, 1}) * IntPoly({1, 0, 1}), 3);
    auto fs = factor(p);
    int total_deg = 0;
    for (auto& [f, m] : fs) total_deg += int(f.degree()) * m;
    CHECK(total_deg == long(p.degree()));
    bool saw_x3 = false, saw_lin2 = false, saw_quad = false;
    for (auto& [f, m] : fs) {
        if (f == IntPoly::x() && m == 3) saw_x3 = true;
        if (f == IntPoly({-1, 1}) && m == 2) saw_lin2 = true;
        if (f == IntPoly({1, 0, 1}) && m == 1) saw_quad = true;
    }
    CHECK(saw_x3);
    CHECK(saw_lin2);
    CHECK(saw_quad);
}

TEST_CASE("factor cyclotomic products") {
    IntPoly p = cyclotomic(12) * cyclotomic(8) * cyclotomic(3);
    auto fs = factor(p);
    REQUIRE(fs.size() == 3);
    CHECK(product(fs) == p);
    for (auto& [f, m] : fs) CHECK(m == 1);
}

TEST_CASE("factor randomized round-trip") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> dc(-8, 8);
    for (int t = 0; t < 25; ++t) {
        // product of two or three random primitive polynomials
        IntPoly p({1});
        int parts = 2 + (t % 2);
        for (int i = 0; i < parts; ++i) {
            std::vector<Int> c;
            int d = 1 + int(rng() % 3);
            for (int j = 0; j <= d; ++j) c.emplace_back(dc(rng));
            IntPoly q{std::move(c)};
            if (q.degree() < 1) q = IntPoly({1, 1});
            p = p * q;
        }
        p = primitive_part(p);
        auto fs = factor(p);
        IntPoly back = product(fs);
        // equality up to content/sign
        CHECK(primitive_part(back) == primitive_part(p));
        for (auto& [f, m] : fs) {
            // every reported factor must divide
            CHECK(try_divexact(p, f).has_value());
        }
    }
}

TEST_CASE("large-height irreducible stays irreducible") {
    // minimal polynomial of 2^(1/5) + 1, computed by shifting x^5 - 2
    IntPoly p = compose_affine(IntPoly({-2, 0, 0, 0, 0, 1}), Rat(-1), Rat(0));
    // p(x) = (x*(-1)+ ... ) careful: compose_affine maps x -> -1 + x*(0-(-1)) = x-1
    auto fs = factor(primitive_part(p));
    REQUIRE(fs.size() == 1);
    CHECK(fs[0].first.degree() == 5);
}
