#include <orbit3/rootiso.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace orbit3;

TEST_CASE("winding number of simple polynomials") {
    // x^2 + 1: roots +-i
    IntPoly p({1, 0, 1});
    CHECK(*winding_number(p, Rect{Rat(-2), Rat(2), Rat(-2), Rat(2)}) == 2);
    CHECK(*winding_number(p, Rect{Rat(-2), Rat(2), Rat(1, 2), Rat(2)}) == 1);
    CHECK(*winding_number(p, Rect{Rat(-2), Rat(-1), Rat(-2), Rat(2)}) == 0);
    // 25x^2 - 30x + 25: roots (3 +- 4i)/5
    IntPoly q({25, -30, 25});
    CHECK(*winding_number(q, Rect{Rat(0), Rat(1), Rat(0), Rat(1)}) == 1);
    CHECK(*winding_number(q, Rect{Rat(0), Rat(1), Rat(-1), Rat(0)}) == 1);
    // boundary root: x^2+1 with the corner box touching i
    auto w = winding_number(p, Rect{Rat(0), Rat(1), Rat(0), Rat(1)});
    CHECK(!w.has_value());
}

TEST_CASE("upper-half isolation for conjugate pairs") {
    // (x^2+1)(x^2-2x+2)(x-3): upper roots i and 1+i
    IntPoly p = IntPoly({1, 0, 1}) * IntPoly({2, -2, 1}) * IntPoly({-3, 1});
    auto rects = isolate_upper_half_roots(p);
    REQUIRE(rects.size() == 2);
    for (auto& r : rects) {
        refine_rect_to(p, r, Rat(1, 1000));
        CHECK(r.radius_ub() < Rat(1, 1000));
    }
    std::sort(rects.begin(), rects.end(),
              [](const Rect& a, const Rect& b) { return a.xmid() < b.xmid(); });
    CHECK(rects[0].contains(Rat(0), Rat(1)));
    CHECK(rects[1].contains(Rat(1), Rat(1)));
}

TEST_CASE("deep refinement stays certified") {
    IntPoly p({25, -30, 25});  // (3 +- 4i)/5
    auto rects = isolate_upper_half_roots(p);
    REQUIRE(rects.size() == 1);
    Rect r = rects[0];
    refine_rect_to(p, r, pow2(-200));
    CHECK(r.radius_ub() < pow2(-200));
    CHECK(r.contains(Rat(3, 5), Rat(4, 5)));
}

TEST_CASE("real Newton refinement") {
    IntPoly p({-2, 0, 1});
    auto roots = isolate_real_roots(p);
    REQUIRE(roots.size() == 2);
    RealRootIv r = roots[1];
    refine_real_to(p, r, pow2(-300));
    CHECK((r.exact || r.width() < pow2(-300)));
    // sqrt(2) = 1.41421356...; check enclosure
    CHECK(r.lo < Rat(1414214, 1000000));
    CHECK(r.hi > Rat(1414213, 1000000));
}

TEST_CASE("random polynomials: counts match degree") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> dc(-10, 10);
    for (int t = 0; t < 25; ++t) {
        std::vector<Int> c;
        int d = 2 + int(rng() % 5);
        for (int i = 0; i <= d; ++i) c.emplace_back(dc(rng));
        IntPoly p{std::move(c)};
        if (p.degree() < 2) continue;
        IntPoly sf = squarefree_part(p);
        long nreal = long(isolate_real_roots(sf).size());
        auto ups = isolate_upper_half_roots(sf);
        CHECK(nreal + 2 * long(ups.size()) == sf.degree());
    }
}
