#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "trireg/abelian.hpp"
#include "trireg/graph.hpp"
#include "trireg/spectrum.hpp"

using namespace trireg;

namespace {

SymmetricSet cyclicSet(int n, std::vector<int> members) {
    AbelianGroup g({n});
    std::vector<GroupElement> ms;
    for (int m : members) ms.push_back({m});
    return SymmetricSet(g, ms);
}

// Direct character-sum oracle evaluated without the phase table.
double directCoefficient(const SymmetricSet& s, const GroupElement& t) {
    const auto& mod = s.group().moduli();
    double re = 0;
    for (const auto& x : s.members()) {
        double angle = 0;
        for (std::size_t j = 0; j < mod.size(); ++j)
            angle += 2.0 * M_PI * static_cast<double>(t[j]) * x[j] / mod[j];
        re += std::cos(angle);
    }
    return re;
}

}  // namespace

TEST_CASE("additive triples") {
    CHECK(additiveTriples(cyclicSet(5, {1, 2, 3, 4})).tripleCount == 12);
    CHECK(additiveTriples(cyclicSet(7, {1, 6})).tripleCount == 0);
    CHECK(additiveTriples(cyclicSet(9, {3, 6})).tripleCount == 2);
    auto tc = additiveTriples(cyclicSet(5, {1, 2, 3, 4}));
    CHECK(tc.epsilon == Fraction(4, 16));
}

TEST_CASE("cayley graphs") {
    SUBCASE("Z_5 full set gives K_5") {
        auto g = cayleyGraph(cyclicSet(5, {1, 2, 3, 4}));
        auto check = checkTriangleRegular(g);
        REQUIRE(check.uniform);
        CHECK(check.r == std::vector<long long>{4});
        CHECK(check.c == std::vector<long long>{6});
    }
    SUBCASE("Z_6 minus matching shape") {
        auto s = cyclicSet(6, {1, 2, 4, 5});
        auto check = checkTriangleRegular(cayleyGraph(s));
        REQUIRE(check.uniform);
        CHECK(check.r == std::vector<long long>{4});
        CHECK(check.c == std::vector<long long>{4});
        CHECK(additiveTriples(s).tripleCount / 2 == 4);
    }
    SUBCASE("Z_7 {1,6} gives C_7") {
        auto check = checkTriangleRegular(cayleyGraph(cyclicSet(7, {1, 6})));
        REQUIRE(check.uniform);
        CHECK(check.r == std::vector<long long>{2});
        CHECK(check.c == std::vector<long long>{0});
    }
}

TEST_CASE("cayley consistency on random symmetric sets") {
    std::mt19937 rng(123);
    for (int iter = 0; iter < 60; ++iter) {
        std::uint64_t order = 3 + rng() % 28;
        auto groups = abelianGroupsOfOrder(order);
        const auto& g = groups[rng() % groups.size()];
        // random symmetric subset
        std::vector<GroupElement> members;
        for (std::uint64_t i = 1; i < order; ++i) {
            GroupElement x = g.element(i);
            GroupElement nx = g.neg(x);
            if (g.index(nx) < i) continue;
            if (rng() % 2) {
                members.push_back(x);
                if (nx != x) members.push_back(nx);
            }
        }
        SymmetricSet s(g, members);
        auto tc = additiveTriples(s);
        CHECK(tc.tripleCount % 2 == 0);
        auto check = checkTriangleRegular(cayleyGraph(s));
        REQUIRE(check.uniform);
        CHECK(check.r == std::vector<long long>{s.size()});
        CHECK(check.c == std::vector<long long>{tc.tripleCount / 2});
    }
}

TEST_CASE("dft indicator") {
    SUBCASE("Z_4 singleton {2}") {
        auto s = cyclicSet(4, {2});
        auto coeffs = dftIndicator(s);
        CHECK(coeffs[0] == doctest::Approx(1));
        CHECK(coeffs[1] == doctest::Approx(-1));
        CHECK(coeffs[2] == doctest::Approx(1));
        CHECK(coeffs[3] == doctest::Approx(-1));
    }
    SUBCASE("Z_4 pair {1,3}") {
        auto coeffs = dftIndicator(cyclicSet(4, {1, 3}));
        CHECK(coeffs[0] == doctest::Approx(2));
        CHECK(coeffs[1] == doctest::Approx(0));
        CHECK(coeffs[2] == doctest::Approx(-2));
        CHECK(coeffs[3] == doctest::Approx(0));
    }
    SUBCASE("subgroup minus zero matches the direct oracle") {
        AbelianGroup g({2, 8});
        // H = {0} x Z_8 minus zero
        std::vector<GroupElement> ms;
        for (int v = 1; v < 8; ++v) ms.push_back({0, v});
        SymmetricSet s(g, ms);
        auto coeffs = dftIndicator(s);
        for (std::uint64_t ti = 0; ti < g.orderOrThrow(); ++ti) {
            CHECK(coeffs[ti] == doctest::Approx(directCoefficient(s, g.element(ti))).epsilon(1e-9));
        }
        // trivial character gives |S|
        CHECK(coeffs[0] == doctest::Approx(7));
    }
}

TEST_CASE("symmetric sets have real spectrum and satisfy Plancherel") {
    std::mt19937 rng(5);
    for (int iter = 0; iter < 20; ++iter) {
        std::uint64_t order = 4 + rng() % 17;
        auto groups = abelianGroupsOfOrder(order);
        const auto& g = groups[rng() % groups.size()];
        std::vector<GroupElement> members;
        for (std::uint64_t i = 1; i < order; ++i) {
            GroupElement x = g.element(i);
            if (g.index(g.neg(x)) < i) continue;
            if (rng() % 2) {
                members.push_back(x);
                if (g.neg(x) != x) members.push_back(g.neg(x));
            }
        }
        SymmetricSet s(g, members);
        CHECK(maxImaginaryPart(s) <= 1e-9);
        auto coeffs = dftIndicator(s);
        double mean = 0;
        for (double v : coeffs) mean += v * v;
        mean /= static_cast<double>(coeffs.size());
        CHECK(mean == doctest::Approx(static_cast<double>(s.size())).epsilon(1e-9));
    }
}

TEST_CASE("max nontrivial coefficient") {
    SUBCASE("Z_8 subgroup {0,2,4,6} minus zero") {
        auto [chi, value] = maxNontrivialCoefficient(cyclicSet(8, {2, 4, 6}));
        CHECK(value == doctest::Approx(3));
        CHECK(chi.index == GroupElement{4});
    }
    SUBCASE("Z_5 full set: all nontrivial coefficients are -1") {
        auto [chi, value] = maxNontrivialCoefficient(cyclicSet(5, {1, 2, 3, 4}));
        CHECK(value == doctest::Approx(-1));
    }
    SUBCASE("Z_4 pair {1,3}") {
        auto [chi, value] = maxNontrivialCoefficient(cyclicSet(4, {1, 3}));
        CHECK(value == doctest::Approx(0));
    }
}

TEST_CASE("good elements") {
    SUBCASE("subgroup minus zero: all good and super good for size >= 4") {
        auto s = cyclicSet(8, {2, 4, 6});  // size 3, Pr = 2/3 each
        CHECK(goodElements(s, Fraction(2, 3), ThresholdMode::NonStrict).size() == 3);
        auto s2 = cyclicSet(5, {1, 2, 3, 4});
        CHECK(goodElements(s2, Fraction(1, 2), ThresholdMode::Strict).size() == 4);
    }
    SUBCASE("Z_7 {1,6}: no good elements") {
        CHECK(goodElements(cyclicSet(7, {1, 6}), Fraction(1, 2), ThresholdMode::Strict).empty());
    }
    SUBCASE("Z_12 mixed set matches brute force") {
        auto s = cyclicSet(12, {1, 3, 6, 9, 11});
        auto good = goodElements(s, Fraction(1, 2), ThresholdMode::Strict);
        // brute force
        std::vector<GroupElement> expect;
        for (const auto& x : s.members()) {
            int cnt = 0;
            for (const auto& y : s.members())
                if (s.contains(s.group().add(x, y))) ++cnt;
            if (2 * cnt > s.size()) expect.push_back(x);
        }
        CHECK(good == expect);
    }
}

TEST_CASE("subgroup closure") {
    AbelianGroup z12({12});
    SUBCASE("empty seed gives the trivial subgroup") {
        auto h = subgroupClosure(z12, {});
        CHECK(h == std::vector<GroupElement>{{0}});
    }
    SUBCASE("seed {4} in Z_12") {
        auto h = subgroupClosure(z12, {{4}});
        CHECK(h == std::vector<GroupElement>{{0}, {4}, {8}});
    }
    SUBCASE("Z_2 x Z_4 seed {(1,0),(0,2)}") {
        AbelianGroup g({2, 4});
        auto h = subgroupClosure(g, {{1, 0}, {0, 2}});
        CHECK(h.size() == 4);
        CHECK(std::find(h.begin(), h.end(), GroupElement{1, 2}) != h.end());
    }
    SUBCASE("closure is closed and minimal among enumerated subgroups") {
        AbelianGroup g({2, 6});
        auto subs = enumerateSubgroups(g);
        std::mt19937 rng(17);
        for (int iter = 0; iter < 10; ++iter) {
            std::vector<GroupElement> seed;
            for (int k = 0; k < 2; ++k) seed.push_back(g.element(rng() % g.orderOrThrow()));
            auto h = subgroupClosure(g, seed);
            for (const auto& a : h)
                for (const auto& b : h) {
                    CHECK(std::binary_search(h.begin(), h.end(), g.add(a, b)));
                    CHECK(std::binary_search(h.begin(), h.end(), g.neg(a)));
                }
            // minimality: h equals the intersection of all subgroups containing the seed
            std::vector<GroupElement> best;
            for (const auto& sub : subs) {
                bool containsSeed = true;
                for (const auto& s : seed)
                    if (!std::binary_search(sub.begin(), sub.end(), s)) containsSeed = false;
                if (containsSeed && (best.empty() || sub.size() < best.size())) best = sub;
            }
            CHECK(h == best);
        }
    }
}

TEST_CASE("enumerate subgroups") {
    SUBCASE("Z_6 has one subgroup per divisor") {
        auto subs = enumerateSubgroups(AbelianGroup({6}));
        std::vector<std::size_t> sizes;
        for (const auto& s : subs) sizes.push_back(s.size());
        std::sort(sizes.begin(), sizes.end());
        CHECK(sizes == std::vector<std::size_t>{1, 2, 3, 6});
    }
    SUBCASE("Z_2 x Z_2 has five subgroups") {
        CHECK(enumerateSubgroups(AbelianGroup({2, 2})).size() == 5);
    }
    SUBCASE("Z_12 has six subgroups") {
        CHECK(enumerateSubgroups(AbelianGroup({12})).size() == 6);
    }
}

TEST_CASE("approx subgroup") {
    SUBCASE("Z_8, S = {2,4,6}") {
        auto res = approxSubgroup(cyclicSet(8, {2, 4, 6}));
        CHECK(res.subgroup == std::vector<GroupElement>{{0}, {2}, {4}, {6}});
        CHECK(res.sizeRatio == Fraction(4, 3));
        CHECK(res.overlapRatio == Fraction(1, 1));
    }
    SUBCASE("full nonzero set of Z_p") {
        for (int p : {7, 11, 13}) {
            std::vector<int> all;
            for (int v = 1; v < p; ++v) all.push_back(v);
            auto res = approxSubgroup(cyclicSet(p, all));
            CHECK(res.superGoodCount == p - 1);  // Pr = (p-4+...)/(p-1) >= 2/3 for p >= 7
            CHECK(res.subgroup.size() == static_cast<std::size_t>(p));
            CHECK(res.overlapRatio == Fraction(1, 1));
        }
    }
    SUBCASE("Z_7 {1,6}: no super-good elements, trivial H") {
        auto res = approxSubgroup(cyclicSet(7, {1, 6}));
        CHECK(res.superGoodCount == 0);
        CHECK(res.subgroup == std::vector<GroupElement>{{0}});
    }
    SUBCASE("subgroup fixed point for |S| >= 6") {
        // S = H \ {0} with H a subgroup of order >= 7 inside a larger group
        AbelianGroup g({3, 7});
        std::vector<GroupElement> ms;
        for (int v = 1; v < 7; ++v) ms.push_back({0, v});
        auto res = approxSubgroup(SymmetricSet(g, ms));
        CHECK(res.subgroup.size() == 7);
        CHECK(res.overlapRatio == Fraction(1, 1));
    }
}

TEST_CASE("character phase histogram") {
    SUBCASE("set inside the kernel has all-zero phases") {
        auto s = cyclicSet(8, {2, 4, 6});
        auto phases = characterPhaseHistogram(s, CharacterIndex{{4}});
        for (double p : phases) CHECK(p == doctest::Approx(0));
    }
    SUBCASE("Z_4 {1,3} under chi_1") {
        auto phases = characterPhaseHistogram(cyclicSet(4, {1, 3}), CharacterIndex{{1}});
        REQUIRE(phases.size() == 2);
        CHECK(phases[0] == doctest::Approx(-M_PI / 2));
        CHECK(phases[1] == doctest::Approx(M_PI / 2));
    }
    SUBCASE("Z_8 {2,4,6} under chi_1, pi represented as -pi") {
        auto phases = characterPhaseHistogram(cyclicSet(8, {2, 4, 6}), CharacterIndex{{1}});
        REQUIRE(phases.size() == 3);
        CHECK(phases[0] == doctest::Approx(-M_PI));
        CHECK(phases[1] == doctest::Approx(-M_PI / 2));
        CHECK(phases[2] == doctest::Approx(M_PI / 2));
    }
    SUBCASE("fraction within a phase window") {
        auto s = cyclicSet(8, {2, 4, 6});
        CHECK(phaseFractionWithin(s, CharacterIndex{{1}}, M_PI / 2) == Fraction(2, 3));
        CHECK(phaseFractionWithin(s, CharacterIndex{{1}}, M_PI) == Fraction(1, 1));
        CHECK(phaseFractionWithin(s, CharacterIndex{{1}}, 0.1) == Fraction(0, 1));
    }
}

TEST_CASE("conditional character property (large subgroup-like instance)") {
    // S = (Z_4001 \ {0}) x {0} inside Z_4001 x Z_3. With eps = (|S|^2 - triples) / (10 |S|^2):
    // |S| < (1 - 20000 eps)|G| holds, and at least ceil(.999|S|) members have Re chi*(x) > 0.
    AbelianGroup g({4001, 3});
    std::vector<GroupElement> ms;
    ms.reserve(4000);
    for (int v = 1; v < 4001; ++v) ms.push_back({v, 0});
    SymmetricSet s(g, ms);
    auto tc = additiveTriples(s);
    long long sz = s.size();
    // hypothesis check in exact arithmetic: eps = fails/(10 sz^2)
    long long failsNum = sz * sz - tc.tripleCount;  // = sz for a subgroup minus zero
    CHECK(failsNum == sz);
    // |S| < (1 - 20000*eps)|G|  <=>  sz * 10*sz^2 < (10*sz^2 - 20000*fails) * |G|
    long long order = static_cast<long long>(g.orderOrThrow());
    CHECK(static_cast<__int128>(sz) * 10 * sz * sz <
          static_cast<__int128>(10 * sz * sz - 20000 * failsNum) * order);
    auto [chi, value] = maxNontrivialCoefficient(s);
    CHECK(value > 0.999 * static_cast<double>(sz));
    // count members with Re chi*(x) > 0 via the phase histogram
    long long positive = 0;
    auto phases = characterPhaseHistogram(s, chi);
    for (double p : phases)
        if (std::abs(p) < M_PI / 2) ++positive;
    CHECK(positive >= (999 * sz + 999) / 1000);
}

TEST_CASE("group isomorphism canonicalization") {
    CHECK(canonicalModuli({6}) == std::vector<int>{2, 3});
    CHECK(canonicalModuli({2, 3}) == std::vector<int>{2, 3});
    CHECK(canonicalModuli({12}) == std::vector<int>{3, 4});
    CHECK(abelianGroupsOfOrder(8).size() == 3);
    CHECK(abelianGroupsOfOrder(16).size() == 5);
    CHECK(abelianGroupsOfOrder(36).size() == 4);
}
