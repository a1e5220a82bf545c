#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <set>

#include "trireg/graph.hpp"
#include "trireg/spectrum.hpp"

using namespace trireg;

TEST_CASE("enumerateSymmetricSets counts") {
    auto countSets = [](const AbelianGroup& g) {
        long long n = 0;
        enumerateSymmetricSets(g, [&](const SymmetricSet&) { ++n; });
        return n;
    };
    CHECK(countSets(AbelianGroup({3})) == 2);
    CHECK(countSets(AbelianGroup({4})) == 4);
    CHECK(countSets(AbelianGroup({5})) == 4);
    // 2^(floor((n-1)/2) + [n even]) for cyclic groups, checked by direct powerset filtering
    for (int n = 2; n <= 12; ++n) {
        AbelianGroup g({n});
        long long direct = 0;
        for (std::uint64_t mask = 0; mask < (1u << (n - 1)); ++mask) {
            bool symmetric = true;
            for (int v = 1; v < n; ++v) {
                bool in = (mask >> (v - 1)) & 1;
                bool nin = (mask >> ((n - v) - 1)) & 1;
                if (in != nin) symmetric = false;
            }
            if (symmetric) ++direct;
        }
        long long expected = 1LL << ((n - 1) / 2 + (n % 2 == 0 ? 1 : 0));
        CHECK(countSets(g) == direct);
        CHECK(direct == expected);
    }
}

TEST_CASE("spectrumForR") {
    SUBCASE("r=2 up to order 12") {
        auto records = spectrumForR(2, 12);
        std::set<long long> cs;
        for (const auto& rec : records) cs.insert(rec.c);
        CHECK(cs == std::set<long long>{0, 1});
    }
    SUBCASE("r=4 up to order 24: c set and the missing 5") {
        auto records = spectrumForR(4, 24);
        std::set<long long> cs;
        for (const auto& rec : records) cs.insert(rec.c);
        for (long long c : {0, 1, 2, 3, 4, 6}) CHECK(cs.count(c) == 1);
        CHECK(cs.count(5) == 0);
    }
    SUBCASE("every record re-verifies through the cayley graph") {
        auto records = spectrumForR(4, 16);
        for (const auto& rec : records) {
            AbelianGroup g(rec.witnessGroup);
            SymmetricSet s(g, rec.witnessSet);
            auto check = checkTriangleRegular(cayleyGraph(s));
            REQUIRE(check.uniform);
            CHECK(check.r == std::vector<long long>{rec.r});
            CHECK(check.c == std::vector<long long>{rec.c});
        }
    }
    SUBCASE("monotone coverage in the order cap") {
        auto small = spectrumForR(3, 10);
        auto large = spectrumForR(3, 16);
        std::set<long long> cSmall, cLarge;
        for (const auto& rec : small) cSmall.insert(rec.c);
        for (const auto& rec : large) cLarge.insert(rec.c);
        for (long long c : cSmall) CHECK(cLarge.count(c) == 1);
    }
    SUBCASE("thread count does not change the records") {
        auto a = spectrumForR(4, 18, 1);
        auto b = spectrumForR(4, 18, 2);
        CHECK(a == b);
    }
}

TEST_CASE("forbiddenBandCheck") {
    SUBCASE("r=4 band {5}") {
        auto rep = forbiddenBandCheck(4, 24);
        CHECK(rep.bandLo == 5);
        CHECK(rep.bandHi == 5);
        CHECK(rep.violations.empty());
    }
    SUBCASE("r=6 band {13,14}") {
        auto rep = forbiddenBandCheck(6, 28);
        CHECK(rep.bandLo == 13);
        CHECK(rep.bandHi == 14);
        CHECK(rep.violations.empty());
    }
    SUBCASE("r=2 band is empty") {
        auto rep = forbiddenBandCheck(2, 10);
        CHECK(rep.bandLo > rep.bandHi);
        CHECK(rep.violations.empty());
    }
}

TEST_CASE("spectrum csv round trip") {
    SUBCASE("empty record set gives a header-only file") {
        std::string path = "test_spectrum_empty.csv";
        emitSpectrumCsv({}, path);
        auto back = parseSpectrumCsv(path);
        CHECK(back.empty());
        std::remove(path.c_str());
    }
    SUBCASE("r=2 records round trip") {
        auto records = spectrumForR(2, 12);
        CHECK(records.size() == 2);
        std::string path = "test_spectrum_r2.csv";
        emitSpectrumCsv(records, path);
        auto back = parseSpectrumCsv(path);
        CHECK(back == records);
        std::remove(path.c_str());
    }
}
