#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "rcc/lt.hpp"

using namespace rcc;

TEST_CASE("point-mass degree yields exactly d distinct neighbors") {
    EncodingUnion u;
    u.add_block(0, 50);
    DegreeDistribution d({{4, 1.0}});
    RngStream r(11);
    auto syms = lt_encode(u, d, 200, r, 2, 5);
    for (const auto& s : syms) {
        CHECK(s.origin_user == 2);
        CHECK(s.frame == 5);
        REQUIRE(s.neighbors.size() == 4);
        std::set<SymbolId> uniq(s.neighbors.begin(), s.neighbors.end());
        CHECK(uniq.size() == 4);
    }
}

TEST_CASE("degree clamps to union size") {
    EncodingUnion u;
    u.add_block(0, 3);
    DegreeDistribution d({{8, 1.0}});
    RngStream r(1);
    auto syms = lt_encode(u, d, 20, r);
    for (const auto& s : syms) CHECK(s.neighbors.size() == 3);
}

TEST_CASE("encode is deterministic for a fixed stream") {
    EncodingUnion u;
    u.add_block(0, 30);
    u.add_symbol({1, 7});
    DegreeDistribution d({{1, 0.2}, {3, 0.8}});
    RngStream r1(42), r2(42);
    auto a = lt_encode(u, d, 100, r1);
    auto b = lt_encode(u, d, 100, r2);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) CHECK(a[i].neighbors == b[i].neighbors);
}

TEST_CASE("neighbors stay inside the union and are uniform") {
    EncodingUnion u;
    u.add_block(0, 10);
    for (std::uint32_t i = 0; i < 10; ++i) u.add_symbol({1, i * 3});
    DegreeDistribution d({{2, 1.0}});
    RngStream r(123);
    std::map<SymbolId, long> hist;
    const int n = 100000;
    auto syms = lt_encode(u, d, n, r);
    std::set<SymbolId> allowed;
    for (size_t i = 0; i < u.size(); ++i) allowed.insert(u.at(i));
    long edges = 0;
    for (const auto& s : syms)
        for (auto id : s.neighbors) {
            REQUIRE(allowed.count(id) == 1);
            ++hist[id];
            ++edges;
        }
    double expect = static_cast<double>(edges) / 20.0;
    double chi2 = 0;
    for (auto id : allowed) {
        double diff = hist[id] - expect;
        chi2 += diff * diff / expect;
    }
    // 19 dof, alpha = 0.01 critical value 36.19.
    CHECK(chi2 < 36.19);
}

TEST_CASE("empty union is an error") {
    EncodingUnion u;
    DegreeDistribution d({{1, 1.0}});
    RngStream r(1);
    CHECK_THROWS(lt_encode(u, d, 1, r));
}

TEST_CASE("fill_payloads XORs referenced sources") {
    EncodingUnion u;
    u.add_block(0, 4);
    std::vector<std::vector<Payload>> src(1);
    for (std::uint64_t i = 0; i < 4; ++i) src[0].push_back({i + 1, (i + 1) * 100});
    DegreeDistribution d({{2, 1.0}});
    RngStream r(9);
    auto syms = lt_encode(u, d, 50, r);
    fill_payloads(syms, src);
    for (const auto& s : syms) {
        Payload want(2, 0);
        for (auto id : s.neighbors) xor_into(want, src[0][id.index]);
        CHECK(s.payload == want);
    }
}
