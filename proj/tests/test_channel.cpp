#include <doctest.h>

#include <cmath>
#include <vector>

#include "rcc/channel.hpp"

using namespace rcc;

static std::vector<CodedSymbol> make_syms(std::uint32_t n) {
    std::vector<CodedSymbol> v;
    for (std::uint32_t i = 0; i < n; ++i) {
        CodedSymbol s;
        s.origin_user = 0;
        s.frame = i;  // tag for identity/order checks
        s.neighbors.push_back({0, i % 7});
        v.push_back(s);
    }
    return v;
}

TEST_CASE("e=0 passes everything in order, e=1 erases everything") {
    auto syms = make_syms(500);
    RngStream r(1);
    auto out = transmit(syms, 0.0, r);
    REQUIRE(out.size() == 500);
    for (std::uint32_t i = 0; i < 500; ++i) CHECK(out[i].frame == i);
    auto none = transmit(syms, 1.0, r);
    CHECK(none.empty());
}

TEST_CASE("survivor fraction matches 1-e closely") {
    auto syms = make_syms(1000);
    RngStream r(7);
    std::uint64_t kept = 0, total = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        auto out = transmit(syms, 0.3, r);
        kept += out.size();
        total += syms.size();
    }
    double frac = static_cast<double>(kept) / static_cast<double>(total);
    CHECK(frac == doctest::Approx(0.7).epsilon(0.003));
}

TEST_CASE("order of survivors is preserved") {
    auto syms = make_syms(200);
    RngStream r(5);
    auto out = transmit(syms, 0.5, r);
    for (size_t i = 1; i < out.size(); ++i) CHECK(out[i - 1].frame < out[i].frame);
}

TEST_CASE("invalid erasure probability rejected") {
    auto syms = make_syms(5);
    RngStream r(2);
    CHECK_THROWS(transmit(syms, -0.1, r));
    CHECK_THROWS(transmit(syms, 1.5, r));
}

TEST_CASE("independent links from derived streams are uncorrelated") {
    auto syms = make_syms(2000);
    RngStream a = RngStream::derive(9, 0, 0, 1);
    RngStream b = RngStream::derive(9, 0, 0, 2);
    auto oa = transmit(syms, 0.5, a);
    auto ob = transmit(syms, 0.5, b);
    // Count joint survivals: expect ~ n/4 under independence.
    std::vector<std::uint8_t> ka(2000, 0), kb(2000, 0);
    for (const auto& s : oa) ka[s.frame] = 1;
    for (const auto& s : ob) kb[s.frame] = 1;
    int joint = 0;
    for (int i = 0; i < 2000; ++i) joint += ka[i] && kb[i];
    CHECK(std::abs(joint - 500) < 80);
}

TEST_CASE("erasure matrix validation") {
    auto m = ErasureMatrix::uniform(3, 0.2, 0.1);
    m.validate();
    m.inter_user[0][1] = 0.4;
    CHECK_THROWS(m.validate());
    m.inter_user[1][0] = 0.4;
    m.validate();
    m.user_to_dest[2] = 1.2;
    CHECK_THROWS(m.validate());
}
