#include <doctest.h>

#include <cmath>
#include <vector>

#include "rcc/rng.hpp"

using namespace rcc;

TEST_CASE("derived streams are deterministic") {
    RngStream a = RngStream::derive(42, 3, 7, 1);
    RngStream b = RngStream::derive(42, 3, 7, 1);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct labels give distinct streams") {
    RngStream a = RngStream::derive(42, 3, 7, 1);
    RngStream b = RngStream::derive(42, 3, 7, 2);
    int same = 0;
    for (int i = 0; i < 64; ++i)
        if (a.next_u64() == b.next_u64()) ++same;
    CHECK(same == 0);
}

TEST_CASE("cross-stream correlation is negligible") {
    RngStream a = RngStream::derive(7, 0, 0, 0);
    RngStream b = RngStream::derive(7, 1, 0, 0);
    const int n = 100000;
    double sa = 0, sb = 0, sab = 0, saa = 0, sbb = 0;
    for (int i = 0; i < n; ++i) {
        double x = a.next_double(), y = b.next_double();
        sa += x; sb += y; sab += x * y; saa += x * x; sbb += y * y;
    }
    double cov = sab / n - (sa / n) * (sb / n);
    double va = saa / n - (sa / n) * (sa / n);
    double vb = sbb / n - (sb / n) * (sb / n);
    double corr = cov / std::sqrt(va * vb);
    CHECK(std::abs(corr) < 0.01);
}

TEST_CASE("uniform mean and range") {
    RngStream r(123);
    double sum = 0;
    for (int i = 0; i < 100000; ++i) {
        double x = r.next_double();
        REQUIRE(x >= 0.0);
        REQUIRE(x < 1.0);
        sum += x;
    }
    CHECK(sum / 100000 == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("next_below stays in range and is roughly uniform") {
    RngStream r(9);
    std::vector<int> hist(7, 0);
    for (int i = 0; i < 70000; ++i) {
        std::uint64_t v = r.next_below(7);
        REQUIRE(v < 7);
        ++hist[static_cast<size_t>(v)];
    }
    for (int c : hist) CHECK(std::abs(c - 10000) < 500);
}

TEST_CASE("registry rejects duplicate stream labels") {
    StreamLabelRegistry reg;
    reg.open(1, 0, 0, 0);
    reg.open(1, 0, 0, 1);
    CHECK_THROWS_AS(reg.open(1, 0, 0, 0), std::logic_error);
}
