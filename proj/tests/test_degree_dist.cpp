#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "rcc/degree_dist.hpp"
#include "rcc/rng.hpp"

using namespace rcc;

static DegreeDistribution table1_m1() {
    // Average degree 5.5442 before renormalization (columns sum to 0.9995).
    std::map<int, double> p = {{1, 0.0098}, {2, 0.4949},  {3, 0.1597}, {4, 0.1095},
                               {6, 0.0437}, {7, 0.0774},  {14, 0.0026}, {15, 0.0661},
                               {50, 0.0358}};
    double s = 0;
    for (auto& [d, v] : p) s += v;
    for (auto& [d, v] : p) v /= s;
    return DegreeDistribution(p);
}

TEST_CASE("point mass evaluates and samples trivially") {
    DegreeDistribution d({{3, 1.0}});
    CHECK(d.max_degree() == 3);
    CHECK(d.prob(3) == doctest::Approx(1.0));
    CHECK(d.eval(0.5) == doctest::Approx(0.125));
    CHECK(d.deriv(1.0) == doctest::Approx(3.0));
    RngStream r(1);
    for (int i = 0; i < 50; ++i) CHECK(d.sample(r) == 3);
}

TEST_CASE("eval and deriv match polynomial on a mixed distribution") {
    DegreeDistribution d({{1, 0.2}, {2, 0.3}, {4, 0.5}});
    double x = 0.7;
    CHECK(d.eval(x) == doctest::Approx(0.2 * x + 0.3 * x * x + 0.5 * std::pow(x, 4)));
    CHECK(d.deriv(x) == doctest::Approx(0.2 + 0.6 * x + 2.0 * std::pow(x, 3)));
    CHECK(d.mean_degree() == doctest::Approx(0.2 + 0.6 + 2.0));
}

TEST_CASE("empirical mean of optimized distribution matches mu") {
    DegreeDistribution d = table1_m1();
    CHECK(d.mean_degree() == doctest::Approx(5.5442).epsilon(0.002));
    RngStream r(20260826);
    double sum = 0;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) sum += d.sample(r);
    CHECK(sum / n == doctest::Approx(d.mean_degree()).epsilon(0.01));
}

TEST_CASE("sampling chi-square goodness of fit") {
    DegreeDistribution d({{1, 0.1}, {2, 0.5}, {3, 0.15}, {5, 0.25}});
    RngStream r(77);
    std::map<int, long> hist;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) ++hist[d.sample(r)];
    double chi2 = 0;
    int cells = 0;
    for (int deg : {1, 2, 3, 5}) {
        double exp_c = n * d.prob(deg);
        double diff = hist[deg] - exp_c;
        chi2 += diff * diff / exp_c;
        ++cells;
    }
    // 3 degrees of freedom, alpha = 0.01 critical value 11.34.
    CHECK(chi2 < 11.34);
    CHECK(cells == 4);
}

TEST_CASE("serialize/parse round trip preserves probabilities") {
    DegreeDistribution d = table1_m1();
    std::string text = d.serialize();
    DegreeDistribution back = DegreeDistribution::parse(text);
    CHECK(back.max_degree() == d.max_degree());
    for (int deg = 1; deg <= d.max_degree(); ++deg)
        CHECK(back.prob(deg) == doctest::Approx(d.prob(deg)).epsilon(1e-12));
}

TEST_CASE("parse rejects bad sums and bad checksums") {
    CHECK_THROWS(DegreeDistribution::parse("degree-distribution D=2 checksum=0\n1 0.5\n2 0.4\n"));
    std::string good = DegreeDistribution({{2, 1.0}}).serialize();
    std::string tampered = good;
    tampered.back() = tampered.back() == '\n' ? '\n' : tampered.back();
    // flip one checksum hex digit
    auto pos = tampered.find("checksum=") + 9;
    tampered[pos] = tampered[pos] == '0' ? '1' : '0';
    CHECK_THROWS_AS(DegreeDistribution::parse(tampered), std::invalid_argument);
}

TEST_CASE("construction rejects invalid vectors") {
    CHECK_THROWS(DegreeDistribution({{1, 0.5}, {2, 0.4}}));
    CHECK_THROWS(DegreeDistribution({{1, -0.1}, {2, 1.1}}));
    CHECK_THROWS(DegreeDistribution({{0, 1.0}}));
}
