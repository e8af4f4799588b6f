#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "rcc/lp.hpp"
#include "rcc/rng.hpp"

using namespace rcc;

static constexpr double kInf = std::numeric_limits<double>::infinity();

TEST_CASE("one variable with an upper bound") {
    LpProblem p;
    p.objective = {1.0};
    p.lower = {0.0};
    p.upper = {kInf};
    p.constraints.push_back({{1.0}, Rel::le, 1.0});
    auto s = lp_solve(p);
    REQUIRE(s.status == LpStatus::optimal);
    CHECK(s.x[0] == doctest::Approx(1.0));
    CHECK(s.objective == doctest::Approx(1.0));
}

TEST_CASE("two variables share a budget") {
    LpProblem p;
    p.objective = {2.0, 1.0};
    p.lower = {0.0, 0.0};
    p.upper = {kInf, kInf};
    p.constraints.push_back({{1.0, 1.0}, Rel::le, 1.0});
    auto s = lp_solve(p);
    REQUIRE(s.status == LpStatus::optimal);
    CHECK(s.x[0] == doctest::Approx(1.0));
    CHECK(s.x[1] == doctest::Approx(0.0));
}

TEST_CASE("equality plus inequality mix") {
    // maximize x + 2y + 3z, x+y+z = 1, y >= 0.2, z <= 0.5
    LpProblem p;
    p.objective = {1.0, 2.0, 3.0};
    p.lower = {0.0, 0.0, 0.0};
    p.upper = {kInf, kInf, kInf};
    p.constraints.push_back({{1.0, 1.0, 1.0}, Rel::eq, 1.0});
    p.constraints.push_back({{0.0, 1.0, 0.0}, Rel::ge, 0.2});
    p.constraints.push_back({{0.0, 0.0, 1.0}, Rel::le, 0.5});
    auto s = lp_solve(p);
    REQUIRE(s.status == LpStatus::optimal);
    CHECK(s.x[0] == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(s.x[1] == doctest::Approx(0.5));
    CHECK(s.x[2] == doctest::Approx(0.5));
    CHECK(s.objective == doctest::Approx(2.5));
}

TEST_CASE("random LPs agree with vertex enumeration") {
    // 3 vars, 4 le-rows with nonnegative coefficients: optimum is at a vertex
    // of the bounded polytope; enumerate all basis triples directly.
    RngStream r(31);
    for (int t = 0; t < 40; ++t) {
        std::vector<std::vector<double>> rows;
        std::vector<double> rhs, c;
        for (int i = 0; i < 3; ++i) c.push_back(0.1 + r.next_double());
        for (int i = 0; i < 4; ++i) {
            std::vector<double> a;
            for (int j = 0; j < 3; ++j) a.push_back(0.1 + r.next_double());
            rows.push_back(a);
            rhs.push_back(0.5 + r.next_double());
        }
        LpProblem p;
        p.objective = c;
        p.lower.assign(3, 0.0);
        p.upper.assign(3, kInf);
        for (int i = 0; i < 4; ++i) p.constraints.push_back({rows[static_cast<size_t>(i)], Rel::le, rhs[static_cast<size_t>(i)]});
        auto s = lp_solve(p);
        REQUIRE(s.status == LpStatus::optimal);

        // enumerate candidate vertices: intersections of 3 tight planes drawn
        // from {rows} ∪ {x_j = 0}
        double best = 0.0;
        std::vector<std::vector<double>> planes = rows;
        std::vector<double> prhs = rhs;
        for (int j = 0; j < 3; ++j) {
            std::vector<double> e(3, 0.0);
            e[static_cast<size_t>(j)] = 1.0;
            planes.push_back(e);
            prhs.push_back(0.0);
        }
        int np = static_cast<int>(planes.size());
        for (int a = 0; a < np; ++a)
            for (int b = a + 1; b < np; ++b)
                for (int d = b + 1; d < np; ++d) {
                    double m[3][4];
                    const int sel[3] = {a, b, d};
                    for (int i = 0; i < 3; ++i) {
                        for (int j = 0; j < 3; ++j) m[i][j] = planes[static_cast<size_t>(sel[i])][static_cast<size_t>(j)];
                        m[i][3] = prhs[static_cast<size_t>(sel[i])];
                    }
                    // gaussian elimination
                    bool singular = false;
                    for (int col = 0; col < 3 && !singular; ++col) {
                        int piv = -1;
                        for (int row = col; row < 3; ++row)
                            if (std::abs(m[row][col]) > 1e-9) { piv = row; break; }
                        if (piv < 0) { singular = true; break; }
                        for (int j = 0; j < 4; ++j) std::swap(m[col][j], m[piv][j]);
                        for (int row = 0; row < 3; ++row) {
                            if (row == col) continue;
                            double f = m[row][col] / m[col][col];
                            for (int j = 0; j < 4; ++j) m[row][j] -= f * m[col][j];
                        }
                    }
                    if (singular) continue;
                    double x[3];
                    for (int i = 0; i < 3; ++i) x[i] = m[i][3] / m[i][i];
                    bool feas = true;
                    for (int i = 0; i < 3 && feas; ++i)
                        if (x[i] < -1e-7) feas = false;
                    for (int i = 0; i < 4 && feas; ++i) {
                        double lhs = 0;
                        for (int j = 0; j < 3; ++j) lhs += rows[static_cast<size_t>(i)][static_cast<size_t>(j)] * x[j];
                        if (lhs > rhs[static_cast<size_t>(i)] + 1e-7) feas = false;
                    }
                    if (!feas) continue;
                    double obj = 0;
                    for (int j = 0; j < 3; ++j) obj += c[static_cast<size_t>(j)] * x[j];
                    best = std::max(best, obj);
                }
        REQUIRE(s.objective == doctest::Approx(best).epsilon(1e-6));
    }
}

TEST_CASE("infeasible system is detected") {
    LpProblem p;
    p.objective = {1.0};
    p.lower = {0.0};
    p.upper = {kInf};
    p.constraints.push_back({{1.0}, Rel::le, 1.0});
    p.constraints.push_back({{1.0}, Rel::ge, 2.0});
    auto s = lp_solve(p);
    CHECK(s.status == LpStatus::infeasible);
}

TEST_CASE("unbounded objective is detected") {
    LpProblem p;
    p.objective = {1.0, 0.0};
    p.lower = {0.0, 0.0};
    p.upper = {kInf, kInf};
    p.constraints.push_back({{-1.0, 1.0}, Rel::le, 1.0});
    auto s = lp_solve(p);
    CHECK(s.status == LpStatus::unbounded);
}

TEST_CASE("finite variable bounds are honored") {
    LpProblem p;
    p.objective = {1.0, 1.0};
    p.lower = {0.2, 0.0};
    p.upper = {0.6, 0.3};
    p.constraints.push_back({{1.0, 1.0}, Rel::le, 2.0});
    auto s = lp_solve(p);
    REQUIRE(s.status == LpStatus::optimal);
    CHECK(s.x[0] == doctest::Approx(0.6));
    CHECK(s.x[1] == doctest::Approx(0.3));
}
