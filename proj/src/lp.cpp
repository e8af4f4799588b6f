#include "rcc/lp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rcc {

void LpProblem::validate() const {
    const std::size_t n = num_vars();
    if (n == 0) throw std::invalid_argument("lp: no variables");
    if (!lower.empty() && lower.size() != n)
        throw std::invalid_argument("lp: lower bound size mismatch");
    if (!upper.empty() && upper.size() != n)
        throw std::invalid_argument("lp: upper bound size mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        double lo = lower.empty() ? 0.0 : lower[i];
        double hi = upper.empty() ? std::numeric_limits<double>::infinity() : upper[i];
        if (lo > hi) throw std::invalid_argument("lp: lower bound above upper");
        if (!std::isfinite(lo)) throw std::invalid_argument("lp: lower bound must be finite");
    }
    for (const auto& row : constraints)
        if (row.a.size() != n)
            throw std::invalid_argument("lp: constraint size mismatch");
}

namespace {

constexpr double kEps = 1e-9;

struct Tableau {
    std::size_t rows = 0, cols = 0;      // cols excludes the rhs column
    std::vector<std::vector<double>> a;  // rows x (cols + 1), last entry = rhs
    std::vector<std::size_t> basis;      // basic column per row
};

// Primal simplex on an initial basic feasible tableau; maximizes cost.x over
// columns marked allowed. Returns LpStatus::optimal or unbounded (or
// iteration_limit).
LpStatus run_simplex(Tableau& t, const std::vector<double>& cost,
                     const std::vector<char>& allowed, long max_iters) {
    const std::size_t m = t.rows, n = t.cols;
    std::vector<double> mult(m);
    for (long it = 0; it < max_iters; ++it) {
        // Dantzig pricing normally finishes in a few hundred pivots here;
        // long runs mean degenerate cycling, so fall back to Bland's rule
        // well before the iteration budget runs out.
        bool bland = it > 5000;
        for (std::size_t r = 0; r < m; ++r) mult[r] = cost[t.basis[r]];

        std::size_t enter = n;
        double best_rc = kEps;
        for (std::size_t j = 0; j < n; ++j) {
            if (!allowed[j]) continue;
            double rc = cost[j];
            for (std::size_t r = 0; r < m; ++r)
                if (mult[r] != 0.0) rc -= mult[r] * t.a[r][j];
            if (rc > best_rc) {
                enter = j;
                if (bland) break;
                best_rc = rc;
            }
        }
        if (enter == n) return LpStatus::optimal;

        std::size_t leave = m;
        double best_ratio = 0.0;
        for (std::size_t r = 0; r < m; ++r) {
            double piv = t.a[r][enter];
            if (piv <= kEps) continue;
            double ratio = t.a[r][n] / piv;
            if (leave == m || ratio < best_ratio - 1e-12 ||
                (ratio < best_ratio + 1e-12 && t.basis[r] < t.basis[leave])) {
                leave = r;
                best_ratio = ratio;
            }
        }
        if (leave == m) return LpStatus::unbounded;

        // Pivot.
        double piv = t.a[leave][enter];
        auto& prow = t.a[leave];
        for (double& v : prow) v /= piv;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == leave) continue;
            double f = t.a[r][enter];
            if (f == 0.0) continue;
            auto& row = t.a[r];
            for (std::size_t j = 0; j <= n; ++j) row[j] -= f * prow[j];
        }
        t.basis[leave] = enter;
    }
    return LpStatus::iteration_limit;
}

}  // namespace

LpSolution lp_solve(const LpProblem& p) {
    p.validate();
    const std::size_t n = p.num_vars();
    std::vector<double> lo(n, 0.0);
    if (!p.lower.empty()) lo = p.lower;

    // Shift to x' = x - lo >= 0 and collect rows; finite upper bounds become
    // explicit rows.
    struct Row {
        std::vector<double> a;
        Rel rel;
        double rhs;
    };
    std::vector<Row> rows;
    for (const auto& c : p.constraints) {
        double shift = 0.0;
        for (std::size_t j = 0; j < n; ++j) shift += c.a[j] * lo[j];
        rows.push_back({c.a, c.rel, c.rhs - shift});
    }
    for (std::size_t j = 0; j < n; ++j) {
        double hi = p.upper.empty() ? std::numeric_limits<double>::infinity()
                                    : p.upper[j];
        if (std::isfinite(hi)) {
            std::vector<double> a(n, 0.0);
            a[j] = 1.0;
            rows.push_back({std::move(a), Rel::le, hi - lo[j]});
        }
    }

    // Normalize: ge -> le by negation; then ensure rhs >= 0 (le with negative
    // rhs becomes ge with positive rhs, which needs an artificial).
    for (auto& r : rows) {
        if (r.rel == Rel::ge) {
            for (double& v : r.a) v = -v;
            r.rhs = -r.rhs;
            r.rel = Rel::le;
        }
        if (r.rhs < 0.0) {
            for (double& v : r.a) v = -v;
            r.rhs = -r.rhs;
            r.rel = (r.rel == Rel::le) ? Rel::ge : r.rel;  // eq stays eq
        }
    }

    const std::size_t m = rows.size();
    std::size_t n_slack = 0, n_art = 0;
    for (const auto& r : rows) {
        if (r.rel != Rel::eq) ++n_slack;
        if (r.rel != Rel::le) ++n_art;
    }
    const std::size_t total = n + n_slack + n_art;

    Tableau t;
    t.rows = m;
    t.cols = total;
    t.a.assign(m, std::vector<double>(total + 1, 0.0));
    t.basis.assign(m, 0);
    std::vector<char> is_art(total, 0);
    std::size_t slack_at = n, art_at = n + n_slack;
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t j = 0; j < n; ++j) t.a[r][j] = rows[r].a[j];
        t.a[r][total] = rows[r].rhs;
        if (rows[r].rel == Rel::le) {
            t.a[r][slack_at] = 1.0;
            t.basis[r] = slack_at++;
        } else if (rows[r].rel == Rel::ge) {
            t.a[r][slack_at] = -1.0;
            ++slack_at;
            t.a[r][art_at] = 1.0;
            is_art[art_at] = 1;
            t.basis[r] = art_at++;
        } else {
            t.a[r][art_at] = 1.0;
            is_art[art_at] = 1;
            t.basis[r] = art_at++;
        }
    }

    LpSolution sol;
    const long max_iters = 50L * static_cast<long>(m + total) + 10000;
    std::vector<char> allowed(total, 1);

    if (n_art > 0) {
        std::vector<double> phase1(total, 0.0);
        for (std::size_t j = 0; j < total; ++j)
            if (is_art[j]) phase1[j] = -1.0;
        LpStatus st = run_simplex(t, phase1, allowed, max_iters);
        if (st == LpStatus::iteration_limit) {
            sol.status = st;
            return sol;
        }
        double infeas = 0.0;
        for (std::size_t r = 0; r < m; ++r)
            if (is_art[t.basis[r]]) infeas += t.a[r][total];
        if (infeas > 1e-7) {
            sol.status = LpStatus::infeasible;
            return sol;
        }
        // Pivot remaining artificials (all at zero) out of the basis.
        for (std::size_t j = 0; j < total; ++j)
            if (is_art[j]) allowed[j] = 0;
        for (std::size_t r = 0; r < m; ++r) {
            if (!is_art[t.basis[r]]) continue;
            std::size_t piv_col = total;
            for (std::size_t j = 0; j < total && piv_col == total; ++j)
                if (allowed[j] && std::abs(t.a[r][j]) > kEps) piv_col = j;
            if (piv_col == total) {
                // Redundant row: keep the artificial basic but freeze it.
                continue;
            }
            double piv = t.a[r][piv_col];
            for (double& v : t.a[r]) v /= piv;
            for (std::size_t r2 = 0; r2 < m; ++r2) {
                if (r2 == r) continue;
                double f = t.a[r2][piv_col];
                if (f == 0.0) continue;
                for (std::size_t j = 0; j <= total; ++j)
                    t.a[r2][j] -= f * t.a[r][j];
            }
            t.basis[r] = piv_col;
        }
    }

    std::vector<double> cost(total, 0.0);
    for (std::size_t j = 0; j < n; ++j) cost[j] = p.objective[j];
    LpStatus st = run_simplex(t, cost, allowed, max_iters);
    if (st != LpStatus::optimal) {
        sol.status = st;
        return sol;
    }

    sol.status = LpStatus::optimal;
    sol.x.assign(n, 0.0);
    for (std::size_t r = 0; r < m; ++r)
        if (t.basis[r] < n) sol.x[t.basis[r]] = t.a[r][total];
    for (std::size_t j = 0; j < n; ++j) sol.x[j] += lo[j];
    sol.objective = 0.0;
    for (std::size_t j = 0; j < n; ++j) sol.objective += p.objective[j] * sol.x[j];
    return sol;
}

}  // namespace rcc
