#include "rcc/design.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "rcc/hypergeom.hpp"
#include "rcc/pcc_analysis.hpp"

namespace rcc {

void DesignParams::validate() const {
    if (M < 1) throw std::invalid_argument("design: M must be >= 1");
    if (k <= 0.0) throw std::invalid_argument("design: k must be positive");
    if (D < 2 || D > k) throw std::invalid_argument("design: bad max degree");
    if (delta <= 0.0 || delta >= 1.0) throw std::invalid_argument("design: bad delta");
    if (c < 0.0) throw std::invalid_argument("design: bad ripple constant");
    if (grid_step <= 0.0 || grid_step >= 1.0)
        throw std::invalid_argument("design: bad grid step");
    if (N <= 0.0) throw std::invalid_argument("design: N must be positive");
}

std::vector<double> DesignParams::grid() const {
    std::vector<double> xs;
    for (double x = 0.0; x < 1.0 - delta + 1e-12; x += grid_step)
        xs.push_back(std::min(x, 1.0 - delta));
    if (xs.back() < 1.0 - delta - 1e-12) xs.push_back(1.0 - delta);
    return xs;
}

namespace {

// Constraint rows for one "known mass" level: for each grid x,
//   sum_n Phi_n * [ sum_{d=1..n} d x^{d-1} H(known, unknown; n-d, d) ]
//     + r * ln(1 - x - c*sqrt((1-x)/unknown)) >= 0.
// Returns rows with coefficients over n_vars variables; the Phi block starts
// at 0 and the r coefficient goes to r_index.
void append_level_rows(std::vector<LpConstraint>& rows, const DesignParams& p,
                       double known, double unknown, std::size_t n_vars,
                       std::size_t r_index) {
    const double total = known + unknown;
    const int D = p.D;
    // weight[n][d] = d * C(known, n-d) C(unknown, d) / C(total, n)
    std::vector<std::vector<double>> weight(static_cast<std::size_t>(D) + 1);
    for (int n = 1; n <= D; ++n) {
        auto& wn = weight[static_cast<std::size_t>(n)];
        wn.assign(static_cast<std::size_t>(n) + 1, 0.0);
        for (int d = 1; d <= n; ++d) {
            double h = std::exp(log_binomial(known, n - d) +
                                log_binomial(unknown, d) - log_binomial(total, n));
            if (h > 1e-14) wn[static_cast<std::size_t>(d)] = d * h;
        }
    }
    for (double x : p.grid()) {
        double arg = 1.0 - x - p.c * std::sqrt((1.0 - x) / unknown);
        if (arg <= 0.0) continue;  // dropped grid point (near x = 1 - delta)
        LpConstraint row;
        row.a.assign(n_vars, 0.0);
        for (int n = 1; n <= D; ++n) {
            const auto& wn = weight[static_cast<std::size_t>(n)];
            double acc = 0.0;  // sum_d wn[d] x^{d-1}, Horner over d
            for (int d = n; d >= 1; --d) acc = acc * x + wn[static_cast<std::size_t>(d)];
            row.a[static_cast<std::size_t>(n - 1)] = acc;
        }
        row.a[r_index] = std::log(arg);
        row.rel = Rel::ge;
        row.rhs = 0.0;
        rows.push_back(std::move(row));
    }
}

LpProblem assemble(const DesignParams& p, const std::vector<double>& known_mass,
                   const std::vector<double>& unknown_mass) {
    const std::size_t levels = known_mass.size();
    const std::size_t n_vars = static_cast<std::size_t>(p.D) + levels;
    LpProblem lp;
    lp.objective.assign(n_vars, 0.0);
    for (std::size_t r = 0; r < levels; ++r)
        lp.objective[static_cast<std::size_t>(p.D) + r] = 1.0;
    // Keep every variable bounded so the solver cannot wander: probabilities
    // live in [0, 1]; the per-level rate variables get a loose cap well above
    // any achievable rate, which leaves the optimum untouched but keeps the
    // LP bounded even when a level contributes few usable grid rows.
    lp.lower.assign(n_vars, 0.0);
    lp.upper.assign(n_vars, 10.0);
    for (int d = 0; d < p.D; ++d) lp.upper[static_cast<std::size_t>(d)] = 1.0;

    for (std::size_t lev = 0; lev < levels; ++lev)
        append_level_rows(lp.constraints, p, known_mass[lev], unknown_mass[lev],
                          n_vars, static_cast<std::size_t>(p.D) + lev);

    LpConstraint simplex_row;
    simplex_row.a.assign(n_vars, 0.0);
    for (int d = 0; d < p.D; ++d) simplex_row.a[static_cast<std::size_t>(d)] = 1.0;
    simplex_row.rel = Rel::eq;
    simplex_row.rhs = 1.0;
    lp.constraints.push_back(std::move(simplex_row));
    return lp;
}

}  // namespace

LpProblem build_fcc_lp(const DesignParams& p) {
    p.validate();
    std::vector<double> known, unknown;
    for (int m = 0; m < p.M; ++m) {
        known.push_back(m * p.k);
        unknown.push_back((p.M - m) * p.k);
    }
    return assemble(p, known, unknown);
}

LpProblem build_pcc_lp(const DesignParams& p, const std::vector<double>& s) {
    p.validate();
    if (s.empty()) throw std::invalid_argument("build_pcc_lp: empty s");
    std::vector<double> known, unknown;
    double prev = 0.0;
    for (double sj : s) {
        if (sj + 1e-9 < prev || sj >= p.k)
            throw std::invalid_argument("build_pcc_lp: s must be non-decreasing and < k");
        prev = sj;
        known.push_back(p.M * sj);
        unknown.push_back(p.M * (p.k - sj));
    }
    LpProblem lp = assemble(p, known, unknown);
    // The objective is flat across many vertices, and some of them put no
    // mass on degree one. Peeling cannot start without degree-one symbols,
    // so the user-side recursion collapses on such a vertex and the outer
    // fixed point stalls. A floor on the order of the ripple constant keeps
    // the seed alive without binding at the converged solution.
    lp.lower[0] = std::min(0.05, p.c / std::sqrt(p.k));
    return lp;
}

DesignResult solve_design(const LpProblem& lp, int D) {
    LpSolution sol = lp_solve(lp);
    DesignResult res;
    if (sol.status != LpStatus::optimal) {
        res.feasible = false;
        return res;
    }
    std::map<int, double> probs;
    double sum = 0.0;
    for (int d = 1; d <= D; ++d) {
        double v = sol.x[static_cast<std::size_t>(d - 1)];
        if (v > 1e-12) {
            probs[d] = v;
            sum += v;
        }
    }
    if (probs.empty() || sum <= 0.0) {
        res.feasible = false;
        return res;
    }
    for (auto& [d, v] : probs) v /= sum;
    res.dist = DegreeDistribution(probs);

    // The simplex tableau accumulates rounding error on large grids, so the
    // returned vertex can violate rows by ~1e-6. Every inequality row is
    // (nonnegative Phi part) + r * ln(arg) with ln(arg) < 0, so scaling each
    // rate variable down restores strict feasibility at negligible cost.
    std::vector<double> x = sol.x;
    double phi_sum = 0.0;
    for (int d = 0; d < D; ++d) phi_sum += std::max(0.0, x[static_cast<std::size_t>(d)]);
    for (int d = 0; d < D; ++d)
        x[static_cast<std::size_t>(d)] = std::max(0.0, x[static_cast<std::size_t>(d)]) / phi_sum;
    std::vector<double> scale(x.size(), 1.0);
    for (const auto& row : lp.constraints) {
        if (row.rel != Rel::ge) continue;
        double phi_part = 0.0;
        std::size_t r_index = 0;
        double r_coef = 0.0;
        for (std::size_t j = 0; j < row.a.size(); ++j) {
            if (static_cast<int>(j) < D) {
                phi_part += row.a[j] * x[j];
            } else if (row.a[j] != 0.0) {
                r_index = j;
                r_coef = row.a[j] * x[j];
            }
        }
        if (r_coef < 0.0 && phi_part + r_coef < 0.0)
            scale[r_index] = std::min(scale[r_index],
                                      std::max(0.0, phi_part / -r_coef) * (1.0 - 1e-12));
    }
    for (std::size_t j = static_cast<std::size_t>(D); j < x.size(); ++j) x[j] *= scale[j];

    res.objective = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) res.objective += lp.objective[j] * x[j];
    for (std::size_t j = static_cast<std::size_t>(D); j < x.size(); ++j)
        res.r.push_back(x[j]);

    // Independent feasibility check: evaluate every constraint row directly.
    double min_res = std::numeric_limits<double>::infinity();
    for (const auto& row : lp.constraints) {
        double lhs = 0.0;
        for (std::size_t j = 0; j < row.a.size(); ++j) lhs += row.a[j] * x[j];
        double resv = 0.0;
        switch (row.rel) {
            case Rel::ge: resv = lhs - row.rhs; break;
            case Rel::le: resv = row.rhs - lhs; break;
            case Rel::eq: resv = -std::abs(lhs - row.rhs); break;
        }
        min_res = std::min(min_res, resv);
    }
    res.min_residual = min_res;
    res.feasible = min_res >= -1e-9;
    return res;
}

DesignResult fcc_design(const DesignParams& params) {
    return solve_design(build_fcc_lp(params), params.D);
}

DesignResult pcc_design_fixed_point(const DesignParams& params, int max_outer,
                                    int part_cap) {
    params.validate();
    if (params.M < 2)
        throw std::invalid_argument("pcc_design_fixed_point: need M >= 2");
    const int L = std::min(static_cast<int>(std::ceil(params.k / params.N)),
                           part_cap);
    std::vector<double> s;
    for (int i = 1; i <= L; ++i)
        s.push_back(std::min(i * params.N, params.k - 1.0));

    DesignResult res;
    for (int outer = 1; outer <= max_outer; ++outer) {
        res = solve_design(build_pcc_lp(params, s), params.D);
        res.outer_iterations = outer;
        if (!res.feasible) {
            res.converged = false;
            res.s = s;
            return res;
        }
        // Evaluate the user-side recursion with the fresh distribution; the
        // design assumes cooperative links, so e = 0 here.
        auto traj = pcc_user_recursion(res.dist, params.k, params.N, params.M,
                                       0.0, L);
        // Full updates early (the first moves are large), then averaged
        // updates with a diminishing step: near full decode the last level
        // sits on a steep part of the recursion and the raw map can chatter
        // between nearly tied solutions, so plain iteration never settles.
        // Averaging drives the iterate to the centroid of that chatter.
        const double alpha = outer < 3 ? 1.0 : 1.0 / (outer - 1);
        double max_delta = 0.0;
        for (int i = 0; i < L; ++i) {
            double si = std::min(traj.s[static_cast<std::size_t>(i)], params.k - 1.0);
            double step = alpha * (si - s[static_cast<std::size_t>(i)]);
            max_delta = std::max(max_delta, std::abs(step));
            s[static_cast<std::size_t>(i)] += step;
        }
        if (max_delta < 0.001 * params.k) {
            res.converged = true;
            res.s = s;
            return res;
        }
    }
    res.converged = false;
    res.s = s;
    return res;
}

}  // namespace rcc
