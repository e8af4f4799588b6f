#pragma once
// Small dense LP solver (two-phase primal simplex). Maximization form:
//   maximize c.x  subject to rows {a.x <= / >= / = rhs}, lo <= x <= hi.

#include <limits>
#include <vector>

namespace rcc {

enum class Rel { le, ge, eq };

struct LpConstraint {
    std::vector<double> a;
    Rel rel = Rel::le;
    double rhs = 0.0;
};

struct LpProblem {
    std::vector<double> objective;          // maximize
    std::vector<LpConstraint> constraints;
    std::vector<double> lower;              // default 0
    std::vector<double> upper;              // default +inf

    std::size_t num_vars() const { return objective.size(); }
    void validate() const;  // throws std::invalid_argument
};

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    std::vector<double> x;
    double objective = 0.0;
};

LpSolution lp_solve(const LpProblem& p);

}  // namespace rcc
