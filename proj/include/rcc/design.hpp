#pragma once
// Degree-distribution design: LP construction for the FCC and PCC schemes and
// the PCC s-trajectory fixed-point outer loop.

#include <vector>

#include "rcc/degree_dist.hpp"
#include "rcc/lp.hpp"

namespace rcc {

struct DesignParams {
    int M = 2;
    double k = 10000;
    int D = 50;            // max designed degree
    double delta = 0.01;   // undecoded-fraction target; grid ends at 1 - delta
    double c = 0.1;        // ripple constant
    double grid_step = 0.005;
    double N = 1000;       // symbols per TS (PCC fixed point only)

    std::vector<double> grid() const;  // x in [0, 1 - delta]
    void validate() const;
};

// Variables: Phi_1..Phi_D then r_0..r_{M-1}. Grid points where the log
// argument is non-positive are dropped.
LpProblem build_fcc_lp(const DesignParams& params);

// Variables: Omega_1..Omega_D then r_1..r_L (L = s.size()).
LpProblem build_pcc_lp(const DesignParams& params, const std::vector<double>& s);

struct DesignResult {
    DegreeDistribution dist{{{1, 1.0}}};
    std::vector<double> r;        // per-phase rates; epsilon_m = 1/r_m - 1
    double objective = 0.0;
    double min_residual = 0.0;    // of constraint (i), re-evaluated directly
    bool feasible = false;
    int outer_iterations = 0;     // PCC fixed point only
    bool converged = true;        // PCC fixed point only
    std::vector<double> s;        // final trajectory (PCC fixed point only)
};

// Solve an already-built design LP and re-verify feasibility by direct
// evaluation of the constraint rows at the solution.
DesignResult solve_design(const LpProblem& lp, int D);

DesignResult fcc_design(const DesignParams& params);

// Outer loop: s_i = min(iN, k-1) initially; alternate LP solve and user-side
// recursion until max |delta s| < 0.001k or max_outer rounds.
DesignResult pcc_design_fixed_point(const DesignParams& params, int max_outer = 10,
                                    int part_cap = 20);

}  // namespace rcc
