#pragma once
// Throughput upper bounds for the 2-user case.

#include <vector>

namespace rcc {

// Three-branch FCC bound: e is the inter-user erasure probability, e1/e2 the
// user-to-destination probabilities.
double fcc_throughput_bound(double e, double e1, double e2);

struct PccBound {
    double bound = 0.0;
    bool met = false;  // false when the load condition was never satisfied
    int l1 = 0;
    int l2 = 0;
    int l = 0;
};

// PCC bound k/((L+1)N). s is the per-TF cumulative user-side recovery
// sequence s_1, s_2, ... (values clamped to its last entry past the end).
PccBound pcc_throughput_bound(double e1, double e2, double N, double k,
                              const std::vector<double>& s,
                              int frame_cap = 100000);

}  // namespace rcc
