#pragma once
// Generalized AND-OR tree evaluation for multi-type LT decoding analysis.
//
// OR types are message-symbol classes (users, or message parts); AND node
// classes are coded-symbol groups identified by the set of OR types they may
// touch.  The recursion evaluated here is
//
//   p_{l,j} = prod_{V : j in V} exp(-alpha_{j,V} * S_{V,j}(p_{l-1}))
//   S_{V,j} = sum_I beta_{V,j}(I) * prod_w (1 - p_{l-1,w})^{I_w}
//
// where I counts the *other* children of an AND node reached through an edge
// into a type-j OR node.

#include <cstdint>
#include <vector>

namespace rcc {

struct BetaTerm {
    std::vector<std::uint16_t> other_counts;  // per OR type, length n_or_types
    double prob = 0.0;
};

struct AndNodeClass {
    std::vector<std::uint8_t> v;                // membership indicator per OR type
    std::vector<double> alpha;                  // alpha[j]; meaningful where v[j]
    std::vector<std::vector<BetaTerm>> beta;    // beta[j]; empty where !v[j]
};

struct AndOrModel {
    std::size_t n_or_types = 0;
    std::vector<AndNodeClass> classes;

    void validate() const;  // throws std::invalid_argument
};

struct AndOrResult {
    std::vector<double> p;       // final probability of non-recovery per OR type
    int iterations = 0;
    bool converged = false;
    bool monotone = true;        // p non-increasing in l for every type
};

AndOrResult and_or_iterate(const AndOrModel& model, int max_iters = 1000,
                           double tol = 1e-8);

}  // namespace rcc
