#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "rcc/degree_dist.hpp"

namespace rcc {

// log C(n, r) for real n >= 0, integer-ish real r. Returns -inf when the
// coefficient is zero (r < 0 or r > n).
inline double log_binomial(double n, double r) {
    if (r < 0.0 || r > n) return -std::numeric_limits<double>::infinity();
    if (r == 0.0 || r == n) return 0.0;
    return std::lgamma(n + 1.0) - std::lgamma(r + 1.0) - std::lgamma(n - r + 1.0);
}

// Transfer weight: probability that a symbol of original degree `orig` over
// `total` source symbols retains degree `d` after `known` of the sources are
// stripped. Hypergeometric, computed in log space so k ~ 1e4 is safe.
inline double strip_transfer(double orig, double d, double total, double known) {
    double lg = log_binomial(known, orig - d) + log_binomial(total - known, d) -
                log_binomial(total, orig);
    return std::isfinite(lg) ? std::exp(lg) : 0.0;
}

// Degree distribution of coded symbols after all edges into `known` of the
// `total` source symbols have been removed (degree 0 allowed). `total` and
// `known` may be non-integer: the analysis recursions keep recovery counts
// real-valued.
inline ConditionalDistribution conditional_distribution_real(
        const DegreeDistribution& dist, double total, double known) {
    if (known < 0.0 || known >= total)
        throw std::invalid_argument("conditional_distribution: need 0 <= known < total");
    const int max_d = dist.max_degree();
    std::vector<double> out(static_cast<size_t>(max_d) + 1, 0.0);
    for (int d = 0; d <= max_d; ++d) {
        double acc = 0.0;
        for (int orig = std::max(d, 1); orig <= max_d; ++orig) {
            double p = dist.prob(orig);
            if (p == 0.0) continue;
            double term = p * strip_transfer(orig, d, total, known);
            if (acc > 0.0 && term < 1e-14 * acc) continue;
            acc += term;
        }
        out[static_cast<size_t>(d)] = acc;
    }
    // Mass lost to truncation is numerically negligible; fold the residual
    // back so the vector is an exact probability distribution.
    double sum = 0.0;
    for (double p : out) sum += p;
    for (double& p : out) p /= sum;
    return ConditionalDistribution(std::move(out));
}

inline ConditionalDistribution conditional_distribution(
        const DegreeDistribution& dist, long total, long known) {
    return conditional_distribution_real(dist, static_cast<double>(total),
                                         static_cast<double>(known));
}

}  // namespace rcc
