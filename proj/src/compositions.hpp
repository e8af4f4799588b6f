#pragma once
// Internal helper shared by the FCC and PCC model builders: enumerate the
// neighbor-count compositions of one coded symbol over a set of blocks.

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "rcc/hypergeom.hpp"

namespace rcc::detail {

// Visits every composition c (zeros allowed) of `d` neighbor picks over
// blocks of sizes `lens`, with the hypergeometric weight
//   prod_m C(lens[m], c_m) / C(sum(lens), d),
// which sums to one over all compositions. Leaves lighter than `prune` are
// skipped. `fn(c, w)` receives the composition and its weight.
template <typename Fn>
inline void for_each_composition(const std::vector<double>& lens, int d, double prune,
                                 Fn&& fn) {
    const std::size_t n = lens.size();
    double space = 0.0;
    for (double l : lens) space += l;
    const double log_denom = log_binomial(space, d);
    if (!std::isfinite(log_denom)) return;

    std::vector<std::uint16_t> c(n, 0);
    auto rec = [&](auto&& self, std::size_t pos, int remaining, double log_num) -> void {
        if (pos + 1 == n) {
            double lb = log_binomial(lens[pos], remaining);
            if (!std::isfinite(lb)) return;
            double w = std::exp(log_num + lb - log_denom);
            if (w < prune) return;
            c[pos] = static_cast<std::uint16_t>(remaining);
            fn(c, w);
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            double lb = log_binomial(lens[pos], v);
            if (!std::isfinite(lb)) continue;
            c[pos] = static_cast<std::uint16_t>(v);
            self(self, pos + 1, remaining - v, log_num + lb);
        }
    };
    if (n > 0) rec(rec, 0, d, 0.0);
}

}  // namespace rcc::detail
