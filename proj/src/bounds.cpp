#include "rcc/bounds.hpp"

#include <algorithm>
#include <stdexcept>

namespace rcc {

double fcc_throughput_bound(double e, double e1, double e2) {
    for (double p : {e, e1, e2})
        if (p < 0.0 || p > 1.0)
            throw std::invalid_argument("fcc_throughput_bound: probability out of range");
    double lo = std::min(e1, e2), hi = std::max(e1, e2);
    if (e <= lo) return (2.0 - e1 - e2) / 2.0;
    if (e >= hi) return 1.0 - hi;
    return (1.0 - e) * (2.0 - e1 - e2) / (2.0 - e - lo);
}

namespace {

// Smallest m such that m TFs carry enough useful symbols to deliver one
// user's k message symbols, with the partner relaying the s_i fractions.
int smallest_frames(double ea, double eb, double N, double k,
                    const std::vector<double>& s, int frame_cap) {
    auto s_at = [&](int i) {  // 1-based, clamped
        if (s.empty()) return 0.0;
        int idx = std::min<int>(i, static_cast<int>(s.size()));
        return std::min(s[static_cast<std::size_t>(idx - 1)], k);
    };
    double own = 1.0;    // 1 + sum_{i=2..m} (k - s_i)/k
    double relay = 0.0;  // sum_{i=1..m} s_i/k
    for (int m = 1; m <= frame_cap; ++m) {
        if (m >= 2) own += (k - s_at(m)) / k;
        relay += s_at(m) / k;
        if (N * (1.0 - ea) * own + N * (1.0 - eb) * relay >= k) return m;
    }
    return 0;
}

}  // namespace

PccBound pcc_throughput_bound(double e1, double e2, double N, double k,
                              const std::vector<double>& s, int frame_cap) {
    if (N <= 0.0 || k <= 0.0)
        throw std::invalid_argument("pcc_throughput_bound: N and k must be positive");
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i] + 1e-9 < s[i - 1])
            throw std::invalid_argument("pcc_throughput_bound: s must be non-decreasing");
    PccBound out;
    out.l1 = smallest_frames(e1, e2, N, k, s, frame_cap);
    out.l2 = smallest_frames(e2, e1, N, k, s, frame_cap);
    if (out.l1 == 0 || out.l2 == 0) return out;  // condition never met
    out.l = std::max(out.l1, out.l2);
    out.bound = k / ((out.l + 1) * N);
    out.met = true;
    return out;
}

}  // namespace rcc
