#pragma once
// AND-OR tree parameterizations for the FCC scheme: 2-user destination model
// and the general M-user model. OR types are users; AND classes are coded
// symbols grouped by the exact set of users' blocks they touch.

#include <cstdint>
#include <map>
#include <vector>

#include "rcc/andor.hpp"
#include "rcc/degree_dist.hpp"

namespace rcc {

// Generic builder. `counts` maps a generator subset Y (bitmask over M users)
// to the number of coded symbols the destination received that were encoded
// over the union of the blocks in Y; such symbols carry distribution
// phis[n(Y)-1]. `phis` has M entries (phase distributions Phi^(1)..Phi^(M)).
// Throws for M above the type-enumeration cap (default 6).
AndOrModel fcc_muser_model(const std::map<std::uint32_t, double>& counts,
                           const std::vector<DegreeDistribution>& phis,
                           double k, int M, int m_cap = 6);

// 2-user specialization: N1/N2 broadcast-phase symbols from each user with
// phi1, N3 cooperative-phase symbols (over both blocks) with phi2.
AndOrModel fcc_2user_model(double N1, double N2, double N3,
                           const DegreeDistribution& phi1,
                           const DegreeDistribution& phi2, double k);

}  // namespace rcc
