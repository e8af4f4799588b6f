#pragma once

#include <stdexcept>
#include <vector>

#include "rcc/rng.hpp"
#include "rcc/symbols.hpp"

namespace rcc {

// Erasure probabilities: per-user uplink e_i and reciprocal inter-user e_ij.
struct ErasureMatrix {
    std::vector<double> user_to_dest;           // e_i
    std::vector<std::vector<double>> inter_user;  // symmetric, diagonal unused

    static ErasureMatrix uniform(std::size_t users, double e_dest, double e_inter) {
        ErasureMatrix m;
        m.user_to_dest.assign(users, e_dest);
        m.inter_user.assign(users, std::vector<double>(users, e_inter));
        return m;
    }

    void validate() const {
        const std::size_t m = user_to_dest.size();
        if (inter_user.size() != m) throw std::invalid_argument("erasure matrix: size mismatch");
        for (std::size_t i = 0; i < m; ++i) {
            if (user_to_dest[i] < 0.0 || user_to_dest[i] > 1.0)
                throw std::invalid_argument("erasure matrix: e_i outside [0,1]");
            if (inter_user[i].size() != m)
                throw std::invalid_argument("erasure matrix: row size mismatch");
            for (std::size_t j = 0; j < m; ++j) {
                if (inter_user[i][j] < 0.0 || inter_user[i][j] > 1.0)
                    throw std::invalid_argument("erasure matrix: e_ij outside [0,1]");
                if (inter_user[i][j] != inter_user[j][i])
                    throw std::invalid_argument("erasure matrix: e_ij != e_ji");
            }
        }
    }
};

// Memoryless packet erasure: each symbol independently dropped with
// probability e, order preserved.
inline std::vector<CodedSymbol> transmit(const std::vector<CodedSymbol>& symbols, double e,
                                         RngStream& rng) {
    if (e < 0.0 || e > 1.0) throw std::invalid_argument("erasure probability outside [0,1]");
    std::vector<CodedSymbol> out;
    out.reserve(symbols.size());
    for (const auto& s : symbols)
        if (!rng.next_bernoulli(e)) out.push_back(s);
    return out;
}

}  // namespace rcc
