#include "rcc/lt.hpp"

#include <algorithm>
#include <stdexcept>

namespace rcc {

int sample_degree(const DegreeDistribution& dist, RngStream& rng) {
    return dist.sample(rng);
}

std::vector<CodedSymbol> lt_encode(const EncodingUnion& space,
                                   const DegreeDistribution& dist, std::size_t count,
                                   RngStream& rng, std::uint32_t origin_user,
                                   std::uint32_t frame) {
    const std::size_t n = space.size();
    if (n == 0) throw std::invalid_argument("lt_encode: no source symbols");
    std::vector<CodedSymbol> out;
    out.reserve(count);
    std::vector<std::size_t> picks;
    for (std::size_t c = 0; c < count; ++c) {
        std::size_t d = static_cast<std::size_t>(sample_degree(dist, rng));
        d = std::min(d, n);
        // Floyd's sampling: d distinct indices in [0, n).
        picks.clear();
        for (std::size_t j = n - d; j < n; ++j) {
            std::size_t t = rng.next_below(j + 1);
            if (std::find(picks.begin(), picks.end(), t) != picks.end())
                picks.push_back(j);
            else
                picks.push_back(t);
        }
        CodedSymbol sym;
        sym.origin_user = origin_user;
        sym.frame = frame;
        sym.neighbors.reserve(d);
        for (std::size_t p : picks) sym.neighbors.push_back(space.at(p));
        out.push_back(std::move(sym));
    }
    return out;
}

void fill_payloads(std::vector<CodedSymbol>& symbols,
                   const std::vector<std::vector<Payload>>& sources) {
    for (auto& sym : symbols) {
        if (sym.neighbors.empty()) continue;
        const auto& first = sources[sym.neighbors[0].user][sym.neighbors[0].index];
        sym.payload = first;
        for (std::size_t i = 1; i < sym.neighbors.size(); ++i)
            xor_into(sym.payload, sources[sym.neighbors[i].user][sym.neighbors[i].index]);
    }
}

}  // namespace rcc
