#pragma once

#include <span>
#include <vector>

#include "rcc/degree_dist.hpp"
#include "rcc/symbols.hpp"

namespace rcc {

// The index space an encoder draws neighbors from: one or more whole message
// blocks plus any individually recovered partner symbols.
class EncodingUnion {
  public:
    void add_block(std::uint32_t user, std::uint32_t k) {
        for (std::uint32_t i = 0; i < k; ++i) ids_.push_back({user, i});
    }
    void add_symbol(SymbolId id) { ids_.push_back(id); }
    std::size_t size() const { return ids_.size(); }
    SymbolId at(std::size_t i) const { return ids_[i]; }

  private:
    std::vector<SymbolId> ids_;
};

int sample_degree(const DegreeDistribution& dist, RngStream& rng);

// Generates `count` coded symbols. Each draws a degree d from `dist`
// (clamped to the union size) and then min(d, |union|) distinct neighbors
// uniformly without replacement. Throws if the union is empty.
std::vector<CodedSymbol> lt_encode(const EncodingUnion& space,
                                   const DegreeDistribution& dist, std::size_t count,
                                   RngStream& rng, std::uint32_t origin_user = 0,
                                   std::uint32_t frame = 0);

// Payload mode: fills each coded symbol with the XOR of its referenced
// source packets. `source(id)` must return the packet for any id in the union.
void fill_payloads(std::vector<CodedSymbol>& symbols,
                   const std::vector<std::vector<Payload>>& sources);

}  // namespace rcc
