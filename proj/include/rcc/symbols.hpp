#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace rcc {

// Identifies one message symbol: (user, index within the user's block of k).
struct SymbolId {
    std::uint32_t user = 0;
    std::uint32_t index = 0;

    friend bool operator==(const SymbolId&, const SymbolId&) = default;
    friend auto operator<=>(const SymbolId&, const SymbolId&) = default;
};

using Payload = std::vector<std::uint64_t>;  // T bits, packed

inline void xor_into(Payload& dst, const Payload& src) {
    if (dst.size() != src.size()) throw std::invalid_argument("payload size mismatch");
    for (size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
}

struct CodedSymbol {
    std::uint32_t origin_user = 0;
    std::uint32_t frame = 0;
    std::vector<SymbolId> neighbors;  // distinct, non-empty at creation
    Payload payload;                  // empty in structural mode
};

// Which message symbols an observer has resolved, per source user.
class RecoveryState {
  public:
    RecoveryState() = default;
    RecoveryState(std::uint32_t users, std::uint32_t k)
        : k_(k), bits_(users, std::vector<std::uint8_t>(k, 0)), counts_(users, 0) {}

    bool known(SymbolId id) const { return bits_[id.user][id.index] != 0; }

    // Returns true if the symbol was newly marked.
    bool mark(SymbolId id) {
        auto& b = bits_[id.user][id.index];
        if (b) return false;
        b = 1;
        ++counts_[id.user];
        return true;
    }

    void mark_all(std::uint32_t user) {
        for (std::uint32_t i = 0; i < k_; ++i) bits_[user][i] = 1;
        counts_[user] = k_;
    }

    std::uint32_t count(std::uint32_t user) const { return counts_[user]; }
    std::uint32_t total() const {
        std::uint32_t t = 0;
        for (auto c : counts_) t += c;
        return t;
    }
    std::uint32_t users() const { return static_cast<std::uint32_t>(bits_.size()); }
    std::uint32_t block_size() const { return k_; }

  private:
    std::uint32_t k_ = 0;
    std::vector<std::vector<std::uint8_t>> bits_;
    std::vector<std::uint32_t> counts_;
};

}  // namespace rcc
