#pragma once

#include <cstdint>
#include <vector>

#include "rcc/symbols.hpp"

namespace rcc {

// The bipartite graph one observer runs the peeling decoder on.
struct SymbolGraph {
    std::vector<CodedSymbol> coded;
    RecoveryState known;
};

// Removes every edge into a known symbol (XORing the known payload out in
// payload mode). Degree-0 symbols are kept but inert.
SymbolGraph strip_known(SymbolGraph graph, const RecoveryState& known,
                        const std::vector<Payload>* known_payloads = nullptr);

// Sweep-limited peeling: each sweep resolves all currently degree-1 coded
// symbols, then strips their edges. Stops when no degree-1 symbol remains or
// max_iters sweeps are done. The graph must already be stripped against
// graph.known. Returns the newly recovered symbols; updates graph in place.
std::vector<SymbolId> peel_decode(SymbolGraph& graph, int max_iters);

// Incremental peeling decoder: symbols are added as they arrive and the
// degree-1 cascade runs to its fixed point immediately, so "attempt decode"
// after every time slot is free. This is the decoder used by all protocol
// runners and by the precode.
class PeelingDecoder {
  public:
    PeelingDecoder(std::uint32_t users, std::uint32_t k, bool payload_mode = false);

    // Declare a message symbol known a priori (an encoder's own block).
    void set_known(SymbolId id, const Payload* payload = nullptr);

    void add(const CodedSymbol& s);

    const RecoveryState& recovered() const { return state_; }
    std::uint32_t count(std::uint32_t user) const { return state_.count(user); }
    std::uint32_t total() const { return state_.total(); }

    // Symbols recovered since the last call (a priori knowns excluded).
    std::vector<SymbolId> take_newly_recovered();

    const Payload& payload_of(SymbolId id) const;

  private:
    struct Entry {
        std::vector<SymbolId> unknown;
        Payload payload;
    };

    std::size_t gid(SymbolId id) const { return static_cast<std::size_t>(id.user) * k_ + id.index; }
    void strip_and_mark(SymbolId id, const Payload* payload);
    void cascade();

    std::uint32_t k_;
    bool payload_mode_;
    RecoveryState state_;
    std::vector<Entry> entries_;
    std::vector<std::vector<std::uint32_t>> adjacency_;  // gid -> entry indices
    std::vector<Payload> payloads_;                      // gid -> resolved payload
    std::vector<std::uint32_t> ripple_;                  // entries at degree 1
    std::vector<SymbolId> newly_;
};

}  // namespace rcc
