#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rcc/rng.hpp"
#include "rcc/symbols.hpp"

namespace rcc {

struct PrecodeSpec {
    enum class Kind { none, regular_bipartite };
    Kind kind = Kind::none;
    double rate = 1.0;      // n / k
    int check_degree = 57;  // message symbols per check (regular_bipartite)
};

// Systematic high-rate outer code: k intermediates = n message packets plus
// k - n parity packets, each parity the XOR of `check_degree` message
// packets. The edge assignment is LDPC-style near-regular on the message
// side (repeated random permutations), so every message symbol sits in the
// same number of checks up to +/-1. Decoding reuses the peeling machinery:
// each check is a coded symbol over its parity and message packets.
class Precode {
  public:
    // Builds the check graph for n message packets; k = ceil(n / rate).
    Precode(std::uint32_t n, const PrecodeSpec& spec, RngStream& rng);

    std::uint32_t n() const { return n_; }
    std::uint32_t k() const { return k_; }

    // message (n packets) -> k intermediate packets (systematic prefix).
    std::vector<Payload> encode(const std::vector<Payload>& message) const;

    struct DecodeResult {
        bool complete = false;
        std::vector<std::uint8_t> message_known;  // n flags
        std::vector<Payload> message;             // payload mode only
    };

    // Structural decode: which message packets are implied by the recovered
    // intermediates. `intermediate_known` has k flags.
    DecodeResult decode(const std::vector<std::uint8_t>& intermediate_known,
                        const std::vector<Payload>* intermediates = nullptr) const;

  private:
    std::uint32_t n_ = 0, k_ = 0;
    PrecodeSpec spec_;
    std::vector<std::vector<std::uint32_t>> checks_;  // per parity: message indices
};

}  // namespace rcc
