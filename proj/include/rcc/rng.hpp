#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <tuple>

namespace rcc {

// Counter-style generator with SplitMix64 output function. Streams are
// derived from (master_seed, trial, frame, link) so that parallel trials
// never share state and every transcript is reproducible from the config.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : state_(seed) {}

    static RngStream derive(std::uint64_t master_seed, std::uint64_t trial,
                            std::uint64_t frame = 0, std::uint64_t link = 0) {
        std::uint64_t s = mix(master_seed ^ 0x243f6a8885a308d3ULL);
        s = mix(s ^ mix(trial ^ 0x13198a2e03707344ULL));
        s = mix(s ^ mix(frame ^ 0xa4093822299f31d0ULL));
        s = mix(s ^ mix(link ^ 0x082efa98ec4e6c89ULL));
        return RngStream(s);
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    // Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in {0, 1, ..., n-1}, n > 0. Unbiased (Lemire rejection).
    std::uint64_t next_below(std::uint64_t n) {
        std::uint64_t x = next_u64();
        __uint128_t m = static_cast<__uint128_t>(x) * n;
        std::uint64_t lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            std::uint64_t t = (0ULL - n) % n;
            while (lo < t) {
                x = next_u64();
                m = static_cast<__uint128_t>(x) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    bool next_bernoulli(double p) { return next_double() < p; }

    // UniformRandomBitGenerator interface.
    using result_type = std::uint64_t;
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~0ULL; }
    result_type operator()() { return next_u64(); }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t state_;
};

// Guards against two consumers deriving the same stream inside one trial.
class StreamLabelRegistry {
  public:
    RngStream open(std::uint64_t master_seed, std::uint64_t trial,
                  std::uint64_t frame, std::uint64_t link) {
        auto key = std::make_tuple(trial, frame, link);
        if (!used_.insert(key).second)
            throw std::logic_error("rng stream label registered twice");
        return RngStream::derive(master_seed, trial, frame, link);
    }

  private:
    std::set<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>> used_;
};

}  // namespace rcc
