#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rcc/channel.hpp"
#include "rcc/degree_dist.hpp"
#include "rcc/precode.hpp"

namespace rcc {

// Ordered key = value file. '#' starts a comment. Unknown keys are the
// caller's problem so the same parser serves scenarios, sweeps and designs.
class KeyValueFile {
  public:
    static KeyValueFile parse_file(const std::string& path);
    static KeyValueFile parse_text(const std::string& text);

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    std::string get(const std::string& key) const;                     // throws if missing
    std::string get_or(const std::string& key, const std::string& def) const;
    long get_long(const std::string& key) const;
    long get_long_or(const std::string& key, long def) const;
    double get_double(const std::string& key) const;
    double get_double_or(const std::string& key, double def) const;
    std::vector<double> get_doubles(const std::string& key) const;     // comma separated

    const std::vector<std::pair<std::string, std::string>>& entries() const { return order_; }

  private:
    std::map<std::string, std::string> values_;
    std::vector<std::pair<std::string, std::string>> order_;
};

enum class Scheme { nocoop, perfect, fcc, pcc };
enum class Fidelity { structural, payload };

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);

struct ScenarioConfig {
    std::uint32_t M = 2;
    std::uint32_t n = 0;       // message packets (payload mode); 0 = k
    std::uint32_t k = 1000;    // LT-input packets
    std::uint32_t N = 100;     // coded symbols per time slot
    std::uint32_t T_bits = 1024;
    ErasureMatrix erasures;
    Scheme scheme = Scheme::nocoop;
    std::vector<DegreeDistribution> dists;  // FCC: Phi^(1)..Phi^(M); others: one Omega
    std::uint32_t F = 1;       // PCC user-decode period
    PrecodeSpec precode;
    std::uint32_t trials = 1;
    std::uint64_t master_seed = 1;
    Fidelity fidelity = Fidelity::structural;
    std::uint32_t max_frames = 0;  // 0 = ceil(10k / N)

    std::uint32_t effective_max_frames() const {
        return max_frames ? max_frames : (10 * k + N - 1) / N;
    }

    void validate() const;

    // Deterministic digest of every semantically relevant field; written into
    // CSV headers so outputs are traceable to their inputs.
    std::string canonical() const;
    std::uint64_t hash() const;

    // Scenario files use the keys named in the struct. Distributions are
    // either "@path" or inline "d:p,d:p,..." under dist (or dist1..distM).
    static ScenarioConfig from_file(const std::string& path);
    static ScenarioConfig from_keyvalues(const KeyValueFile& kv,
                                         const std::string& base_dir = "");
};

DegreeDistribution parse_dist_spec(const std::string& spec, const std::string& base_dir);

}  // namespace rcc
