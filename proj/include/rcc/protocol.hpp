#pragma once

#include <cstdint>
#include <vector>

#include "rcc/config.hpp"

namespace rcc {

struct TranscriptStats {
    bool complete = false;
    std::uint32_t frames_used = 0;  // TFs elapsed, counting the partial final TF
    std::vector<std::uint64_t> symbols_sent;  // per user
    std::uint64_t symbols_sent_total = 0;
    double throughput = 0.0;  // M*k / symbols_sent_total; 0 for incomplete runs
    // Per TF, per user: partner message symbols this user has recovered
    // (cumulative, summed over partners). Zero rows for nocoop/perfect.
    std::vector<std::vector<std::uint32_t>> per_tf_recovery;
    std::vector<std::uint32_t> dest_decode_tf;  // per user; 0 = never
    std::vector<std::uint32_t> fcc_phase_tf;    // per user, first switch to coop; 0 = never
};

struct AggregateStats {
    std::uint32_t trials = 0;
    std::uint32_t incomplete = 0;
    double mean_throughput = 0.0;  // over complete runs
    double ci95 = 0.0;             // half width, normal approximation
    double mean_frames = 0.0;
    // Mean over trials and users of cumulative partner recovery per partner,
    // indexed by TF (truncated to the shortest observed run).
    std::vector<double> mean_user_recovery;
};

// One Monte Carlo trial of the configured scheme. Deterministic in
// (cfg, cfg.master_seed, trial_index).
TranscriptStats run_trial(const ScenarioConfig& cfg, std::uint32_t trial_index);

// All trials, optionally across a worker pool. Results are ordered by trial
// index regardless of completion order.
std::vector<TranscriptStats> run_trials(const ScenarioConfig& cfg, unsigned workers = 1);

AggregateStats aggregate(const std::vector<TranscriptStats>& runs);

// Header cost of the PCC recovered-set announcements relative to the data
// sent between user-decode epochs: (M-1) k / (T_bits N F).
double control_overhead(std::uint32_t M, std::uint32_t k, std::uint32_t T_bits,
                        std::uint32_t N, std::uint32_t F);

}  // namespace rcc
