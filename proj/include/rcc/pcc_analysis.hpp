#pragma once
// PCC analysis: per-TF user-side recovery recursion and the destination-side
// AND-OR model over message parts.

#include <cstdint>
#include <vector>

#include "rcc/andor.hpp"
#include "rcc/degree_dist.hpp"

namespace rcc {

// User-side recursion (symmetric inter-user channels). Per TF i the recursion
// strips the (M-1)s^(i) partner symbols already known, mixes the per-TF
// conditional distributions uniformly, and runs the single-type AND-OR
// fixed point p_l = exp(-alpha * delta(1 - p_{l-1})).
struct PccUserTrajectory {
    // s[i] = average number of one partner's message symbols recovered at a
    // user by the end of TF i+1 (real-valued; i = 0..frames-1).
    std::vector<double> s;
    // p_inf[i]: fixed-point non-recovery probability after TF i+1.
    std::vector<double> p_inf;
    // p_iters[i][l]: the full iteration sequence for TF i+1 (l = 0 upward).
    std::vector<std::vector<double>> p_iters;
};

PccUserTrajectory pcc_user_recursion(const DegreeDistribution& omega, double k,
                                     double N, int M, double e_inter, int frames,
                                     int max_iters = 1000, double tol = 1e-8);

// Destination-side model. Each user's message is split into parts; part
// (user t, index i) is the fraction of the message the partners recovered in
// the i-th slice of TFs (the last part is the never-recovered remainder).
struct PartsLayout {
    // part_len[t][i]: length of part i of user t's message; sums to k per user.
    std::vector<std::vector<double>> part_len;

    std::size_t users() const { return part_len.size(); }
    std::size_t total_parts() const {
        std::size_t n = 0;
        for (const auto& u : part_len) n += u.size();
        return n;
    }
    std::size_t flat_index(std::size_t t, std::size_t i) const {
        std::size_t g = 0;
        for (std::size_t a = 0; a < t; ++a) g += part_len[a].size();
        return g + i;
    }
};

// Build a layout from a user-side trajectory: at most `max_parts_per_user`
// slices per user (adjacent TFs merged evenly), plus the remainder part.
// A part belonging to TF slice (a..b] joins partner encoding unions from
// TF b+1 onward.
struct SlicedLayout {
    PartsLayout layout;
    // boundary TF (1-based, inclusive) ending each recovered slice, per user.
    std::vector<std::vector<int>> slice_end_tf;
};
SlicedLayout pcc_parts_from_trajectory(const std::vector<double>& s, double k,
                                       int users, int max_parts_per_user);

// Estimate of the per-type AND-node counts T_V at the destination for a
// symmetric run of `frames` TFs, given how many symbols the destination
// received per TF from each user (n_rx[t] = N(1-e_t)).
std::vector<double> pcc_destination_tv_estimate(const DegreeDistribution& omega,
                                                const SlicedLayout& sliced,
                                                const std::vector<double>& n_rx,
                                                int frames,
                                                double last_frame_weight = 1.0);

// Lemma-style destination model: OR types are the layout's parts, T_V indexed
// by part-subset bitmask (size 2^L). Throws when the part count exceeds the
// cap (type space is 2^L - 1).
AndOrModel pcc_destination_model(const DegreeDistribution& omega,
                                 const PartsLayout& layout,
                                 const std::vector<double>& t_v, int l_cap = 12);

}  // namespace rcc
