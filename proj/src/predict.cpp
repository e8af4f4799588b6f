#include "rcc/predict.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rcc/andor.hpp"
#include "rcc/fcc_analysis.hpp"
#include "rcc/pcc_analysis.hpp"

namespace rcc {

namespace {

// Single-type AND-OR fixed point: p = exp(-alpha * omega_edge(1 - p)).
double single_user_p(const DegreeDistribution& dist, double k, double n_received) {
    double mu = dist.mean_degree();
    double alpha = n_received * mu / k;
    auto edge = [&](double x) { return dist.deriv(x) / mu; };
    double p = 1.0;
    for (int l = 0; l < 2000; ++l) {
        double next = std::exp(-alpha * edge(1.0 - p));
        if (std::abs(next - p) < 1e-10) return next;
        p = next;
    }
    return p;
}

}  // namespace

double single_user_required(const DegreeDistribution& dist, double k,
                            double target_unrecovered) {
    double target = target_unrecovered / k;
    double lo = k, hi = k;
    while (single_user_p(dist, k, hi) * 1.0 > target && hi < 100.0 * k) hi *= 1.5;
    if (single_user_p(dist, k, hi) > target)
        return std::numeric_limits<double>::infinity();
    lo = hi / 1.5;
    for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        if (single_user_p(dist, k, mid) > target)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

ThroughputPrediction predict_throughput(const ScenarioConfig& cfg) {
    if (cfg.M != 2)
        throw std::invalid_argument("predict_throughput: 2-user scenarios only");
    const double k = cfg.k, N = cfg.N;
    const double e1 = cfg.erasures.user_to_dest.at(0);
    const double e2 = cfg.erasures.user_to_dest.at(1);
    const double e = cfg.erasures.inter_user.at(0).at(1);
    const double max_frames = cfg.effective_max_frames();
    ThroughputPrediction out;

    auto finish = [&](double frames) {
        if (frames > max_frames || !std::isfinite(frames)) return;
        out.frames = frames;
        out.throughput = 2.0 * k / (frames * 2.0 * N);
        out.complete = true;
    };

    switch (cfg.scheme) {
        case Scheme::nocoop: {
            double n_req = single_user_required(cfg.dists[0], k);
            double r1 = n_req / (N * (1.0 - e1));
            double r2 = n_req / (N * (1.0 - e2));
            finish(std::max(r1, r2));
            break;
        }
        case Scheme::perfect: {
            double n_req = single_user_required(cfg.dists[0], 2.0 * k, 1.0);
            finish(n_req / (N * (2.0 - e1 - e2)));
            break;
        }
        case Scheme::fcc: {
            const auto& phi1 = cfg.dists[0];
            const auto& phi2 = cfg.dists[1];
            double n_user = single_user_required(phi1, k);
            double r_sw1 = n_user / (N * (1.0 - e));  // U1 decoding U2
            double r_sw2 = r_sw1;                      // reciprocal channel
            auto deficit = [&](double r) {
                double c1 = N * (1.0 - e1) * std::min(r, r_sw1);
                double c2 = N * (1.0 - e2) * std::min(r, r_sw2);
                double c3 = N * (1.0 - e1) * std::max(0.0, r - r_sw1) +
                            N * (1.0 - e2) * std::max(0.0, r - r_sw2);
                auto model = fcc_2user_model(c1, c2, c3, phi1, phi2, k);
                auto res = and_or_iterate(model);
                return k * (res.p[0] + res.p[1]) - 1.0;
            };
            double lo = 1.0, hi = 1.0;
            while (deficit(hi) > 0.0 && hi <= max_frames) hi *= 1.5;
            if (deficit(hi) > 0.0) break;  // incomplete
            for (int it = 0; it < 40; ++it) {
                double mid = 0.5 * (lo + hi);
                (deficit(mid) > 0.0 ? lo : hi) = mid;
            }
            finish(hi);
            break;
        }
        case Scheme::pcc: {
            const auto& omega = cfg.dists[0];
            int user_frames = static_cast<int>(
                std::min(max_frames, std::ceil(k / N) * 3.0 + 10.0));
            auto traj = pcc_user_recursion(omega, k, N, 2, e, user_frames);
            auto sliced = pcc_parts_from_trajectory(traj.s, k, 2, 6);
            std::vector<double> n_rx{N * (1.0 - e1), N * (1.0 - e2)};
            const auto& layout = sliced.layout;
            std::vector<double> flat_len(layout.total_parts());
            for (std::size_t t = 0; t < 2; ++t)
                for (std::size_t i = 0; i < layout.part_len[t].size(); ++i)
                    flat_len[layout.flat_index(t, i)] = layout.part_len[t][i];
            auto deficit = [&](double r) {
                int full = static_cast<int>(std::ceil(r));
                double w = 1.0 - (full - r);
                auto t_v = pcc_destination_tv_estimate(omega, sliced, n_rx, full, w);
                auto model = pcc_destination_model(omega, layout, t_v);
                auto res = and_or_iterate(model);
                double unrec = 0.0;
                for (std::size_t g = 0; g < flat_len.size(); ++g)
                    unrec += res.p[g] * flat_len[g];
                return unrec - 1.0;
            };
            double lo = 1.0, hi = 1.0;
            while (deficit(hi) > 0.0 && hi <= max_frames) hi *= 1.5;
            if (deficit(hi) > 0.0) break;
            for (int it = 0; it < 40; ++it) {
                double mid = 0.5 * (lo + hi);
                (deficit(mid) > 0.0 ? lo : hi) = mid;
            }
            finish(hi);
            break;
        }
    }
    return out;
}

}  // namespace rcc
