#include "rcc/protocol.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "rcc/lt.hpp"
#include "rcc/peeling.hpp"

namespace rcc {

namespace {

// Stream labels inside one trial. Every (frame, link) pair is unique, the
// same discipline for all schemes so equal-seed trajectories line up.
enum LinkSlot : std::uint64_t { kEncode = 0, kToDest = 1, kToUserBase = 2 };

std::uint64_t link_label(std::uint32_t tx_user, std::uint64_t slot, std::uint32_t M) {
    return static_cast<std::uint64_t>(tx_user) * (M + 2) + slot;
}

struct UserState {
    EncodingUnion enc_union;
    std::size_t dist_index = 0;             // FCC: m = fully decoded partners
    std::vector<std::uint8_t> in_union;     // gid -> already in encoding union
    std::vector<CodedSymbol> overheard;     // buffered until the decode epoch
    std::uint32_t coop_since_tf = 0;        // FCC: first cooperative TF
};

}  // namespace

double control_overhead(std::uint32_t M, std::uint32_t k, std::uint32_t T_bits,
                        std::uint32_t N, std::uint32_t F) {
    if (M == 0 || k == 0 || T_bits == 0 || N == 0 || F == 0)
        throw std::invalid_argument("control_overhead: all arguments must be positive");
    return static_cast<double>(M - 1) * k /
           (static_cast<double>(T_bits) * N * F);
}

TranscriptStats run_trial(const ScenarioConfig& cfg, std::uint32_t trial) {
    const std::uint32_t M = cfg.M, k = cfg.k, N = cfg.N;
    const bool payload = cfg.fidelity == Fidelity::payload;
    const bool coop = cfg.scheme == Scheme::fcc || cfg.scheme == Scheme::pcc;
    const std::uint32_t max_frames = cfg.effective_max_frames();
    const std::uint32_t words = (cfg.T_bits + 63) / 64;

    TranscriptStats stats;
    stats.symbols_sent.assign(M, 0);
    stats.dest_decode_tf.assign(M, 0);
    stats.fcc_phase_tf.assign(M, 0);

    // Sources. In payload mode each user draws n message packets and precodes
    // them into k intermediates; LT runs over the intermediates.
    RngStream setup_rng = RngStream::derive(cfg.master_seed, trial, 0, 0);
    std::vector<Precode> precodes;
    std::vector<std::vector<Payload>> intermediates(M);  // payload mode only
    std::vector<std::vector<Payload>> messages(M);
    if (payload) {
        for (std::uint32_t u = 0; u < M; ++u) {
            precodes.emplace_back(cfg.n, cfg.precode, setup_rng);
            if (precodes[u].k() != k)
                throw std::runtime_error("config: precode rate and n do not yield k");
            messages[u].resize(cfg.n);
            for (auto& p : messages[u]) {
                p.resize(words);
                for (auto& w : p) w = setup_rng.next_u64();
            }
            intermediates[u] = precodes[u].encode(messages[u]);
        }
    } else if (cfg.precode.kind != PrecodeSpec::Kind::none) {
        // Structural runs treat full intermediate recovery as success; the
        // precode never enters the loop.
    }

    PeelingDecoder dest(M, k, payload);
    std::vector<PeelingDecoder> user_dec;  // coop schemes only
    std::vector<UserState> users(M);
    for (std::uint32_t u = 0; u < M; ++u) {
        auto& st = users[u];
        st.in_union.assign(static_cast<std::size_t>(M) * k, 0);
        if (cfg.scheme == Scheme::perfect) {
            for (std::uint32_t v = 0; v < M; ++v) st.enc_union.add_block(v, k);
        } else {
            st.enc_union.add_block(u, k);
            for (std::uint32_t i = 0; i < k; ++i)
                st.in_union[static_cast<std::size_t>(u) * k + i] = 1;
        }
    }
    if (coop) {
        for (std::uint32_t u = 0; u < M; ++u) {
            user_dec.emplace_back(M, k, payload);
            for (std::uint32_t i = 0; i < k; ++i)
                user_dec[u].set_known({u, i}, payload ? &intermediates[u][i] : nullptr);
        }
    }

    // Payload lookup for encoding: knowledge[u][v][i] is user u's copy of
    // user v's intermediate packet i (empty until decoded).
    std::vector<std::vector<std::vector<Payload>>> knowledge;
    if (payload) {
        knowledge.assign(M, std::vector<std::vector<Payload>>(M, std::vector<Payload>(k)));
        for (std::uint32_t u = 0; u < M; ++u)
            for (std::uint32_t v = 0; v < M; ++v)
                if (v == u || cfg.scheme == Scheme::perfect) knowledge[u][v] = intermediates[v];
    }

    auto dest_done = [&]() {
        if (dest.total() != static_cast<std::uint64_t>(M) * k) {
            if (!payload || precodes.empty()) return false;
            // Payload mode with a real precode: the outer code may close the
            // remaining gap before the LT graph does.
            for (std::uint32_t u = 0; u < M; ++u) {
                std::vector<std::uint8_t> flags(k, 0);
                std::vector<Payload> vals(k);
                for (std::uint32_t i = 0; i < k; ++i)
                    if (dest.recovered().known({u, i})) {
                        flags[i] = 1;
                        vals[i] = dest.payload_of({u, i});
                    }
                auto res = precodes[u].decode(flags, &vals);
                if (!res.complete) return false;
            }
            return true;
        }
        return true;
    };

    bool done = false;
    std::uint32_t tf = 0;
    for (tf = 1; tf <= max_frames && !done; ++tf) {
        for (std::uint32_t i = 0; i < M && !done; ++i) {
            auto& st = users[i];
            RngStream enc_rng = RngStream::derive(cfg.master_seed, trial, tf,
                                                  link_label(i, kEncode, M));
            const DegreeDistribution& dist =
                cfg.scheme == Scheme::fcc ? cfg.dists[st.dist_index] : cfg.dists[0];
            auto symbols = lt_encode(st.enc_union, dist, N, enc_rng, i, tf);
            if (payload) fill_payloads(symbols, knowledge[i]);
            stats.symbols_sent[i] += N;

            RngStream ch_rng = RngStream::derive(cfg.master_seed, trial, tf,
                                                 link_label(i, kToDest, M));
            for (auto& s : transmit(symbols, cfg.erasures.user_to_dest[i], ch_rng))
                dest.add(s);
            for (std::uint32_t u = 0; u < M; ++u)
                if (stats.dest_decode_tf[u] == 0 && dest.count(u) == k)
                    stats.dest_decode_tf[u] = tf;
            if (dest_done()) {
                done = true;  // ACK at this TS boundary
                break;
            }

            if (coop) {
                for (std::uint32_t j = 0; j < M; ++j) {
                    if (j == i) continue;
                    RngStream iu_rng = RngStream::derive(
                        cfg.master_seed, trial, tf, link_label(i, kToUserBase + j, M));
                    auto surv = transmit(symbols, cfg.erasures.inter_user[i][j], iu_rng);
                    auto& buf = users[j].overheard;
                    buf.insert(buf.end(), surv.begin(), surv.end());
                }
            }
        }
        if (done) break;

        // TF end: user-side decoding.
        if (coop) {
            const bool epoch = cfg.scheme == Scheme::fcc || tf % cfg.F == 0;
            for (std::uint32_t u = 0; u < M; ++u) {
                auto& st = users[u];
                if (epoch) {
                    for (const auto& s : st.overheard) user_dec[u].add(s);
                    st.overheard.clear();
                }
                auto fresh = user_dec[u].take_newly_recovered();
                if (cfg.scheme == Scheme::pcc) {
                    for (const auto& id : fresh) {
                        st.enc_union.add_symbol(id);
                        st.in_union[static_cast<std::size_t>(id.user) * k + id.index] = 1;
                        if (payload)
                            knowledge[u][id.user][id.index] = user_dec[u].payload_of(id);
                    }
                } else {  // FCC: whole blocks only, on full partner recovery
                    if (payload)
                        for (const auto& id : fresh)
                            knowledge[u][id.user][id.index] = user_dec[u].payload_of(id);
                    std::size_t decoded_partners = 0;
                    for (std::uint32_t v = 0; v < M; ++v) {
                        if (v == u) continue;
                        if (user_dec[u].count(v) == k) {
                            ++decoded_partners;
                            std::size_t base = static_cast<std::size_t>(v) * k;
                            if (!st.in_union[base]) {
                                st.enc_union.add_block(v, k);
                                for (std::uint32_t x = 0; x < k; ++x) st.in_union[base + x] = 1;
                            }
                        }
                    }
                    if (decoded_partners > st.dist_index) {
                        st.dist_index = decoded_partners;  // Phi^(m+1) from next TF
                        if (st.coop_since_tf == 0) {
                            st.coop_since_tf = tf + 1;
                            stats.fcc_phase_tf[u] = tf + 1;
                        }
                    }
                }
            }
        }
        stats.per_tf_recovery.emplace_back(M, 0);
        if (coop)
            for (std::uint32_t u = 0; u < M; ++u)
                stats.per_tf_recovery.back()[u] = user_dec[u].total() - k;
    }

    stats.complete = done;
    if (done) stats.frames_used = tf;
    else stats.frames_used = max_frames;
    stats.symbols_sent_total = 0;
    for (auto s : stats.symbols_sent) stats.symbols_sent_total += s;
    if (done && stats.symbols_sent_total > 0)
        stats.throughput =
            static_cast<double>(M) * k / static_cast<double>(stats.symbols_sent_total);
    return stats;
}

std::vector<TranscriptStats> run_trials(const ScenarioConfig& cfg, unsigned workers) {
    std::vector<TranscriptStats> out(cfg.trials);
    if (workers <= 1) {
        for (std::uint32_t t = 0; t < cfg.trials; ++t) out[t] = run_trial(cfg, t);
        return out;
    }
    std::atomic<std::uint32_t> next{0};
    auto work = [&]() {
        for (;;) {
            std::uint32_t t = next.fetch_add(1);
            if (t >= cfg.trials) return;
            out[t] = run_trial(cfg, t);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    return out;
}

AggregateStats aggregate(const std::vector<TranscriptStats>& runs) {
    AggregateStats agg;
    agg.trials = static_cast<std::uint32_t>(runs.size());
    double sum = 0.0, sumsq = 0.0, frames = 0.0;
    std::uint32_t completed = 0;
    std::size_t min_tfs = SIZE_MAX;
    for (const auto& r : runs) {
        frames += r.frames_used;
        if (!r.complete) {
            ++agg.incomplete;
            continue;
        }
        ++completed;
        sum += r.throughput;
        sumsq += r.throughput * r.throughput;
        min_tfs = std::min(min_tfs, r.per_tf_recovery.size());
    }
    if (completed > 0) {
        agg.mean_throughput = sum / completed;
        if (completed > 1) {
            double var = (sumsq - sum * sum / completed) / (completed - 1);
            agg.ci95 = 1.96 * std::sqrt(std::max(var, 0.0) / completed);
        }
    }
    agg.mean_frames = runs.empty() ? 0.0 : frames / runs.size();

    // Per-TF user recovery averaged over trials and users, per partner.
    std::size_t tfs = 0;
    for (const auto& r : runs) tfs = std::max(tfs, r.per_tf_recovery.size());
    if (tfs > 0 && !runs.empty()) {
        const std::size_t M = runs[0].symbols_sent.size();
        agg.mean_user_recovery.assign(tfs, 0.0);
        std::vector<std::uint32_t> counts(tfs, 0);
        for (const auto& r : runs) {
            for (std::size_t t = 0; t < tfs; ++t) {
                // Saturated (terminated) runs hold their last value.
                const auto& row = t < r.per_tf_recovery.size()
                                      ? r.per_tf_recovery[t]
                                      : (r.per_tf_recovery.empty() ? std::vector<std::uint32_t>()
                                                                   : r.per_tf_recovery.back());
                if (row.empty()) continue;
                double mean_u = 0.0;
                for (auto v : row) mean_u += v;
                mean_u /= static_cast<double>(row.size()) * std::max<std::size_t>(M - 1, 1);
                agg.mean_user_recovery[t] += mean_u;
                counts[t] += 1;
            }
        }
        for (std::size_t t = 0; t < tfs; ++t)
            if (counts[t]) agg.mean_user_recovery[t] /= counts[t];
    }
    return agg;
}

}  // namespace rcc
