#include <doctest.h>

#include <string>

#include "rcc/protocol.hpp"

using namespace rcc;

static ScenarioConfig make_cfg(const std::string& extra) {
    std::string base = "M = 2\nk = 300\nN = 100\ne_dest = 0.1\n"
                       "dist = 1:0.05,2:0.55,4:0.25,6:0.05,8:0.1\n"
                       "trials = 4\nseed = 5\n";
    return ScenarioConfig::from_keyvalues(KeyValueFile::parse_text(base + extra));
}

TEST_CASE("run_trial is deterministic in (config, trial index)") {
    auto cfg = make_cfg("scheme = pcc\ne_inter = 0.1\n");
    auto a = run_trial(cfg, 2);
    auto b = run_trial(cfg, 2);
    CHECK(a.complete == b.complete);
    CHECK(a.frames_used == b.frames_used);
    CHECK(a.symbols_sent_total == b.symbols_sent_total);
    CHECK(a.per_tf_recovery == b.per_tf_recovery);
    auto c = run_trial(cfg, 3);
    CHECK(a.symbols_sent_total != c.symbols_sent_total);
}

TEST_CASE("worker count does not change results") {
    auto cfg = make_cfg("scheme = pcc\ne_inter = 0.2\n");
    auto seq = run_trials(cfg, 1);
    auto par = run_trials(cfg, 4);
    REQUIRE(seq.size() == par.size());
    for (size_t i = 0; i < seq.size(); ++i) {
        CHECK(seq[i].complete == par[i].complete);
        CHECK(seq[i].symbols_sent_total == par[i].symbols_sent_total);
        CHECK(seq[i].frames_used == par[i].frames_used);
    }
}

TEST_CASE("throughput accounting matches symbols sent") {
    auto cfg = make_cfg("scheme = nocoop\n");
    auto t = run_trial(cfg, 0);
    if (t.complete) {
        CHECK(t.throughput ==
              doctest::Approx(2.0 * cfg.k / static_cast<double>(t.symbols_sent_total)));
        std::uint64_t sum = 0;
        for (auto s : t.symbols_sent) sum += s;
        CHECK(sum == t.symbols_sent_total);
    }
}

TEST_CASE("the run ends at the global acknowledgement, not per user") {
    // The destination acknowledges once everything is decoded; until then
    // every user transmits in its slot each frame. With asymmetric links the
    // fast user keeps sending while the slow one catches up, so per-user
    // totals differ by at most one slot (the final frame can end mid-way).
    auto cfg = make_cfg("scheme = nocoop\n");
    cfg.erasures.user_to_dest = {0.0, 0.6};
    auto t = run_trial(cfg, 0);
    REQUIRE(t.complete);
    CHECK(t.symbols_sent[0] >= t.symbols_sent[1]);
    CHECK(t.symbols_sent[0] - t.symbols_sent[1] <= cfg.N);
    CHECK(t.symbols_sent_total <=
          static_cast<std::uint64_t>(2 * cfg.N) * t.frames_used);
    // The slow user's link sets the pace: frame count at least k/(N(1-e2)).
    CHECK(t.frames_used >= cfg.k / (cfg.N * 0.4));
}

TEST_CASE("pcc with opaque inter-user channel behaves like nocoop") {
    auto pcc = make_cfg("scheme = pcc\ne_inter = 1.0\n");
    auto noc = make_cfg("scheme = nocoop\n");
    auto a = run_trial(pcc, 1);
    auto b = run_trial(noc, 1);
    CHECK(a.complete == b.complete);
    // No partner symbols ever recovered.
    for (const auto& row : a.per_tf_recovery)
        for (auto v : row) CHECK(v == 0);
    CHECK(a.frames_used == b.frames_used);
}

TEST_CASE("partner recovery is cumulative and monotone") {
    auto cfg = make_cfg("scheme = pcc\ne_inter = 0.0\n");
    auto t = run_trial(cfg, 0);
    REQUIRE(!t.per_tf_recovery.empty());
    for (std::uint32_t u = 0; u < 2; ++u)
        for (size_t i = 1; i < t.per_tf_recovery.size(); ++i)
            CHECK(t.per_tf_recovery[i][u] >= t.per_tf_recovery[i - 1][u]);
}

TEST_CASE("fcc switches phases and completes on a clean channel") {
    std::string base = "scheme = fcc\nM = 2\nk = 300\nN = 100\ne_dest = 0.1\ne_inter = 0.0\n"
                       "dist1 = 1:0.05,2:0.55,4:0.25,6:0.05,8:0.1\n"
                       "dist2 = 1:0.05,2:0.55,4:0.25,6:0.05,8:0.1\n"
                       "trials = 1\nseed = 6\n";
    auto cfg = ScenarioConfig::from_keyvalues(KeyValueFile::parse_text(base));
    auto t = run_trial(cfg, 0);
    REQUIRE(t.complete);
    // at least one user decoded its partner and switched to cooperative encoding
    CHECK((t.fcc_phase_tf[0] > 0 || t.fcc_phase_tf[1] > 0));
}

TEST_CASE("perfect cooperation completes at least as fast as nocoop") {
    auto noc = make_cfg("scheme = nocoop\n");
    auto per = make_cfg("scheme = perfect\n");
    double fn = 0, fp = 0;
    for (std::uint32_t t = 0; t < 4; ++t) {
        auto a = run_trial(noc, t);
        auto b = run_trial(per, t);
        REQUIRE(a.complete);
        REQUIRE(b.complete);
        fn += a.frames_used;
        fp += b.frames_used;
    }
    CHECK(fp <= fn + 4);  // within one TF per trial on symmetric channels
}

TEST_CASE("payload mode reproduces structural recovery") {
    auto s = make_cfg("scheme = pcc\ne_inter = 0.1\n");
    auto p = make_cfg("scheme = pcc\ne_inter = 0.1\nfidelity = payload\nT = 128\n");
    auto ts = run_trial(s, 0);
    auto tp = run_trial(p, 0);
    CHECK(ts.complete == tp.complete);
    CHECK(ts.frames_used == tp.frames_used);
    CHECK(ts.symbols_sent_total == tp.symbols_sent_total);
}

TEST_CASE("control overhead reproduces the published percentages") {
    // k/N = 10: k=10000, N=1000, T=1024 bits.
    CHECK(100 * control_overhead(2, 10000, 1024, 1000, 1) == doctest::Approx(0.97).epsilon(0.011));
    CHECK(100 * control_overhead(2, 10000, 1024, 1000, 2) == doctest::Approx(0.48).epsilon(0.021));
    CHECK(100 * control_overhead(2, 10000, 1024, 1000, 3) == doctest::Approx(0.32).epsilon(0.04));
    CHECK(100 * control_overhead(2, 10000, 1024, 1000, 4) == doctest::Approx(0.24).epsilon(0.021));
    // k/N = 5: k=5000.
    CHECK(100 * control_overhead(2, 5000, 1024, 1000, 1) == doctest::Approx(0.48).epsilon(0.021));
    CHECK(100 * control_overhead(2, 5000, 1024, 1000, 2) == doctest::Approx(0.24).epsilon(0.021));
    CHECK(100 * control_overhead(2, 5000, 1024, 1000, 3) == doctest::Approx(0.17).epsilon(0.04));
    CHECK(100 * control_overhead(2, 5000, 1024, 1000, 4) == doctest::Approx(0.12).epsilon(0.05));
}

TEST_CASE("aggregate computes mean and CI over complete runs") {
    auto cfg = make_cfg("scheme = nocoop\n");
    auto runs = run_trials(cfg, 1);
    auto agg = aggregate(runs);
    CHECK(agg.trials == 4);
    double mean = 0;
    int n = 0;
    for (const auto& r : runs)
        if (r.complete) {
            mean += r.throughput;
            ++n;
        }
    if (n) {
        mean /= n;
        CHECK(agg.mean_throughput == doctest::Approx(mean));
    }
    CHECK(agg.incomplete == static_cast<std::uint32_t>(runs.size() - static_cast<size_t>(n)));
}
