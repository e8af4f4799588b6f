#include <doctest.h>

#include <string>

#include "rcc/config.hpp"

using namespace rcc;

#ifndef RCC_PRESET_DIR
#define RCC_PRESET_DIR "presets"
#endif

static const std::string kBase = "scheme = pcc\nM = 2\nk = 1000\nN = 100\n"
                                 "e_dest = 0.2,0.6\ne_inter = 0.1\n"
                                 "dist = 1:0.1,2:0.5,4:0.4\n"
                                 "trials = 5\nseed = 77\nF = 2\n";

TEST_CASE("scenario parses with expected fields") {
    auto cfg = ScenarioConfig::from_keyvalues(KeyValueFile::parse_text(kBase));
    CHECK(cfg.scheme == Scheme::pcc);
    CHECK(cfg.M == 2);
    CHECK(cfg.k == 1000);
    CHECK(cfg.N == 100);
    CHECK(cfg.F == 2);
    CHECK(cfg.trials == 5);
    CHECK(cfg.master_seed == 77);
    CHECK(cfg.erasures.user_to_dest[0] == doctest::Approx(0.2));
    CHECK(cfg.erasures.user_to_dest[1] == doctest::Approx(0.6));
    CHECK(cfg.erasures.inter_user[0][1] == doctest::Approx(0.1));
    REQUIRE(cfg.dists.size() == 1);
    CHECK(cfg.dists[0].mean_degree() == doctest::Approx(0.1 + 1.0 + 1.6));
}

TEST_CASE("hash is deterministic and sensitive to fields") {
    auto a = ScenarioConfig::from_keyvalues(KeyValueFile::parse_text(kBase));
    auto b = ScenarioConfig::from_keyvalues(KeyValueFile::parse_text(kBase));
    CHECK(a.hash() == b.hash());
    auto c = ScenarioConfig::from_keyvalues(
        KeyValueFile::parse_text(kBase + "max_frames = 50\n"));
    CHECK(a.hash() != c.hash());
}

TEST_CASE("fcc needs per-phase distributions") {
    std::string text = "scheme = fcc\nM = 2\nk = 500\nN = 50\ne_dest = 0.1\n"
                       "dist1 = 1:1.0\ndist2 = 2:1.0\n";
    auto cfg = ScenarioConfig::from_keyvalues(KeyValueFile::parse_text(text));
    REQUIRE(cfg.dists.size() == 2);
    CHECK(cfg.dists[1].mean_degree() == doctest::Approx(2.0));
    std::string missing = "scheme = fcc\nM = 2\nk = 500\nN = 50\ne_dest = 0.1\ndist1 = 1:1.0\n";
    CHECK_THROWS(ScenarioConfig::from_keyvalues(KeyValueFile::parse_text(missing)));
}

TEST_CASE("at-path distributions resolve against the base dir") {
    std::string text = "scheme = nocoop\nM = 1\nk = 1000\nN = 100\ne_dest = 0.1\n"
                       "dist = @fig4_omega.deg\n";
    auto cfg = ScenarioConfig::from_keyvalues(KeyValueFile::parse_text(text), RCC_PRESET_DIR);
    CHECK(cfg.dists[0].mean_degree() == doctest::Approx(3.25).epsilon(0.01));
}

TEST_CASE("preset scenario files load end to end") {
    auto cfg = ScenarioConfig::from_file(std::string(RCC_PRESET_DIR) + "/fig4.conf");
    CHECK(cfg.scheme == Scheme::pcc);
    CHECK(cfg.k == 1000);
    CHECK(cfg.trials == 200);
}

TEST_CASE("error cases") {
    CHECK_THROWS(ScenarioConfig::from_keyvalues(
        KeyValueFile::parse_text("scheme = what\nM = 2\nk = 10\nN = 5\ne_dest = 0.1\ndist = 1:1\n")));
    // duplicate key
    CHECK_THROWS(KeyValueFile::parse_text("k = 5\nk = 6\n"));
    // distribution not summing to one
    CHECK_THROWS(ScenarioConfig::from_keyvalues(
        KeyValueFile::parse_text("scheme = nocoop\nM = 1\nk = 10\nN = 5\ne_dest = 0.1\ndist = 1:0.5\n")));
    // unreachable completion
    CHECK_THROWS(ScenarioConfig::from_keyvalues(KeyValueFile::parse_text(
        "scheme = nocoop\nM = 1\nk = 100\nN = 10\ne_dest = 0.1\ndist = 1:1.0\nmax_frames = 2\n")));
    // missing key
    CHECK_THROWS(ScenarioConfig::from_keyvalues(
        KeyValueFile::parse_text("scheme = nocoop\nM = 1\nk = 10\nN = 5\ndist = 1:1.0\n")));
}

TEST_CASE("canonical text mentions every tunable") {
    auto cfg = ScenarioConfig::from_keyvalues(KeyValueFile::parse_text(kBase));
    std::string c = cfg.canonical();
    for (const char* key : {"scheme", "M", "k", "N", "F", "seed", "trials"})
        CHECK(c.find(key) != std::string::npos);
}
