// Command-line front end: simulate | analyze | optimize | bounds | sweep.
// Exit codes: 0 ok, 1 runtime error, 2 config error.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rcc/bounds.hpp"
#include "rcc/config.hpp"
#include "rcc/design.hpp"
#include "rcc/pcc_analysis.hpp"
#include "rcc/predict.hpp"
#include "rcc/protocol.hpp"

namespace fs = std::filesystem;
using namespace rcc;

namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

// Output sink: --out DIR writes <dir>/<name>, otherwise stdout.
class Sink {
  public:
    Sink(const std::string& out_dir, const std::string& name) {
        if (!out_dir.empty()) {
            fs::create_directories(out_dir);
            path_ = (fs::path(out_dir) / name).string();
            file_.open(path_, std::ios::binary | std::ios::trunc);
            if (!file_) throw std::runtime_error("cannot write " + path_);
        }
    }
    std::ostream& stream() { return path_.empty() ? std::cout : file_; }
    const std::string& path() const { return path_; }

  private:
    std::string path_;
    std::ofstream file_;
};

struct SweepVariant {
    Scheme scheme;
    ScenarioConfig cfg;
};

// A sweep file is a scenario file plus: axis = e_inter | e_sym,
// axis_values = v,v,..., schemes = s,s,..., and per-scheme distribution keys
// (<scheme>_dist / fcc_dist1..M, falling back to dist / dist1..M).
struct SweepSpec {
    std::string axis;
    std::vector<double> values;
    std::vector<Scheme> schemes;
    KeyValueFile kv;
    std::string base_dir;
};

SweepSpec load_sweep(const std::string& path) {
    SweepSpec sw;
    sw.kv = KeyValueFile::parse_file(path);
    sw.base_dir = fs::path(path).parent_path().string();
    sw.axis = sw.kv.get_or("axis", "e_inter");
    if (sw.axis != "e_inter" && sw.axis != "e_sym")
        throw ConfigError("sweep: unsupported axis '" + sw.axis + "'");
    for (double v : sw.kv.get_doubles("axis_values")) sw.values.push_back(v);
    std::stringstream ss(sw.kv.get_or("schemes", "nocoop,perfect,fcc,pcc"));
    std::string tok;
    while (std::getline(ss, tok, ','))
        sw.schemes.push_back(scheme_from_string(tok));
    if (sw.values.empty()) throw ConfigError("sweep: empty axis_values");
    return sw;
}

// Build the concrete scenario for one (scheme, axis value) cell by rewriting
// the key-value view of the sweep file.
ScenarioConfig sweep_cell(const SweepSpec& sw, Scheme scheme, double value) {
    std::ostringstream text;
    auto scheme_name = to_string(scheme);
    for (const auto& [key, val] : sw.kv.entries()) {
        if (key == "axis" || key == "axis_values" || key == "schemes") continue;
        if (key == "scheme" || key == "dist" || key.rfind("dist", 0) == 0) continue;
        bool scheme_key = false;
        for (const char* s : {"nocoop_", "perfect_", "fcc_", "pcc_"})
            if (key.rfind(s, 0) == 0) scheme_key = true;
        if (scheme_key) continue;
        if (sw.axis == "e_inter" && key == "e_inter") continue;
        if (sw.axis == "e_sym" && key == "e_dest") continue;
        text << key << " = " << val << "\n";
    }
    text << "scheme = " << scheme_name << "\n";
    if (sw.axis == "e_inter")
        text << "e_inter = " << value << "\n";
    else
        text << "e_dest = " << value << "\n";

    auto dist_key = [&](const std::string& suffix) -> std::optional<std::string> {
        std::string specific = scheme_name + "_dist" + suffix;
        if (sw.kv.has(specific)) return sw.kv.get(specific);
        if (sw.kv.has("dist" + suffix)) return sw.kv.get("dist" + suffix);
        return std::nullopt;
    };
    if (scheme == Scheme::fcc) {
        long m = sw.kv.get_long_or("M", 2);
        for (long i = 1; i <= m; ++i) {
            auto v = dist_key(std::to_string(i));
            if (!v) throw ConfigError("sweep: missing fcc_dist" + std::to_string(i));
            text << "dist" << i << " = " << *v << "\n";
        }
    } else {
        auto v = dist_key("");
        if (!v) throw ConfigError("sweep: missing distribution for scheme " +
                                  std::string(scheme_name));
        text << "dist = " << *v << "\n";
    }
    return ScenarioConfig::from_keyvalues(KeyValueFile::parse_text(text.str()),
                                          sw.base_dir);
}

void csv_header(std::ostream& os, std::uint64_t hash, std::uint64_t seed,
                std::uint32_t M) {
    os << "# config_hash=" << hex64(hash) << " master_seed=" << seed << "\n";
    os << "scheme,M,k,N,e_inter";
    for (std::uint32_t i = 1; i <= M; ++i) os << ",e_" << i;
    os << ",F,trials,mean_throughput,ci95,mean_frames,incomplete_count\n";
}

void csv_row(std::ostream& os, const ScenarioConfig& cfg, const AggregateStats& agg) {
    os << to_string(cfg.scheme) << ',' << cfg.M << ',' << cfg.k << ',' << cfg.N
       << ',' << cfg.erasures.inter_user.at(0).at(cfg.M > 1 ? 1 : 0);
    for (std::uint32_t i = 0; i < cfg.M; ++i)
        os << ',' << cfg.erasures.user_to_dest.at(i);
    os << ',' << cfg.F << ',' << agg.trials << ',' << agg.mean_throughput << ','
       << agg.ci95 << ',' << agg.mean_frames << ',' << agg.incomplete << "\n";
}

bool is_sweep_file(const std::string& path) {
    return KeyValueFile::parse_file(path).has("axis_values");
}

// Configuration problems (unreadable files, parse errors, invalid values) must
// exit with code 2; rethrow them under the dedicated type the top-level
// dispatcher maps to that code.
template <typename Fn>
auto as_config(Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
}

int cmd_simulate(const std::string& config, std::optional<std::uint64_t> seed,
                 unsigned workers, const std::string& out_dir) {
    if (as_config([&] { return is_sweep_file(config); })) {
        auto sw = as_config([&] { return load_sweep(config); });
        std::uint64_t hash = fnv1a(read_file(config));
        Sink sink(out_dir, "simulate.csv");
        auto& os = sink.stream();
        os.precision(10);
        bool first = true;
        for (double v : sw.values) {
            for (Scheme scheme : sw.schemes) {
                ScenarioConfig cfg = as_config([&] {
                    ScenarioConfig c = sweep_cell(sw, scheme, v);
                    if (seed) c.master_seed = *seed;
                    c.validate();
                    return c;
                });
                if (first) {
                    csv_header(os, hash, cfg.master_seed, cfg.M);
                    first = false;
                }
                auto agg = aggregate(run_trials(cfg, workers));
                csv_row(os, cfg, agg);
                os.flush();
            }
        }
    } else {
        ScenarioConfig cfg = as_config([&] {
            ScenarioConfig c = ScenarioConfig::from_file(config);
            if (seed) c.master_seed = *seed;
            c.validate();
            return c;
        });
        Sink sink(out_dir, "simulate.csv");
        auto& os = sink.stream();
        os.precision(10);
        csv_header(os, cfg.hash(), cfg.master_seed, cfg.M);
        auto agg = aggregate(run_trials(cfg, workers));
        csv_row(os, cfg, agg);
    }
    return 0;
}

int cmd_analyze(const std::string& config, std::optional<std::uint64_t> seed,
                const std::string& out_dir) {
    if (as_config([&] { return is_sweep_file(config); })) {
        auto sw = as_config([&] { return load_sweep(config); });
        std::uint64_t hash = fnv1a(read_file(config));
        Sink sink(out_dir, "analyze.csv");
        auto& os = sink.stream();
        os.precision(10);
        bool first = true;
        for (double v : sw.values) {
            for (Scheme scheme : sw.schemes) {
                ScenarioConfig cfg = as_config([&] {
                    ScenarioConfig c = sweep_cell(sw, scheme, v);
                    if (seed) c.master_seed = *seed;
                    c.validate();
                    return c;
                });
                if (first) {
                    csv_header(os, hash, cfg.master_seed, cfg.M);
                    first = false;
                }
                auto pred = predict_throughput(cfg);
                AggregateStats agg;
                agg.trials = 0;
                agg.incomplete = pred.complete ? 0 : 1;
                agg.mean_throughput = pred.throughput;
                agg.mean_frames = pred.frames;
                csv_row(os, cfg, agg);
            }
        }
        return 0;
    }
    ScenarioConfig cfg = as_config([&] {
        ScenarioConfig c = ScenarioConfig::from_file(config);
        if (seed) c.master_seed = *seed;
        c.validate();
        return c;
    });
    Sink sink(out_dir, "analyze.csv");
    auto& os = sink.stream();
    os.precision(10);
    if (cfg.scheme == Scheme::pcc) {
        // Per-TF user-side recovery prediction.
        int frames = static_cast<int>(
            std::min<double>(cfg.effective_max_frames(),
                             std::ceil(static_cast<double>(cfg.k) / cfg.N) * 3 + 10));
        auto traj = pcc_user_recursion(cfg.dists[0], cfg.k, cfg.N, cfg.M,
                                       cfg.erasures.inter_user.at(0).at(cfg.M > 1 ? 1 : 0),
                                       frames);
        os << "# config_hash=" << hex64(cfg.hash()) << " master_seed="
           << cfg.master_seed << "\n";
        os << "tf,s_per_partner,p_unrecovered\n";
        for (std::size_t i = 0; i < traj.s.size(); ++i)
            os << (i + 1) << ',' << traj.s[i] << ',' << traj.p_inf[i] << "\n";
        return 0;
    }
    auto pred = predict_throughput(cfg);
    csv_header(os, cfg.hash(), cfg.master_seed, cfg.M);
    AggregateStats agg;
    agg.incomplete = pred.complete ? 0 : 1;
    agg.mean_throughput = pred.throughput;
    agg.mean_frames = pred.frames;
    csv_row(os, cfg, agg);
    return 0;
}

int cmd_bounds(const std::string& config, const std::string& out_dir) {
    auto sw = as_config([&] { return load_sweep(config); });
    long m = sw.kv.get_long_or("M", 2);
    if (m != 2) throw ConfigError("bounds defined for 2-user CMAC");
    if (sw.axis != "e_inter") throw ConfigError("bounds: axis must be e_inter");

    Sink sink(out_dir, "bounds.csv");
    auto& os = sink.stream();
    os.precision(10);
    os << "# config_hash=" << hex64(fnv1a(read_file(config))) << " master_seed=0\n";
    os << "e_inter,fcc_bound,pcc_bound,pcc_condition_met\n";
    ScenarioConfig probe = sweep_cell(sw, Scheme::pcc, sw.values.front());
    double e1 = probe.erasures.user_to_dest.at(0);
    double e2 = probe.erasures.user_to_dest.at(1);
    for (double e : sw.values) {
        double fcc = fcc_throughput_bound(e, e1, e2);
        int frames = static_cast<int>(std::ceil(static_cast<double>(probe.k) / probe.N)) * 3 + 10;
        auto traj = pcc_user_recursion(probe.dists[0], probe.k, probe.N, 2, e, frames);
        auto pcc = pcc_throughput_bound(e1, e2, probe.N, probe.k, traj.s);
        os << e << ',' << fcc << ',' << pcc.bound << ',' << (pcc.met ? 1 : 0) << "\n";
    }
    return 0;
}

int cmd_optimize(const std::string& config, const std::string& out_dir) {
    auto kv = as_config([&] { return KeyValueFile::parse_file(config); });
    std::string type = kv.get("type");
    if (type != "fcc" && type != "pcc")
        throw ConfigError("optimize: type must be fcc or pcc");
    DesignParams p;
    p.M = static_cast<int>(kv.get_long_or("M", 2));
    p.k = kv.get_double_or("k", 10000);
    p.D = static_cast<int>(kv.get_long_or("D", 50));
    p.delta = kv.get_double_or("delta", 0.01);
    p.c = kv.get_double_or("c", 0.1);
    p.grid_step = kv.get_double_or("grid_step", 0.005);
    p.N = kv.get_double_or("N", 1000);
    int max_outer = static_cast<int>(kv.get_long_or("max_outer", 10));
    as_config([&] { p.validate(); return 0; });

    DesignResult res = (type == "fcc") ? fcc_design(p)
                                       : pcc_design_fixed_point(p, max_outer);
    if (!res.feasible) {
        std::cerr << "optimize: infeasible design (min residual " << res.min_residual
                  << ")\n";
        return 1;
    }
    std::string dir = out_dir.empty() ? "." : out_dir;
    fs::create_directories(dir);
    std::string dist_path =
        (fs::path(dir) / (type + "_M" + std::to_string(p.M) + ".deg")).string();
    res.dist.save(dist_path);

    Sink report(dir, type + "_M" + std::to_string(p.M) + "_report.txt");
    auto& os = report.stream();
    os.precision(10);
    os << "type " << type << "\nM " << p.M << "\nk " << p.k << "\nD " << p.D
       << "\ndelta " << p.delta << "\nc " << p.c << "\nobjective " << res.objective
       << "\nmin_residual " << res.min_residual << "\nmean_degree "
       << res.dist.mean_degree() << "\n";
    for (std::size_t i = 0; i < res.r.size(); ++i)
        os << "r_" << i << " " << res.r[i] << " epsilon "
           << (res.r[i] > 0 ? 1.0 / res.r[i] - 1.0 : std::nan("")) << "\n";
    if (type == "pcc")
        os << "outer_iterations " << res.outer_iterations << "\nconverged "
           << (res.converged ? 1 : 0) << "\n";
    std::cout << "design written to " << dist_path << " (mean degree "
              << res.dist.mean_degree() << ")\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rateless coded-cooperation toolkit"};
    app.require_subcommand(1);

    std::string config, out_dir;
    std::optional<std::uint64_t> seed;
    unsigned workers = 1;

    auto add_common = [&](CLI::App* sub, bool with_workers) {
        sub->add_option("--config", config, "config file path")->required();
        sub->add_option("--seed", seed, "master seed override");
        sub->add_option("--out", out_dir, "output directory (default: stdout)");
        if (with_workers) sub->add_option("--workers", workers, "worker threads");
    };
    auto* sim = app.add_subcommand("simulate", "run Monte Carlo trials");
    add_common(sim, true);
    auto* swp = app.add_subcommand("sweep", "run a sweep config (alias of simulate)");
    add_common(swp, true);
    auto* ana = app.add_subcommand("analyze", "evaluate the analytical models");
    add_common(ana, false);
    auto* opt = app.add_subcommand("optimize", "solve a degree-design problem");
    add_common(opt, false);
    auto* bnd = app.add_subcommand("bounds", "tabulate throughput upper bounds");
    add_common(bnd, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sim->parsed() || swp->parsed())
            return cmd_simulate(config, seed, workers, out_dir);
        if (ana->parsed()) return cmd_analyze(config, seed, out_dir);
        if (opt->parsed()) return cmd_optimize(config, out_dir);
        if (bnd->parsed()) return cmd_bounds(config, out_dir);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
