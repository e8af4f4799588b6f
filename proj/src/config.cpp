#include "rcc/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rcc {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string dirname_of(const std::string& path) {
    auto pos = path.find_last_of('/');
    return pos == std::string::npos ? std::string() : path.substr(0, pos + 1);
}

}  // namespace

KeyValueFile KeyValueFile::parse_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_text(ss.str());
}

KeyValueFile KeyValueFile::parse_text(const std::string& text) {
    KeyValueFile kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty()) throw std::runtime_error("config line " + std::to_string(lineno) +
                                                  ": empty key");
        if (kv.values_.count(key))
            throw std::runtime_error("config: duplicate key '" + key + "'");
        kv.values_[key] = val;
        kv.order_.emplace_back(key, val);
    }
    return kv;
}

std::string KeyValueFile::get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw std::runtime_error("config: missing key '" + key + "'");
    return it->second;
}

std::string KeyValueFile::get_or(const std::string& key, const std::string& def) const {
    auto it = values_.find(key);
    return it == values_.end() ? def : it->second;
}

long KeyValueFile::get_long(const std::string& key) const {
    try {
        return std::stol(get(key));
    } catch (const std::invalid_argument&) {
        throw std::runtime_error("config: key '" + key + "' is not an integer");
    }
}

long KeyValueFile::get_long_or(const std::string& key, long def) const {
    return has(key) ? get_long(key) : def;
}

double KeyValueFile::get_double(const std::string& key) const {
    try {
        return std::stod(get(key));
    } catch (const std::invalid_argument&) {
        throw std::runtime_error("config: key '" + key + "' is not a number");
    }
}

double KeyValueFile::get_double_or(const std::string& key, double def) const {
    return has(key) ? get_double(key) : def;
}

std::vector<double> KeyValueFile::get_doubles(const std::string& key) const {
    std::vector<double> out;
    std::string v = get(key);
    std::replace(v.begin(), v.end(), ',', ' ');
    std::istringstream in(v);
    double x;
    while (in >> x) out.push_back(x);
    if (out.empty()) throw std::runtime_error("config: key '" + key + "' has no values");
    return out;
}

std::string to_string(Scheme s) {
    switch (s) {
        case Scheme::nocoop: return "nocoop";
        case Scheme::perfect: return "perfect";
        case Scheme::fcc: return "fcc";
        case Scheme::pcc: return "pcc";
    }
    return "?";
}

Scheme scheme_from_string(const std::string& s) {
    if (s == "nocoop") return Scheme::nocoop;
    if (s == "perfect") return Scheme::perfect;
    if (s == "fcc") return Scheme::fcc;
    if (s == "pcc") return Scheme::pcc;
    throw std::runtime_error("config: unknown scheme '" + s + "'");
}

DegreeDistribution parse_dist_spec(const std::string& spec, const std::string& base_dir) {
    if (spec.empty()) throw std::runtime_error("config: empty distribution spec");
    if (spec[0] == '@') {
        std::string path = spec.substr(1);
        if (!path.empty() && path[0] != '/' && !base_dir.empty()) {
            std::string dir = base_dir;
            if (dir.back() != '/') dir += '/';
            path = dir + path;
        }
        return DegreeDistribution::load(path);
    }
    // inline: d:p,d:p,...
    std::map<int, double> probs;
    std::string s = spec;
    std::replace(s.begin(), s.end(), ',', ' ');
    std::istringstream in(s);
    std::string tok;
    double sum = 0.0;
    while (in >> tok) {
        auto colon = tok.find(':');
        if (colon == std::string::npos)
            throw std::runtime_error("config: bad distribution term '" + tok + "'");
        int d = std::stoi(tok.substr(0, colon));
        double p = std::stod(tok.substr(colon + 1));
        probs[d] = p;
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::runtime_error("config: distribution sums to " + std::to_string(sum));
    for (auto& [d, p] : probs) p /= sum;
    return DegreeDistribution(probs);
}

void ScenarioConfig::validate() const {
    if (M == 0) throw std::runtime_error("config: M must be positive");
    if (k == 0 || N == 0) throw std::runtime_error("config: k and N must be positive");
    erasures.validate();
    if (erasures.user_to_dest.size() != M)
        throw std::runtime_error("config: erasure matrix size != M");
    const std::size_t want = scheme == Scheme::fcc ? M : 1;
    if (dists.size() != want)
        throw std::runtime_error("config: scheme " + to_string(scheme) + " needs " +
                                 std::to_string(want) + " distribution(s), got " +
                                 std::to_string(dists.size()));
    if (F == 0) throw std::runtime_error("config: F must be >= 1");
    if (static_cast<std::uint64_t>(N) * effective_max_frames() < k)
        throw std::runtime_error("config: N * max_frames < k, run can never finish");
    if (fidelity == Fidelity::payload && T_bits == 0)
        throw std::runtime_error("config: payload mode needs T > 0");
}

std::string ScenarioConfig::canonical() const {
    std::ostringstream out;
    out << "scheme=" << to_string(scheme) << " M=" << M << " n=" << n << " k=" << k
        << " N=" << N << " T=" << T_bits << " F=" << F << " trials=" << trials
        << " seed=" << master_seed << " max_frames=" << effective_max_frames()
        << " fidelity=" << (fidelity == Fidelity::payload ? "payload" : "structural");
    char buf[64];
    out << " e_dest=";
    for (std::size_t i = 0; i < erasures.user_to_dest.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.10g", erasures.user_to_dest[i]);
        out << (i ? "," : "") << buf;
    }
    out << " e_inter=";
    for (std::size_t i = 0; i < erasures.inter_user.size(); ++i)
        for (std::size_t j = i + 1; j < erasures.inter_user.size(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.10g", erasures.inter_user[i][j]);
            out << ((i || j > 1) ? "," : "") << buf;
        }
    out << " precode=";
    if (precode.kind == PrecodeSpec::Kind::none) out << "none";
    else {
        std::snprintf(buf, sizeof(buf), "regular:%.10g:%d", precode.rate, precode.check_degree);
        out << buf;
    }
    for (std::size_t i = 0; i < dists.size(); ++i)
        out << " dist" << i + 1 << "_checksum=" << fnv1a(dists[i].serialize());
    return out.str();
}

std::uint64_t ScenarioConfig::hash() const { return fnv1a(canonical()); }

ScenarioConfig ScenarioConfig::from_file(const std::string& path) {
    return from_keyvalues(KeyValueFile::parse_file(path), dirname_of(path));
}

ScenarioConfig ScenarioConfig::from_keyvalues(const KeyValueFile& kv,
                                              const std::string& base_dir) {
    ScenarioConfig cfg;
    cfg.scheme = scheme_from_string(kv.get("scheme"));
    cfg.M = static_cast<std::uint32_t>(kv.get_long("M"));
    cfg.k = static_cast<std::uint32_t>(kv.get_long("k"));
    cfg.n = static_cast<std::uint32_t>(kv.get_long_or("n", 0));
    cfg.N = static_cast<std::uint32_t>(kv.get_long("N"));
    cfg.T_bits = static_cast<std::uint32_t>(kv.get_long_or("T", 1024));
    cfg.F = static_cast<std::uint32_t>(kv.get_long_or("F", 1));
    cfg.trials = static_cast<std::uint32_t>(kv.get_long_or("trials", 1));
    cfg.master_seed = static_cast<std::uint64_t>(kv.get_long_or("seed", 1));
    cfg.max_frames = static_cast<std::uint32_t>(kv.get_long_or("max_frames", 0));
    std::string fid = kv.get_or("fidelity", "structural");
    if (fid == "structural") cfg.fidelity = Fidelity::structural;
    else if (fid == "payload") cfg.fidelity = Fidelity::payload;
    else throw std::runtime_error("config: unknown fidelity '" + fid + "'");

    std::vector<double> e_dest = kv.get_doubles("e_dest");
    if (e_dest.size() == 1) e_dest.assign(cfg.M, e_dest[0]);
    if (e_dest.size() != cfg.M)
        throw std::runtime_error("config: e_dest needs 1 or M values");
    double e_inter = kv.get_double_or("e_inter", 0.0);
    cfg.erasures.user_to_dest = e_dest;
    cfg.erasures.inter_user.assign(cfg.M, std::vector<double>(cfg.M, e_inter));
    // Optional per-pair overrides e_12, e_13, ...
    for (std::uint32_t i = 1; i <= cfg.M; ++i)
        for (std::uint32_t j = i + 1; j <= cfg.M; ++j) {
            std::string key = "e_" + std::to_string(i) + std::to_string(j);
            if (kv.has(key)) {
                double v = kv.get_double(key);
                cfg.erasures.inter_user[i - 1][j - 1] = v;
                cfg.erasures.inter_user[j - 1][i - 1] = v;
            }
        }

    if (cfg.scheme == Scheme::fcc) {
        for (std::uint32_t i = 1; i <= cfg.M; ++i)
            cfg.dists.push_back(parse_dist_spec(kv.get("dist" + std::to_string(i)), base_dir));
    } else {
        cfg.dists.push_back(parse_dist_spec(kv.get("dist"), base_dir));
    }

    std::string pre = kv.get_or("precode", "none");
    if (pre == "none") {
        cfg.precode.kind = PrecodeSpec::Kind::none;
    } else if (pre.rfind("regular", 0) == 0) {
        cfg.precode.kind = PrecodeSpec::Kind::regular_bipartite;
        double rate = 0.95;
        int cd = 57;
        if (auto c1 = pre.find(':'); c1 != std::string::npos) {
            auto c2 = pre.find(':', c1 + 1);
            rate = std::stod(pre.substr(c1 + 1, c2 - c1 - 1));
            if (c2 != std::string::npos) cd = std::stoi(pre.substr(c2 + 1));
        }
        cfg.precode.rate = rate;
        cfg.precode.check_degree = cd;
    } else {
        throw std::runtime_error("config: unknown precode '" + pre + "'");
    }
    if (cfg.n == 0)
        cfg.n = cfg.precode.kind == PrecodeSpec::Kind::none
                    ? cfg.k
                    : static_cast<std::uint32_t>(std::lround(cfg.k * cfg.precode.rate));

    cfg.validate();
    return cfg;
}

}  // namespace rcc
