#include "rcc/degree_dist.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rcc {

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string canonical_lines(const std::vector<double>& probs) {
    std::string out;
    char buf[64];
    for (size_t d = 1; d < probs.size(); ++d) {
        if (probs[d] == 0.0) continue;
        std::snprintf(buf, sizeof(buf), "%zu %.17g\n", d, probs[d]);
        out += buf;
    }
    return out;
}

}  // namespace

DegreeDistribution::DegreeDistribution(const std::map<int, double>& probs) {
    if (probs.empty()) throw std::invalid_argument("degree distribution: empty");
    for (const auto& [d, p] : probs) {
        if (d < 1) throw std::invalid_argument("degree distribution: degree < 1");
        if (p < 0.0) throw std::invalid_argument("degree distribution: negative probability");
        if (p > 0.0) max_degree_ = std::max(max_degree_, d);
    }
    if (max_degree_ == 0) throw std::invalid_argument("degree distribution: all mass zero");
    probs_.assign(static_cast<size_t>(max_degree_) + 1, 0.0);
    double sum = 0.0;
    for (const auto& [d, p] : probs) {
        if (d <= max_degree_) probs_[static_cast<size_t>(d)] = p;
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("degree distribution: probabilities sum to " +
                                    std::to_string(sum));
    cdf_.assign(probs_.size(), 0.0);
    double acc = 0.0;
    for (size_t d = 1; d < probs_.size(); ++d) {
        acc += probs_[d];
        cdf_[d] = acc;
    }
    cdf_.back() = 1.0;
}

double DegreeDistribution::eval(double x) const {
    double v = 0.0;
    for (int d = max_degree_; d >= 1; --d) v = v * x + probs_[static_cast<size_t>(d)];
    return v * x;
}

double DegreeDistribution::deriv(double x) const {
    double v = 0.0;
    for (int d = max_degree_; d >= 1; --d)
        v = v * x + d * probs_[static_cast<size_t>(d)];
    return v;
}

int DegreeDistribution::sample(RngStream& rng) const {
    double u = rng.next_double();
    auto it = std::lower_bound(cdf_.begin() + 1, cdf_.end(), u);
    return static_cast<int>(it - cdf_.begin());
}

std::string DegreeDistribution::serialize() const {
    std::string body = canonical_lines(probs_);
    char head[128];
    std::snprintf(head, sizeof(head), "degree-distribution D=%d checksum=%016llx\n",
                  max_degree_, static_cast<unsigned long long>(fnv1a(body)));
    return std::string(head) + body;
}

DegreeDistribution DegreeDistribution::parse(const std::string& text) {
    std::istringstream in(text);
    std::string tag;
    int max_d = 0;
    std::string checksum;
    if (!(in >> tag) || tag != "degree-distribution")
        throw std::invalid_argument("degree distribution: bad header");
    std::string field;
    while (in >> field && field.find('=') != std::string::npos) {
        auto eq = field.find('=');
        std::string key = field.substr(0, eq), val = field.substr(eq + 1);
        if (key == "D") max_d = std::stoi(val);
        else if (key == "checksum") checksum = val;
        if (key == "checksum") break;
    }
    std::map<int, double> probs;
    int d;
    double p;
    double sum = 0.0;
    while (in >> d >> p) {
        if (probs.count(d)) throw std::invalid_argument("degree distribution: duplicate degree");
        probs[d] = p;
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("degree distribution: sum outside 1 +/- 1e-9");
    // Renormalize the residual (parser tolerance is wider than the
    // constructor's) so round-trips through text stay valid.
    for (auto& [dd, pp] : probs) pp /= sum;
    DegreeDistribution dist(probs);
    if (dist.max_degree() != max_d)
        throw std::invalid_argument("degree distribution: header D mismatch");
    if (!checksum.empty()) {
        // Checksum covers the probability lines exactly as they appear.
        char buf[32];
        std::istringstream in2(text);
        std::string line, body;
        std::getline(in2, line);  // header
        while (std::getline(in2, line))
            if (!line.empty()) body += line + "\n";
        std::snprintf(buf, sizeof(buf), "%016llx",
                      static_cast<unsigned long long>(fnv1a(body)));
        if (checksum != buf)
            throw std::invalid_argument("degree distribution: checksum mismatch");
    }
    return dist;
}

DegreeDistribution DegreeDistribution::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open distribution file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

void DegreeDistribution::save(const std::string& path) const {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write distribution file: " + path);
    f << serialize();
}

ConditionalDistribution::ConditionalDistribution(std::vector<double> probs)
    : probs_(std::move(probs)) {
    if (probs_.empty()) throw std::invalid_argument("conditional distribution: empty");
    double sum = 0.0;
    for (double p : probs_) {
        if (p < 0.0) throw std::invalid_argument("conditional distribution: negative probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-10)
        throw std::invalid_argument("conditional distribution: probabilities sum to " +
                                    std::to_string(sum));
}

double ConditionalDistribution::eval(double x) const {
    double v = 0.0;
    for (int d = max_degree(); d >= 0; --d) v = v * x + probs_[static_cast<size_t>(d)];
    return v;
}

double ConditionalDistribution::deriv(double x) const {
    double v = 0.0;
    for (int d = max_degree(); d >= 1; --d)
        v = v * x + d * probs_[static_cast<size_t>(d)];
    return v;
}

}  // namespace rcc
