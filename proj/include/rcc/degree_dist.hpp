#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rcc/rng.hpp"

namespace rcc {

// Probability vector over symbol degrees 1..D. Immutable after construction.
class DegreeDistribution {
  public:
    // probs[d] for d in 1..D; zero entries may be omitted.
    explicit DegreeDistribution(const std::map<int, double>& probs);

    int max_degree() const { return max_degree_; }
    double prob(int d) const {
        return (d >= 1 && d <= max_degree_) ? probs_[static_cast<size_t>(d)] : 0.0;
    }
    // Omega(x) = sum_d p_d x^d
    double eval(double x) const;
    // Omega'(x); mean degree is deriv(1).
    double deriv(double x) const;
    double mean_degree() const { return deriv(1.0); }

    int sample(RngStream& rng) const;

    // Serialization: header with D and a checksum, then one "d probability"
    // line per nonzero degree. parse() rejects vectors whose sum is outside
    // 1 +/- 1e-9 or whose checksum does not match.
    std::string serialize() const;
    static DegreeDistribution parse(const std::string& text);
    static DegreeDistribution load(const std::string& path);
    void save(const std::string& path) const;

    const std::vector<double>& dense() const { return probs_; }  // index 0 unused

  private:
    std::vector<double> probs_;  // size D+1, index 0 unused
    std::vector<double> cdf_;    // size D+1
    int max_degree_ = 0;
};

// Degree distribution after edges into known symbols are removed; degree 0
// carries the mass of coded symbols whose neighbors are all known.
class ConditionalDistribution {
  public:
    explicit ConditionalDistribution(std::vector<double> probs);  // index = degree, from 0

    int max_degree() const { return static_cast<int>(probs_.size()) - 1; }
    double prob(int d) const {
        return (d >= 0 && d <= max_degree()) ? probs_[static_cast<size_t>(d)] : 0.0;
    }
    double eval(double x) const;
    double deriv(double x) const;
    double mean_degree() const { return deriv(1.0); }
    const std::vector<double>& dense() const { return probs_; }

  private:
    std::vector<double> probs_;
};

}  // namespace rcc
