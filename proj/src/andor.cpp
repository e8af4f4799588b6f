#include "rcc/andor.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rcc {

void AndOrModel::validate() const {
    if (n_or_types == 0) throw std::invalid_argument("and_or: no OR types");
    for (std::size_t ci = 0; ci < classes.size(); ++ci) {
        const auto& c = classes[ci];
        if (c.v.size() != n_or_types || c.alpha.size() != n_or_types ||
            c.beta.size() != n_or_types)
            throw std::invalid_argument("and_or: class " + std::to_string(ci) +
                                        " has inconsistent dimensions");
        for (std::size_t j = 0; j < n_or_types; ++j) {
            if (!c.v[j]) continue;
            if (c.alpha[j] < 0.0)
                throw std::invalid_argument("and_or: negative alpha");
            double sum = 0.0;
            for (const auto& t : c.beta[j]) {
                if (t.other_counts.size() != n_or_types)
                    throw std::invalid_argument("and_or: bad beta term size");
                if (t.prob < 0.0)
                    throw std::invalid_argument("and_or: negative beta");
                sum += t.prob;
            }
            if (c.alpha[j] > 0.0 && std::abs(sum - 1.0) > 1e-9)
                throw std::invalid_argument("and_or: beta does not sum to 1");
        }
    }
}

AndOrResult and_or_iterate(const AndOrModel& model, int max_iters, double tol) {
    model.validate();
    const std::size_t n = model.n_or_types;
    AndOrResult res;
    res.p.assign(n, 1.0);
    std::vector<double> next(n);
    std::vector<double> q(n);  // 1 - p
    for (int it = 1; it <= max_iters; ++it) {
        for (std::size_t j = 0; j < n; ++j) q[j] = 1.0 - res.p[j];
        double delta = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            double log_p = 0.0;
            for (const auto& c : model.classes) {
                if (!c.v[j] || c.alpha[j] == 0.0) continue;
                double s = 0.0;
                for (const auto& t : c.beta[j]) {
                    double term = t.prob;
                    for (std::size_t w = 0; w < n && term != 0.0; ++w) {
                        for (std::uint16_t e = 0; e < t.other_counts[w]; ++e)
                            term *= q[w];
                    }
                    s += term;
                }
                log_p -= c.alpha[j] * s;
            }
            next[j] = std::exp(log_p);
            delta = std::max(delta, std::abs(next[j] - res.p[j]));
            if (next[j] > res.p[j] + 1e-12) res.monotone = false;
        }
        res.p = next;
        res.iterations = it;
        if (delta < tol) {
            res.converged = true;
            break;
        }
    }
    return res;
}

}  // namespace rcc
