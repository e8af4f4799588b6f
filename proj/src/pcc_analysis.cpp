#include "rcc/pcc_analysis.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "compositions.hpp"
#include "rcc/hypergeom.hpp"

namespace rcc {

PccUserTrajectory pcc_user_recursion(const DegreeDistribution& omega, double k,
                                     double N, int M, double e_inter, int frames,
                                     int max_iters, double tol) {
    if (k <= 0.0 || N <= 0.0) throw std::invalid_argument("pcc_user_recursion: bad k or N");
    if (M < 2) throw std::invalid_argument("pcc_user_recursion: M must be >= 2");
    if (e_inter < 0.0 || e_inter > 1.0)
        throw std::invalid_argument("pcc_user_recursion: e outside [0,1]");
    if (frames < 1) throw std::invalid_argument("pcc_user_recursion: frames must be >= 1");

    PccUserTrajectory out;
    double s = 0.0;  // per-partner message symbols recovered at the user
    // Per TF: the degree distribution of that TF's overheard symbols after
    // the observer strips the (M-1)s picks it already knows.
    std::vector<ConditionalDistribution> conds;
    for (int i = 1; i <= frames; ++i) {
        double known = (M - 1) * std::min(s, k - 1e-9);
        conds.push_back(conditional_distribution_real(omega, k + known, known));
        auto mix_deriv = [&](double x) {
            double v = 0.0;
            for (const auto& c : conds) v += c.deriv(x);
            return v / static_cast<double>(conds.size());
        };
        const double n_rx = i * N * (1.0 - e_inter);  // overheard per partner so far
        std::vector<double> iters{1.0};
        double p = 1.0;
        for (int l = 0; l < max_iters; ++l) {
            double np = std::exp(-(n_rx / k) * mix_deriv(1.0 - p));
            iters.push_back(np);
            bool settled = std::abs(np - p) < tol;
            p = np;
            if (settled) break;
        }
        out.p_inf.push_back(p);
        out.p_iters.push_back(std::move(iters));
        s = k * (1.0 - p);
        out.s.push_back(s);
    }
    return out;
}

SlicedLayout pcc_parts_from_trajectory(const std::vector<double>& s, double k,
                                       int users, int max_parts_per_user) {
    if (s.empty()) throw std::invalid_argument("pcc_parts: empty trajectory");
    if (users < 1) throw std::invalid_argument("pcc_parts: users must be >= 1");
    if (max_parts_per_user < 1)
        throw std::invalid_argument("pcc_parts: need at least one part per user");
    const int frames = static_cast<int>(s.size());
    const int slices = std::min(max_parts_per_user - 1, frames);

    std::vector<double> lens;
    std::vector<int> ends;
    double prev = 0.0;
    for (int j = 1; j <= slices; ++j) {
        int b = static_cast<int>(std::llround(static_cast<double>(j) * frames / slices));
        b = std::max(1, std::min(b, frames));
        double len = s[static_cast<std::size_t>(b - 1)] - prev;
        if (len > 1e-9) {
            lens.push_back(len);
            ends.push_back(b);
            prev = s[static_cast<std::size_t>(b - 1)];
        }
    }
    double rem = k - prev;
    if (rem > 1e-9 || lens.empty()) lens.push_back(std::max(rem, 0.0));

    SlicedLayout out;
    out.layout.part_len.assign(static_cast<std::size_t>(users), lens);
    out.slice_end_tf.assign(static_cast<std::size_t>(users), ends);
    return out;
}

std::vector<double> pcc_destination_tv_estimate(const DegreeDistribution& omega,
                                                const SlicedLayout& sliced,
                                                const std::vector<double>& n_rx,
                                                int frames,
                                                double last_frame_weight) {
    (void)omega;  // class counts depend only on the encoding unions
    const PartsLayout& layout = sliced.layout;
    const std::size_t L = layout.total_parts();
    if (L > 25) throw std::invalid_argument("tv_estimate: part count over cap");
    if (n_rx.size() != layout.users())
        throw std::invalid_argument("tv_estimate: n_rx size mismatch");
    if (frames < 1) throw std::invalid_argument("tv_estimate: frames must be >= 1");

    std::vector<double> tv(std::size_t(1) << L, 0.0);
    for (int r = 1; r <= frames; ++r) {
        const double wt = (r == frames) ? last_frame_weight : 1.0;
        for (std::size_t t = 0; t < layout.users(); ++t) {
            // User t's TF-r symbols are drawn over its own message plus every
            // partner slice it has recovered by the end of TF r-1.
            std::uint32_t mask = 0;
            for (std::size_t i = 0; i < layout.part_len[t].size(); ++i)
                mask |= 1u << layout.flat_index(t, i);
            for (std::size_t u = 0; u < layout.users(); ++u) {
                if (u == t) continue;
                for (std::size_t i = 0; i < sliced.slice_end_tf[u].size(); ++i)
                    if (sliced.slice_end_tf[u][i] <= r - 1)
                        mask |= 1u << layout.flat_index(u, i);
            }
            tv[mask] += wt * n_rx[t];
        }
    }
    return tv;
}

AndOrModel pcc_destination_model(const DegreeDistribution& omega,
                                 const PartsLayout& layout,
                                 const std::vector<double>& t_v, int l_cap) {
    const std::size_t L = layout.total_parts();
    if (static_cast<int>(L) > l_cap)
        throw std::invalid_argument(
            "pcc_destination_model: part count over cap; merge adjacent parts");
    if (t_v.size() != (std::size_t(1) << L))
        throw std::invalid_argument("pcc_destination_model: T_V size mismatch");

    std::vector<double> flat_len(L, 0.0);
    for (std::size_t t = 0; t < layout.users(); ++t)
        for (std::size_t i = 0; i < layout.part_len[t].size(); ++i)
            flat_len[layout.flat_index(t, i)] = layout.part_len[t][i];

    const int max_d = omega.max_degree();
    const double mu = omega.mean_degree();

    AndOrModel model;
    model.n_or_types = L;
    for (std::uint32_t v = 1; v < (1u << L); ++v) {
        if (t_v[v] <= 0.0) continue;
        std::vector<int> members;
        std::vector<double> lens;
        double s_v = 0.0;
        for (std::size_t g = 0; g < L; ++g) {
            if (v & (1u << g)) {
                members.push_back(static_cast<int>(g));
                lens.push_back(flat_len[g]);
                s_v += flat_len[g];
            }
        }
        if (s_v <= 0.0) continue;

        AndNodeClass cls;
        cls.v.assign(L, 0);
        cls.alpha.assign(L, 0.0);
        cls.beta.resize(L);
        const double alpha = mu * t_v[v] / s_v;
        // A class-V symbol picks its neighbors uniformly from the S_V message
        // symbols covered by V. Conditioned on one edge entering part g, the
        // other d-1 picks are hypergeometric over the remaining S_V - 1.
        for (std::size_t m = 0; m < members.size(); ++m) {
            std::size_t j = static_cast<std::size_t>(members[m]);
            if (lens[m] <= 0.0) continue;
            cls.v[j] = 1;
            cls.alpha[j] = alpha;
            std::vector<double> rest = lens;
            rest[m] -= 1.0;
            std::map<std::vector<std::uint16_t>, double> bacc;
            for (int d = 1; d <= max_d; ++d) {
                double edge_p = d * omega.prob(d) / mu;
                if (edge_p <= 0.0) continue;
                detail::for_each_composition(
                    rest, d - 1, 1e-13,
                    [&](const std::vector<std::uint16_t>& c, double w) {
                        std::vector<std::uint16_t> other(L, 0);
                        for (std::size_t x = 0; x < members.size(); ++x)
                            other[static_cast<std::size_t>(members[x])] = c[x];
                        bacc[other] += edge_p * w;
                    });
            }
            double total = 0.0;
            for (const auto& [other, w] : bacc) total += w;
            if (total <= 0.0) {
                cls.alpha[j] = 0.0;
                cls.v[j] = 0;
                continue;
            }
            auto& bj = cls.beta[j];
            bj.reserve(bacc.size());
            for (const auto& [other, w] : bacc) bj.push_back({other, w / total});
        }
        model.classes.push_back(std::move(cls));
    }
    return model;
}

}  // namespace rcc
