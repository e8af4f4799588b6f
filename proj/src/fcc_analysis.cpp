#include "rcc/fcc_analysis.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>

#include "compositions.hpp"

namespace rcc {

AndOrModel fcc_muser_model(const std::map<std::uint32_t, double>& counts,
                           const std::vector<DegreeDistribution>& phis,
                           double k, int M, int m_cap) {
    if (M < 1) throw std::invalid_argument("fcc_muser_model: M must be >= 1");
    if (M > m_cap)
        throw std::invalid_argument("fcc_muser_model: exponential type space (M > cap)");
    if (static_cast<int>(phis.size()) != M)
        throw std::invalid_argument("fcc_muser_model: need M phase distributions");
    if (k <= 0.0) throw std::invalid_argument("fcc_muser_model: k must be positive");

    const std::uint32_t full = (M >= 32) ? 0xffffffffu : ((1u << M) - 1u);
    for (const auto& [y, n_y] : counts) {
        if (y == 0 || (y & ~full) != 0)
            throw std::invalid_argument("fcc_muser_model: bad generator subset");
        if (n_y < 0.0)
            throw std::invalid_argument("fcc_muser_model: negative symbol count");
    }

    // Per landing class V: edges into each root type and, for each root, the
    // distribution of the remaining neighbor counts. A symbol of degree d
    // drawn over the blocks of Y lands on composition c with hypergeometric
    // probability; the chance a given edge into type j came from it is
    // proportional to c_j.
    struct ClassAcc {
        std::vector<double> edges;                                    // per root type
        std::vector<std::map<std::vector<std::uint16_t>, double>> beta;  // per root type
    };
    std::map<std::uint32_t, ClassAcc> acc;

    for (const auto& [y, n_y] : counts) {
        if (n_y <= 0.0) continue;
        int n_yc = std::popcount(y);
        const DegreeDistribution& phi = phis[static_cast<std::size_t>(n_yc - 1)];
        std::vector<int> blocks;
        for (int j = 0; j < M; ++j)
            if (y & (1u << j)) blocks.push_back(j);
        std::vector<double> lens(blocks.size(), k);

        for (int d = 1; d <= phi.max_degree(); ++d) {
            double pd = phi.prob(d);
            if (pd <= 0.0) continue;
            double stream = n_y * pd;
            detail::for_each_composition(lens, d, 1e-13, [&](const std::vector<std::uint16_t>& c,
                                                             double w) {
                std::uint32_t v_mask = 0;
                for (std::size_t m = 0; m < c.size(); ++m)
                    if (c[m] > 0) v_mask |= 1u << blocks[m];
                if (v_mask == 0) return;
                auto& cls = acc[v_mask];
                if (cls.edges.empty()) {
                    cls.edges.assign(static_cast<std::size_t>(M), 0.0);
                    cls.beta.resize(static_cast<std::size_t>(M));
                }
                std::vector<std::uint16_t> other(static_cast<std::size_t>(M), 0);
                for (std::size_t m = 0; m < c.size(); ++m)
                    other[static_cast<std::size_t>(blocks[m])] = c[m];
                for (std::size_t m = 0; m < c.size(); ++m) {
                    if (c[m] == 0) continue;
                    std::size_t j = static_cast<std::size_t>(blocks[m]);
                    double e = stream * w * c[m];
                    cls.edges[j] += e;
                    other[j] -= 1;  // the edge into the root consumes one pick
                    cls.beta[j][other] += e;
                    other[j] += 1;
                }
            });
        }
    }

    AndOrModel model;
    model.n_or_types = static_cast<std::size_t>(M);
    for (auto& [v_mask, cls] : acc) {
        AndNodeClass out;
        out.v.assign(static_cast<std::size_t>(M), 0);
        out.alpha.assign(static_cast<std::size_t>(M), 0.0);
        out.beta.resize(static_cast<std::size_t>(M));
        for (int j = 0; j < M; ++j) {
            if (!(v_mask & (1u << j))) continue;
            out.v[static_cast<std::size_t>(j)] = 1;
            double e = cls.edges[static_cast<std::size_t>(j)];
            out.alpha[static_cast<std::size_t>(j)] = e / k;
            if (e <= 0.0) continue;
            auto& bj = out.beta[static_cast<std::size_t>(j)];
            bj.reserve(cls.beta[static_cast<std::size_t>(j)].size());
            for (const auto& [other, weight] : cls.beta[static_cast<std::size_t>(j)])
                bj.push_back({other, weight / e});
        }
        model.classes.push_back(std::move(out));
    }
    return model;
}

AndOrModel fcc_2user_model(double N1, double N2, double N3,
                           const DegreeDistribution& phi1,
                           const DegreeDistribution& phi2, double k) {
    std::map<std::uint32_t, double> counts{{0b01u, N1}, {0b10u, N2}, {0b11u, N3}};
    return fcc_muser_model(counts, {phi1, phi2}, k, 2);
}

}  // namespace rcc
