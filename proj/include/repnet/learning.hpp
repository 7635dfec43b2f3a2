#pragma once

#include <vector>

#include "repnet/dynamics.hpp"
#include "repnet/reputation.hpp"
#include "repnet/types.hpp"

namespace repnet {

/// An action-distribution row whose total posterior mass was zero and was
/// therefore left at its prior.
struct ZeroLikelihoodRow {
    int agent;
    int state;
};

/// Bayesian action-distribution learning: after estimator g perceives o,
/// every (h,s) row is reweighted by the likelihood of o given that h took
/// each action in s, then renormalized. The likelihood marginalizes over
/// the successor state reached. Rows with zero total mass keep their prior
/// and are reported through zero_rows when provided.
inline ActionDistribution ade(const DomainSpec& spec, int g, int o, const ActionDistribution& ad,
                              const ImageProfile& img,
                              std::vector<ZeroLikelihoodRow>* zero_rows = nullptr) {
    const int nG = spec.num_agents();
    const int nS = spec.num_states();
    const int nA = spec.num_actions();

    ActionDistribution out(nG, std::vector<Distribution>(nS));
    for (int h = 0; h < nG; ++h) {
        const StepContext ctx{g, h, rep_of(g, h, img)};
        for (int s = 0; s < nS; ++s) {
            Distribution weighted(nA, 0.0);
            double total = 0.0;
            for (int a = 0; a < nA; ++a) {
                double likelihood = 0.0;
                for (int s2 = 0; s2 < nS; ++s2)
                    likelihood += t_du(spec, ctx, s, a, s2) * spec.models[g].O[a][o][s2];
                weighted[a] = likelihood * ad[h][s][a];
                total += weighted[a];
            }
            if (total <= 0.0) {
                out[h][s] = ad[h][s];
                if (zero_rows) zero_rows->push_back({h, s});
                continue;
            }
            for (int a = 0; a < nA; ++a) weighted[a] /= total;
            out[h][s] = std::move(weighted);
        }
    }
    return out;
}

}  // namespace repnet
