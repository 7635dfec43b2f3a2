#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "repnet/errors.hpp"
#include "repnet/rng.hpp"
#include "repnet/types.hpp"

namespace repnet {

/// Knobs for the seeded random-domain generator used by benchmarks and
/// property tests. With strictly_positive set, every probability entry is
/// bounded away from zero, so no observation branch is ever pruned and no
/// belief update can hit a zero normalizer.
struct GenConfig {
    int agents = 2;
    int states = 2;
    int undirected = 1;
    int directed = 1;
    int observations = 2;
    int reputation_bins = 1;
    UpdateVariant variant = UpdateVariant::Difference;
    double alpha = 0.3;
    double delta = 0.5;
    double gamma = 0.9;
    double impact_density = 0.5;
    bool strictly_positive = true;
};

namespace detail {

inline Distribution random_distribution(StreamRng& rng, int n, bool strictly_positive) {
    Distribution d(static_cast<std::size_t>(n));
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        d[i] = (strictly_positive ? 0.1 : 0.0) + rng.next_unit();
        total += d[i];
    }
    for (int i = 0; i < n; ++i) d[i] /= total;
    return d;
}

}  // namespace detail

inline DomainSpec random_spec(const GenConfig& cfg, std::uint64_t seed) {
    if (cfg.agents < 1 || cfg.states < 1 || cfg.observations < 1) {
        throw RangeError("generator needs at least one agent, state, and observation");
    }
    if (cfg.undirected + cfg.directed < 1) throw RangeError("generator needs at least one action");
    if (cfg.reputation_bins < 1) throw RangeError("generator needs at least one reputation bin");

    StreamRng rng(seed, 0, 0, 0x67656eull);  // "gen"
    DomainSpec spec;
    for (int g = 0; g < cfg.agents; ++g) spec.agents.push_back("g" + std::to_string(g));
    for (int s = 0; s < cfg.states; ++s) spec.states.push_back("s" + std::to_string(s));
    for (int o = 0; o < cfg.observations; ++o) spec.observations.push_back("o" + std::to_string(o));
    for (int u = 0; u < cfg.undirected; ++u) {
        spec.actions.push_back(ActionDef{"u" + std::to_string(u), ActionKind::Undirected, -1, -1});
    }
    for (int d = 0; d < cfg.directed; ++d) {
        const int target = d % cfg.agents;
        spec.actions.push_back(ActionDef{"d" + std::to_string(d) + "@g" + std::to_string(target),
                                         ActionKind::Directed, target, -1});
    }
    assign_action_slots(spec.actions);

    spec.update_rule = UpdateRule{cfg.variant, cfg.alpha};
    spec.hyper = HyperParams{cfg.delta, cfg.gamma, cfg.reputation_bins};

    const int nG = cfg.agents;
    const int nS = cfg.states;
    const int nA = cfg.undirected + cfg.directed;
    const int nO = cfg.observations;

    spec.impact = ImpactTable(nG, nS, nA);
    for (int g = 0; g < nG; ++g)
        for (int s = 0; s < nS; ++s)
            for (int h = 0; h < nG; ++h)
                for (int s2 = 0; s2 < nS; ++s2)
                    for (int a = 0; a < nA; ++a) {
                        if (rng.next_unit() < cfg.impact_density) {
                            spec.impact.set(g, s, h, s2, a, 2.0 * rng.next_unit() - 1.0);
                        }
                    }

    spec.models.resize(static_cast<std::size_t>(nG));
    for (int g = 0; g < nG; ++g) {
        AgentModels& m = spec.models[g];
        m.T.resize(static_cast<std::size_t>(nS));
        for (int s = 0; s < nS; ++s) {
            m.T[s].resize(static_cast<std::size_t>(cfg.undirected));
            for (int u = 0; u < cfg.undirected; ++u) {
                m.T[s][u] = detail::random_distribution(rng, nS, cfg.strictly_positive);
            }
        }
        m.DT.resize(static_cast<std::size_t>(nS));
        for (int s = 0; s < nS; ++s) {
            m.DT[s].resize(static_cast<std::size_t>(cfg.directed));
            for (int d = 0; d < cfg.directed; ++d) {
                m.DT[s][d].resize(static_cast<std::size_t>(cfg.reputation_bins));
                for (int b = 0; b < cfg.reputation_bins; ++b) {
                    m.DT[s][d][b] = detail::random_distribution(rng, nS, cfg.strictly_positive);
                }
            }
        }
        m.O.resize(static_cast<std::size_t>(nA));
        for (int a = 0; a < nA; ++a) {
            m.O[a].resize(static_cast<std::size_t>(nO));
            // Draw a distribution over observations per successor state, then
            // store it transposed to match the [a][o][s'] layout.
            std::vector<Distribution> per_state(static_cast<std::size_t>(nS));
            for (int s2 = 0; s2 < nS; ++s2) {
                per_state[s2] = detail::random_distribution(rng, nO, cfg.strictly_positive);
            }
            for (int o = 0; o < nO; ++o) {
                m.O[a][o].resize(static_cast<std::size_t>(nS));
                for (int s2 = 0; s2 < nS; ++s2) m.O[a][o][s2] = per_state[s2][o];
            }
        }
    }

    spec.initial_views.resize(static_cast<std::size_t>(nG));
    for (int g = 0; g < nG; ++g) {
        AgentView& view = spec.initial_views[g];
        view.owner = g;
        view.ad.resize(static_cast<std::size_t>(nG));
        for (int h = 0; h < nG; ++h) {
            view.ad[h].resize(static_cast<std::size_t>(nS));
            for (int s = 0; s < nS; ++s) view.ad[h][s] = detail::random_distribution(rng, nA, cfg.strictly_positive);
        }
        view.img.resize(static_cast<std::size_t>(nG));
        for (int h = 0; h < nG; ++h) {
            view.img[h].resize(static_cast<std::size_t>(nG));
            for (int i = 0; i < nG; ++i) view.img[h][i] = rng.next_unit() - 0.5;
        }
        view.beliefs.resize(static_cast<std::size_t>(nG));
        for (int h = 0; h < nG; ++h) view.beliefs[h] = detail::random_distribution(rng, nS, cfg.strictly_positive);
    }
    return spec;
}

}  // namespace repnet
