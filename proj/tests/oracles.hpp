#pragma once

// Literal-summation reference implementations for the test suite. Everything
// here is written directly from the definitions, with its own binning,
// kernels, and recursions, so results can be compared against the library
// without sharing code paths.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "repnet/types.hpp"

namespace bruteforce {

inline int bin_of(double r, int bins) {
    const int b = static_cast<int>(std::floor((r + 1.0) * 0.5 * bins));
    return b >= bins ? bins - 1 : b;
}

inline double trans(const repnet::DomainSpec& spec, int g, int s, int a, int s2, double rep) {
    const repnet::ActionDef& def = spec.actions[static_cast<std::size_t>(a)];
    if (def.kind == repnet::ActionKind::Undirected) return spec.models[g].T[s][def.slot][s2];
    return spec.models[g].DT[s][def.slot][bin_of(rep, spec.hyper.reputation_bins)][s2];
}

inline repnet::Distribution ose_ref(const repnet::DomainSpec& spec, int g, int a, int o,
                                    const repnet::Distribution& b, double rep) {
    const int nS = spec.num_states();
    repnet::Distribution num(static_cast<std::size_t>(nS), 0.0);
    double norm = 0.0;
    for (int s2 = 0; s2 < nS; ++s2) {
        for (int s = 0; s < nS; ++s) num[s2] += trans(spec, g, s, a, s2, rep) * b[s];
        num[s2] *= spec.models[g].O[a][o][s2];
        norm += num[s2];
    }
    for (int s2 = 0; s2 < nS; ++s2) num[s2] /= norm;
    return num;
}

inline repnet::Distribution sse_ref(const repnet::DomainSpec& spec, int g, int h, int o,
                                    const repnet::Distribution& b,
                                    const repnet::ActionDistribution& ad, double rep) {
    const int nS = spec.num_states();
    repnet::Distribution num(static_cast<std::size_t>(nS), 0.0);
    double norm = 0.0;
    for (int s2 = 0; s2 < nS; ++s2) {
        for (int a = 0; a < spec.num_actions(); ++a)
            for (int s = 0; s < nS; ++s)
                num[s2] += spec.models[g].O[a][o][s2] * trans(spec, g, s, a, s2, rep) * b[s] *
                           ad[h][s][a];
        norm += num[s2];
    }
    for (int s2 = 0; s2 < nS; ++s2) num[s2] /= norm;
    return num;
}

inline repnet::Distribution obs_prob_ref(const repnet::DomainSpec& spec, int g, int a,
                                         const repnet::Distribution& b, double rep) {
    const int nO = spec.num_observations();
    const int nS = spec.num_states();
    repnet::Distribution out(static_cast<std::size_t>(nO), 0.0);
    for (int o = 0; o < nO; ++o)
        for (int s2 = 0; s2 < nS; ++s2)
            for (int s = 0; s < nS; ++s)
                out[o] += spec.models[g].O[a][o][s2] * trans(spec, g, s, a, s2, rep) * b[s];
    return out;
}

inline double perceived_ref(const repnet::DomainSpec& spec, int h, int i,
                            const repnet::BeliefMap& beliefs, const repnet::ActionDistribution& ad,
                            double delta) {
    double total = 0.0;
    for (int sh = 0; sh < spec.num_states(); ++sh)
        for (int si = 0; si < spec.num_states(); ++si)
            for (int a = 0; a < spec.num_actions(); ++a)
                total += beliefs[h][sh] * beliefs[i][si] *
                         (delta * ad[i][si][a] * spec.impact.at(h, sh, i, si, a) +
                          (1.0 - delta) * ad[h][sh][a] * spec.impact.at(i, si, h, sh, a));
    return total;
}

inline double rep_of_ref(int g, int h, const repnet::ImageProfile& img) {
    const int nG = static_cast<int>(img.size());
    double total = img[h][g];
    for (int i = 0; i < nG; ++i)
        if (i != g) total += img[h][i] * img[i][g];
    return total / nG;
}

inline double pin_ref(const repnet::DomainSpec& spec, int g, int sg,
                      const repnet::ActionDistribution& ad, const repnet::BeliefMap& beliefs) {
    double total = 0.0;
    for (int h = 0; h < spec.num_agents(); ++h) {
        if (h == g) continue;
        for (int sh = 0; sh < spec.num_states(); ++sh)
            for (int a = 0; a < spec.num_actions(); ++a)
                total += beliefs[h][sh] * ad[h][sh][a] * spec.impact.at(g, sg, h, sh, a);
    }
    return total;
}

inline double pi_tot_ref(const repnet::DomainSpec& spec, int g, int a,
                         const repnet::ActionDistribution& ad, const repnet::BeliefMap& beliefs) {
    double total = 0.0;
    for (int sg = 0; sg < spec.num_states(); ++sg)
        total += beliefs[g][sg] * (pin_ref(spec, g, sg, ad, beliefs) + spec.impact.at(g, sg, g, sg, a));
    return total / spec.num_agents();
}

inline std::uint64_t node_count_ref(std::uint64_t a, std::uint64_t o, std::uint64_t k) {
    std::uint64_t total = 1;
    for (std::uint64_t l = 1; l < k; ++l) {
        std::uint64_t pow = 1;
        for (std::uint64_t j = 0; j < l; ++j) pow *= a * o;
        total += pow;
    }
    return total;
}

// Depth-k conditional plans over undirected actions only, evaluated through
// state values (an alpha-vector route): independent of any belief recursion.
struct VTree {
    int u = 0;
    std::vector<VTree> kids;
};

inline std::vector<VTree> all_vtrees(int nU, int nO, int depth) {
    std::vector<VTree> out;
    if (depth == 1) {
        for (int u = 0; u < nU; ++u) out.push_back(VTree{u, {}});
        return out;
    }
    const std::vector<VTree> below = all_vtrees(nU, nO, depth - 1);
    const std::size_t m = below.size();
    for (int u = 0; u < nU; ++u) {
        std::vector<std::size_t> pick(static_cast<std::size_t>(nO), 0);
        while (true) {
            VTree t{u, {}};
            for (std::size_t i : pick) t.kids.push_back(below[i]);
            out.push_back(std::move(t));
            int pos = nO - 1;
            while (pos >= 0 && ++pick[pos] == m) pick[pos--] = 0;
            if (pos < 0) break;
        }
    }
    return out;
}

inline int global_action_of_slot(const repnet::DomainSpec& spec, int u) {
    for (int a = 0; a < spec.num_actions(); ++a)
        if (spec.actions[a].kind == repnet::ActionKind::Undirected && spec.actions[a].slot == u)
            return a;
    return -1;
}

inline double vtree_state_value(const repnet::DomainSpec& spec, int g,
                                const repnet::RewardModel& R, const VTree& tree, int s) {
    const int a = global_action_of_slot(spec, tree.u);
    double value = R.reward[tree.u][s];
    if (!tree.kids.empty()) {
        for (int s2 = 0; s2 < spec.num_states(); ++s2) {
            const double t = spec.models[g].T[s][tree.u][s2];
            if (t == 0.0) continue;
            double inner = 0.0;
            for (int o = 0; o < spec.num_observations(); ++o)
                inner += spec.models[g].O[a][o][s2] *
                         vtree_state_value(spec, g, R, tree.kids[static_cast<std::size_t>(o)], s2);
            value += spec.hyper.gamma * t * inner;
        }
    }
    return value;
}

inline double v_star_ref(const repnet::DomainSpec& spec, int g, const repnet::RewardModel& R,
                         const repnet::Distribution& b, int k) {
    double best = -1e300;
    for (const VTree& tree : all_vtrees(spec.num_undirected(), spec.num_observations(), k)) {
        double v = 0.0;
        for (int s = 0; s < spec.num_states(); ++s)
            v += b[s] * vtree_state_value(spec, g, R, tree, s);
        if (v > best) best = v;
    }
    return best;
}

inline repnet::Distribution random_dist(std::mt19937_64& rng, int n, bool positive = true) {
    std::uniform_real_distribution<double> u(positive ? 0.05 : 0.0, 1.0);
    repnet::Distribution d(static_cast<std::size_t>(n));
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += d[i] = u(rng);
    for (int i = 0; i < n; ++i) d[i] /= total;
    return d;
}

}  // namespace bruteforce
