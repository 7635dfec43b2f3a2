#pragma once

#include <limits>
#include <string>
#include <vector>

#include "repnet/reputation.hpp"
#include "repnet/types.hpp"

namespace repnet {

/// Who is estimating, who is acting, and the actor's reputation as the
/// estimator currently aggregates it. The estimator's own tensors are
/// always the ones consulted; the actor only determines which reputation
/// bin a directed transition reads.
struct StepContext {
    int estimator = 0;
    int actor = 0;
    double reputation_of_actor = 0.0;
};

/// Combined transition kernel: directed actions dispatch to the
/// estimator's DT at the actor's reputation bin, undirected actions to its
/// T. The reputation argument is ignored for undirected actions.
inline double t_du(const DomainSpec& spec, const StepContext& ctx, int s, int a, int s2) {
    if (!(ctx.reputation_of_actor >= -1.0 && ctx.reputation_of_actor <= 1.0))
        throw RangeError("reputation " + std::to_string(ctx.reputation_of_actor) +
                         " outside [-1,1]");
    const ActionDef& def = spec.actions[a];
    const AgentModels& m = spec.models[ctx.estimator];
    if (def.kind == ActionKind::Undirected) return m.T[s][def.slot][s2];
    const int bin = rep_bin(ctx.reputation_of_actor, spec.hyper.reputation_bins);
    return m.DT[s][def.slot][bin][s2];
}

/// Probability of each observation after g executes a from belief b, with
/// g's own reputation rep_self driving any directed dynamics. Sums to 1.
inline Distribution obs_prob(const DomainSpec& spec, int g, int a, const Distribution& b,
                             double rep_self) {
    const int nS = spec.num_states();
    const int nO = spec.num_observations();
    const StepContext ctx{g, g, rep_self};

    Distribution predicted(nS, 0.0);
    for (int s2 = 0; s2 < nS; ++s2)
        for (int s = 0; s < nS; ++s) predicted[s2] += t_du(spec, ctx, s, a, s2) * b[s];

    Distribution out(nO, 0.0);
    for (int o = 0; o < nO; ++o)
        for (int s2 = 0; s2 < nS; ++s2) out[o] += spec.models[g].O[a][o][s2] * predicted[s2];
    return out;
}

/// Objective state estimation: g's posterior over its own state after it
/// executed a and perceived o. rep_self feeds the directed kernel when a
/// is directed.
inline Distribution ose(const DomainSpec& spec, int g, int a, int o, const Distribution& b_cur,
                        double rep_self) {
    const int nS = spec.num_states();
    const StepContext ctx{g, g, rep_self};

    Distribution numerator(nS, 0.0);
    double norm = 0.0;
    for (int s2 = 0; s2 < nS; ++s2) {
        double reach = 0.0;
        for (int s = 0; s < nS; ++s) reach += t_du(spec, ctx, s, a, s2) * b_cur[s];
        numerator[s2] = spec.models[g].O[a][o][s2] * reach;
        norm += numerator[s2];
    }
    if (norm <= 0.0)
        throw ImpossibleObservation("observation '" + spec.observations[o] +
                                        "' has zero probability under agent " + spec.agents[g] +
                                        "'s own-state model",
                                    g);
    for (int s2 = 0; s2 < nS; ++s2) numerator[s2] /= norm;
    return numerator;
}

/// Subjective state estimation: g's posterior over h's state after g
/// perceived o, marginalizing over the actions g believes h may have
/// taken. rep_of_h feeds the directed kernel for h's directed actions.
inline Distribution sse(const DomainSpec& spec, int g, int h, int o, const Distribution& b_cur,
                        const ActionDistribution& ad, double rep_of_h) {
    const int nS = spec.num_states();
    const int nA = spec.num_actions();
    const StepContext ctx{g, h, rep_of_h};

    Distribution numerator(nS, 0.0);
    double norm = 0.0;
    for (int s2 = 0; s2 < nS; ++s2) {
        for (int a = 0; a < nA; ++a) {
            double reach = 0.0;
            for (int s = 0; s < nS; ++s)
                reach += t_du(spec, ctx, s, a, s2) * b_cur[s] * ad[h][s][a];
            numerator[s2] += spec.models[g].O[a][o][s2] * reach;
        }
        norm += numerator[s2];
    }
    if (norm <= 0.0)
        throw ImpossibleObservation("observation '" + spec.observations[o] +
                                        "' has zero probability under agent " + spec.agents[g] +
                                        "'s model of " + spec.agents[h],
                                    h);
    for (int s2 = 0; s2 < nS; ++s2) numerator[s2] /= norm;
    return numerator;
}

/// Full belief-map update for estimator g after executing a and perceiving
/// o: its own entry through ose, every other agent's through sse, with
/// each actor's reputation aggregated from view.img.
inline BeliefMap bse(const DomainSpec& spec, int g, int a, int o, const AgentView& view) {
    const int nG = spec.num_agents();
    BeliefMap out(nG);
    for (int h = 0; h < nG; ++h) {
        const double rep = rep_of(g, h, view.img);
        if (h == g)
            out[h] = ose(spec, g, a, o, view.beliefs[g], rep);
        else
            out[h] = sse(spec, g, h, o, view.beliefs[h], view.ad, rep);
    }
    return out;
}

/// Textbook single-agent state estimation over (S, A^u, T, Omega, O); the
/// reduction target ose must match on undirected-only domains.
inline Distribution reference_se(const DomainSpec& spec, int g, int a, int o,
                                 const Distribution& b_cur) {
    if (spec.actions[a].kind != ActionKind::Undirected)
        throw RangeError("reference_se requires an undirected action");
    const int nS = spec.num_states();
    const int u = spec.actions[a].slot;
    const AgentModels& m = spec.models[g];

    Distribution numerator(nS, 0.0);
    double norm = 0.0;
    for (int s2 = 0; s2 < nS; ++s2) {
        double reach = 0.0;
        for (int s = 0; s < nS; ++s) reach += m.T[s][u][s2] * b_cur[s];
        numerator[s2] = m.O[a][o][s2] * reach;
        norm += numerator[s2];
    }
    if (norm <= 0.0)
        throw ImpossibleObservation("observation '" + spec.observations[o] +
                                        "' has zero probability under the single-agent model",
                                    g);
    for (int s2 = 0; s2 < nS; ++s2) numerator[s2] /= norm;
    return numerator;
}

/// Reward table for the single-agent reference value function, indexed by
/// undirected slot and state.
struct RewardModel {
    std::vector<std::vector<double>> reward;
};

/// Exact finite-horizon optimal value of belief b for the single-agent
/// projection of the domain (undirected actions only), by full (a,o) tree
/// enumeration. Discount comes from spec.hyper.gamma.
inline double reference_v_star(const DomainSpec& spec, int g, const RewardModel& R,
                               const Distribution& b, int k) {
    const int nS = spec.num_states();
    const int nO = spec.num_observations();
    const AgentModels& m = spec.models[g];
    const double gamma = spec.hyper.gamma;

    double best = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < spec.num_actions(); ++a) {
        if (spec.actions[a].kind != ActionKind::Undirected) continue;
        const int u = spec.actions[a].slot;

        double value = 0.0;
        for (int s = 0; s < nS; ++s) value += R.reward[u][s] * b[s];

        if (k > 1) {
            for (int o = 0; o < nO; ++o) {
                double p = 0.0;
                for (int s2 = 0; s2 < nS; ++s2) {
                    double reach = 0.0;
                    for (int s = 0; s < nS; ++s) reach += m.T[s][u][s2] * b[s];
                    p += m.O[a][o][s2] * reach;
                }
                if (p <= 0.0) continue;
                value += gamma * p * reference_v_star(spec, g, R, reference_se(spec, g, a, o, b), k - 1);
            }
        }
        if (value > best) best = value;
    }
    return best;
}

}  // namespace repnet
