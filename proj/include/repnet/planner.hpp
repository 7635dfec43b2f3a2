#pragma once

#include <cstdint>
#include <limits>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "repnet/dynamics.hpp"
#include "repnet/learning.hpp"
#include "repnet/reputation.hpp"
#include "repnet/types.hpp"

namespace repnet {

struct PlanConfig {
    int agent = 0;
    int horizon = 1;
    double gamma = 0.9;
    bool count_nodes = true;
    /// Worker threads for root-level action branches; results are
    /// identical for any value.
    int threads = 1;
};

struct PlanResult {
    int best_action = 0;
    double value = 0.0;
    std::vector<double> q_values;
    std::uint64_t nodes_expanded = 0;
};

/// Expected instantaneous impact of h in sh on g in sg, under g's believed
/// action distribution for h.
inline double expected_instant_impact(const DomainSpec& spec, int g, int sg, int h, int sh,
                                      const ActionDistribution& ad) {
    double e = 0.0;
    for (int a = 0; a < spec.num_actions(); ++a)
        e += ad[h][sh][a] * spec.impact.at(g, sg, h, sh, a);
    return e;
}

/// Expected impact the network neighbours have on g in sg, weighted by g's
/// beliefs about where they are. Un-normalized.
inline double pin(const DomainSpec& spec, int g, int sg, const ActionDistribution& ad,
                  const BeliefMap& beliefs) {
    double total = 0.0;
    for (int h = 0; h < spec.num_agents(); ++h) {
        if (h == g) continue;
        for (int sh = 0; sh < spec.num_states(); ++sh)
            total += beliefs[h][sh] * expected_instant_impact(spec, g, sg, h, sh, ad);
    }
    return total;
}

/// Total perceived impact on g of executing a: neighbour impact plus self
/// impact, belief-averaged over g's own state and normalized by |G|.
inline double pi_tot(const DomainSpec& spec, int g, int a, const ActionDistribution& ad,
                     const BeliefMap& beliefs) {
    double total = 0.0;
    for (int sg = 0; sg < spec.num_states(); ++sg)
        total += beliefs[g][sg] *
                 (pin(spec, g, sg, ad, beliefs) + spec.impact.at(g, sg, g, sg, a));
    return total / spec.num_agents();
}

/// Unpruned OI-invocation count of a depth-k plan tree:
/// 1 + sum_{l=1..k-1} (|A||Omega|)^l.
inline std::uint64_t expected_node_count(std::uint64_t actions, std::uint64_t observations,
                                         std::uint64_t k) {
    if (actions < 1 || observations < 1 || k < 1)
        throw RangeError("expected_node_count arguments must all be >= 1");
    std::uint64_t branch = 0;
    if (__builtin_mul_overflow(actions, observations, &branch))
        throw OverflowError("branching factor exceeds 64 bits");
    std::uint64_t total = 1, level = 1;
    for (std::uint64_t l = 1; l + 1 <= k; ++l) {
        if (__builtin_mul_overflow(level, branch, &level))
            throw OverflowError("node count exceeds 64 bits");
        if (__builtin_add_overflow(total, level, &total))
            throw OverflowError("node count exceeds 64 bits");
    }
    return total;
}

namespace detail {

/// Belief update for planning: an agent whose subjective update finds the
/// observation impossible keeps its prior belief instead of aborting the
/// branch (the branch itself was already known to have positive
/// probability under g's own model).
inline BeliefMap bse_keep_prior(const DomainSpec& spec, int g, int a, int o,
                                const AgentView& view) {
    BeliefMap out(spec.num_agents());
    for (int h = 0; h < spec.num_agents(); ++h) {
        const double rep = rep_of(g, h, view.img);
        try {
            out[h] = h == g ? ose(spec, g, a, o, view.beliefs[g], rep)
                            : sse(spec, g, h, o, view.beliefs[h], view.ad, rep);
        } catch (const ImpossibleObservation&) {
            out[h] = view.beliefs[h];
        }
    }
    return out;
}

/// All three epistemic updates, each computed from the pre-step view.
inline AgentView oi_child(const DomainSpec& spec, const AgentView& view, int a, int o) {
    AgentView child;
    child.owner = view.owner;
    child.beliefs = bse_keep_prior(spec, view.owner, a, o, view);
    child.img = image_expectation(spec, view.owner, view.img, spec.update_rule.alpha,
                                  view.beliefs, view.ad);
    child.ad = ade(spec, view.owner, o, view.ad, view.img);
    return child;
}

inline double oi_value(const DomainSpec& spec, const AgentView& view, int k, double gamma,
                       std::uint64_t* nodes) {
    if (nodes) ++*nodes;
    const int g = view.owner;
    double best = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < spec.num_actions(); ++a) {
        double q = pi_tot(spec, g, a, view.ad, view.beliefs);
        if (k > 1) {
            const Distribution po = obs_prob(spec, g, a, view.beliefs[g], rep_of(g, g, view.img));
            for (int o = 0; o < spec.num_observations(); ++o) {
                if (po[o] == 0.0) continue;  // pruned: contributes nothing
                q += gamma * po[o] * oi_value(spec, oi_child(spec, view, a, o), k - 1, gamma, nodes);
            }
        }
        if (q > best) best = q;
    }
    return best;
}

}  // namespace detail

/// Exact finite-horizon optimal-impact search for cfg.agent over the
/// (action, observation) tree of depth cfg.horizon. Each child node
/// carries the fully updated view (learned action distributions, updated
/// images, updated beliefs). Zero-probability observation branches are
/// pruned. Ties in the root maximum break towards the lowest action index.
inline PlanResult oi(const DomainSpec& spec, const AgentView& view, const PlanConfig& cfg) {
    if (cfg.horizon < 1) throw RangeError("plan horizon must be >= 1");
    if (cfg.agent < 0 || cfg.agent >= spec.num_agents())
        throw RangeError("plan agent index out of range");
    if (!(cfg.gamma >= 0.0 && cfg.gamma <= 1.0)) throw RangeError("gamma outside [0,1]");

    const int g = cfg.agent;
    const int nA = spec.num_actions();
    const int nO = spec.num_observations();

    std::vector<double> q(nA, 0.0);
    std::vector<std::uint64_t> child_nodes(nA, 0);

    auto eval_action = [&](int a) {
        double value = pi_tot(spec, g, a, view.ad, view.beliefs);
        if (cfg.horizon > 1) {
            const Distribution po = obs_prob(spec, g, a, view.beliefs[g], rep_of(g, g, view.img));
            for (int o = 0; o < nO; ++o) {
                if (po[o] == 0.0) continue;
                value += cfg.gamma * po[o] *
                         detail::oi_value(spec, detail::oi_child(spec, view, a, o),
                                          cfg.horizon - 1, cfg.gamma,
                                          cfg.count_nodes ? &child_nodes[a] : nullptr);
            }
        }
        q[a] = value;
    };

    const int workers = std::min(cfg.threads, nA);
    if (workers > 1) {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (int a = w; a < nA; a += workers) eval_action(a);
            });
        for (auto& t : pool) t.join();
    } else {
        for (int a = 0; a < nA; ++a) eval_action(a);
    }

    PlanResult result;
    result.q_values = q;
    result.best_action = 0;
    result.value = q[0];
    for (int a = 1; a < nA; ++a)
        if (q[a] > result.value) {
            result.value = q[a];
            result.best_action = a;
        }
    if (cfg.count_nodes) {
        result.nodes_expanded = 1;
        for (int a = 0; a < nA; ++a) result.nodes_expanded += child_nodes[a];
    }
    return result;
}

inline nlohmann::json plan_result_to_json(const DomainSpec& spec, const PlanResult& result) {
    nlohmann::json q = nlohmann::json::object();
    for (int a = 0; a < spec.num_actions(); ++a) q[spec.actions[a].name] = result.q_values[a];
    return {{"best_action", spec.actions[result.best_action].name},
            {"value", result.value},
            {"q_values", q},
            {"nodes_expanded", result.nodes_expanded}};
}

}  // namespace repnet
