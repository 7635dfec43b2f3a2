#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "repnet/dynamics.hpp"
#include "repnet/errors.hpp"
#include "repnet/learning.hpp"
#include "repnet/planner.hpp"
#include "repnet/reputation.hpp"
#include "repnet/rng.hpp"
#include "repnet/types.hpp"

namespace repnet {

/// Synchronous multi-agent simulator. Each step every agent picks an action
/// against its current view, the world samples true successors and private
/// observations, and then every view is refreshed from the same pre-step
/// snapshot so update order cannot leak between agents.
///
/// True directed transitions use the reputation the TARGET assigns to the
/// actor, while each estimator's belief updates keep using its own image
/// profile. All randomness is drawn from counter-based streams keyed by
/// (seed, step, agent, purpose), which makes traces reproducible and keeps
/// one agent's draws independent of every other agent's policy.

enum class PolicyKind { Plan, Fixed, Random, Stationary };

struct Policy {
    PolicyKind kind = PolicyKind::Random;
    int plan_horizon = 1;
    std::vector<int> script;                       // Fixed: action per step
    std::vector<Distribution> state_action;        // Stationary: [true state] -> dist over actions
};

using PolicySpec = std::vector<Policy>;

struct GroundTruth {
    std::vector<int> true_state;
    std::uint64_t rng_seed = 0;
    int step_index = 0;
};

struct AgentStep {
    int action = 0;
    int successor_state = 0;
    int observation = 0;
    double realized_impact = 0.0;
    std::vector<double> rep_of_all;  // post-step RepOf of every agent, from this agent's view
};

struct AdeZeroEvent {
    int learner = 0;
    int subject = 0;
    int state = 0;
};

struct StepRecord {
    int step_index = 0;
    std::vector<AgentStep> agents;
    std::vector<AdeZeroEvent> ade_zero_rows;
};

namespace detail {

enum class DrawPurpose : std::uint64_t { InitState = 1, PolicyDraw = 2, Transition = 3, Observation = 4 };

inline StreamRng stream(const GroundTruth& gt, int agent, DrawPurpose purpose) {
    return StreamRng(gt.rng_seed, static_cast<std::uint64_t>(gt.step_index),
                     static_cast<std::uint64_t>(agent), static_cast<std::uint64_t>(purpose));
}

inline int select_action(const DomainSpec& spec, const GroundTruth& gt, const AgentView& view,
                         const Policy& policy, int g) {
    switch (policy.kind) {
        case PolicyKind::Plan: {
            PlanConfig cfg;
            cfg.agent = g;
            cfg.horizon = policy.plan_horizon;
            cfg.gamma = spec.hyper.gamma;
            cfg.count_nodes = false;
            return oi(spec, view, cfg).best_action;
        }
        case PolicyKind::Fixed: {
            if (gt.step_index >= static_cast<int>(policy.script.size())) {
                throw SimulationFault("fixed policy script exhausted", gt.step_index, g);
            }
            return policy.script[static_cast<std::size_t>(gt.step_index)];
        }
        case PolicyKind::Random: {
            StreamRng rng = stream(gt, g, DrawPurpose::PolicyDraw);
            const int a = static_cast<int>(rng.next_unit() * spec.num_actions());
            return a < spec.num_actions() ? a : spec.num_actions() - 1;
        }
        case PolicyKind::Stationary: {
            StreamRng rng = stream(gt, g, DrawPurpose::PolicyDraw);
            return sample_index(rng, policy.state_action[static_cast<std::size_t>(gt.true_state[g])]);
        }
    }
    throw RangeError("unknown policy kind");
}

}  // namespace detail

/// Advance the world by one synchronous step, mutating gt and views.
inline StepRecord step(const DomainSpec& spec, GroundTruth& gt, std::vector<AgentView>& views,
                       const PolicySpec& policies) {
    const int nG = spec.num_agents();
    if (static_cast<int>(policies.size()) != nG || static_cast<int>(views.size()) != nG ||
        static_cast<int>(gt.true_state.size()) != nG) {
        throw RangeError("simulator state does not match the domain's agent count");
    }

    StepRecord rec;
    rec.step_index = gt.step_index;
    rec.agents.resize(static_cast<std::size_t>(nG));

    std::vector<int> action(static_cast<std::size_t>(nG));
    for (int g = 0; g < nG; ++g) {
        try {
            action[g] = detail::select_action(spec, gt, views[g], policies[g], g);
        } catch (const SimulationFault&) {
            throw;
        } catch (const std::exception& e) {
            throw SimulationFault(std::string("policy failed: ") + e.what(), gt.step_index, g);
        }
        if (action[g] < 0 || action[g] >= spec.num_actions()) {
            throw SimulationFault("policy chose an out-of-range action", gt.step_index, g);
        }
    }

    // True successors. Directed kernels are conditioned on the reputation the
    // target currently assigns to the actor.
    std::vector<int> successor(static_cast<std::size_t>(nG));
    for (int g = 0; g < nG; ++g) {
        const int a = action[g];
        const int s = gt.true_state[g];
        const ActionDef& def = spec.actions[static_cast<std::size_t>(a)];
        Distribution row;
        if (def.kind == ActionKind::Undirected) {
            row = spec.models[g].T[s][def.slot];
        } else {
            const double rep = rep_of(def.target, g, views[def.target].img);
            row = spec.models[g].DT[s][def.slot][rep_bin(rep, spec.hyper.reputation_bins)];
        }
        StreamRng rng = detail::stream(gt, g, detail::DrawPurpose::Transition);
        successor[g] = sample_index(rng, row);
    }

    std::vector<int> observation(static_cast<std::size_t>(nG));
    for (int g = 0; g < nG; ++g) {
        const auto& O = spec.models[g].O[action[g]];
        Distribution po(spec.observations.size());
        for (int o = 0; o < spec.num_observations(); ++o) po[o] = O[o][successor[g]];
        StreamRng rng = detail::stream(gt, g, detail::DrawPurpose::Observation);
        observation[g] = sample_index(rng, po);
    }

    // Realized impacts are scored on the pre-step true states.
    for (int g = 0; g < nG; ++g) {
        double total = 0.0;
        for (int h = 0; h < nG; ++h) {
            total += spec.impact.at(g, gt.true_state[g], h, gt.true_state[h], action[h]);
        }
        rec.agents[g].realized_impact = total;
    }

    // View refresh from a shared pre-step snapshot.
    const std::vector<AgentView> pre = views;
    for (int g = 0; g < nG; ++g) {
        try {
            BeliefMap beliefs = bse(spec, g, action[g], observation[g], pre[g]);
            ImageProfile img = image_expectation(spec, g, pre[g].img, spec.update_rule.alpha,
                                                 pre[g].beliefs, pre[g].ad);
            std::vector<ZeroLikelihoodRow> zero_rows;
            ActionDistribution ad = ade(spec, g, observation[g], pre[g].ad, pre[g].img, &zero_rows);
            views[g].beliefs = std::move(beliefs);
            views[g].img = std::move(img);
            views[g].ad = std::move(ad);
            for (const ZeroLikelihoodRow& row : zero_rows) {
                rec.ade_zero_rows.push_back(AdeZeroEvent{g, row.agent, row.state});
            }
        } catch (const std::exception& e) {
            throw SimulationFault(std::string("view update failed: ") + e.what(), gt.step_index, g);
        }
    }

    for (int g = 0; g < nG; ++g) {
        rec.agents[g].action = action[g];
        rec.agents[g].successor_state = successor[g];
        rec.agents[g].observation = observation[g];
        rec.agents[g].rep_of_all.resize(static_cast<std::size_t>(nG));
        for (int h = 0; h < nG; ++h) rec.agents[g].rep_of_all[h] = rep_of(g, h, views[g].img);
    }

    gt.true_state = successor;
    gt.step_index += 1;
    return rec;
}

/// Run a fresh episode: true initial states are sampled from each agent's own
/// initial self-belief, views start at the domain's initial views.
inline std::vector<StepRecord> run(const DomainSpec& spec, const PolicySpec& policies, int steps,
                                   std::uint64_t seed, std::vector<AgentView>* final_views = nullptr) {
    if (steps < 0) throw RangeError("step count must be >= 0");
    GroundTruth gt;
    gt.rng_seed = seed;
    gt.step_index = 0;
    gt.true_state.resize(static_cast<std::size_t>(spec.num_agents()));
    for (int g = 0; g < spec.num_agents(); ++g) {
        StreamRng rng = detail::stream(gt, g, detail::DrawPurpose::InitState);
        gt.true_state[g] = sample_index(rng, spec.initial_views[g].beliefs[g]);
    }
    std::vector<AgentView> views = spec.initial_views;
    std::vector<StepRecord> trace;
    trace.reserve(static_cast<std::size_t>(steps));
    for (int t = 0; t < steps; ++t) trace.push_back(step(spec, gt, views, policies));
    if (final_views != nullptr) *final_views = std::move(views);
    return trace;
}

inline nlohmann::json step_to_json(const DomainSpec& spec, const StepRecord& rec) {
    nlohmann::json line;
    line["v"] = 1;
    line["step"] = rec.step_index;
    line["agents"] = nlohmann::json::array();
    for (int g = 0; g < spec.num_agents(); ++g) {
        const AgentStep& as = rec.agents[static_cast<std::size_t>(g)];
        nlohmann::json entry;
        entry["agent"] = spec.agents[static_cast<std::size_t>(g)];
        entry["action"] = spec.actions[static_cast<std::size_t>(as.action)].name;
        entry["successor"] = spec.states[static_cast<std::size_t>(as.successor_state)];
        entry["observation"] = spec.observations[static_cast<std::size_t>(as.observation)];
        entry["realized_impact"] = as.realized_impact;
        entry["rep_of"] = as.rep_of_all;
        line["agents"].push_back(std::move(entry));
    }
    line["ade_zero_rows"] = nlohmann::json::array();
    for (const AdeZeroEvent& ev : rec.ade_zero_rows) {
        line["ade_zero_rows"].push_back({{"learner", spec.agents[static_cast<std::size_t>(ev.learner)]},
                                         {"subject", spec.agents[static_cast<std::size_t>(ev.subject)]},
                                         {"state", spec.states[static_cast<std::size_t>(ev.state)]}});
    }
    return line;
}

/// One JSON object per line, each carrying a format version tag.
inline std::string trace_to_jsonl(const DomainSpec& spec, const std::vector<StepRecord>& trace) {
    std::string out;
    for (const StepRecord& rec : trace) {
        out += step_to_json(spec, rec).dump();
        out += '\n';
    }
    return out;
}

}  // namespace repnet
