#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "repnet/errors.hpp"

namespace repnet {

/// Absolute tolerance for probability row sums throughout the library.
constexpr double kProbTol = 1e-9;

enum class ActionKind { Undirected, Directed };

/// One action symbol. Directed actions name a target agent; `slot` is the
/// action's index within its own kind, in declaration order, and is what
/// the per-kind transition tensors are indexed by.
struct ActionDef {
    std::string name;
    ActionKind kind = ActionKind::Undirected;
    int target = -1;
    int slot = -1;
};

enum class UpdateVariant { Difference, Saturation };

struct UpdateRule {
    UpdateVariant variant = UpdateVariant::Difference;
    double alpha = 0.5;
};

struct HyperParams {
    double delta = 0.5;
    double gamma = 0.9;
    int reputation_bins = 1;
};

/// A probability distribution over states, actions or observations,
/// depending on context.
using Distribution = std::vector<double>;

/// beliefs[h] is a distribution over states: where agent h is believed to be.
using BeliefMap = std::vector<Distribution>;

/// img[h][i] is the image of subject h held by observer i, in [-1,1].
/// Asymmetric in general.
using ImageProfile = std::vector<std::vector<double>>;

/// ad[h][s] is a distribution over all actions: what h is believed to do in s.
using ActionDistribution = std::vector<std::vector<Distribution>>;

/// Impact of actions between agent/state pairs, dense over
/// (recipient g, state of g, actor h, state of h, action), default 0.
class ImpactTable {
  public:
    ImpactTable() = default;
    ImpactTable(int agents, int states, int actions)
        : agents_(agents), states_(states), actions_(actions),
          values_(static_cast<std::size_t>(agents) * states * agents * states * actions, 0.0) {}

    double at(int g, int s, int h, int s2, int a) const { return values_[index(g, s, h, s2, a)]; }

    void set(int g, int s, int h, int s2, int a, double value) {
        values_[index(g, s, h, s2, a)] = value;
    }

    int agents() const { return agents_; }
    int states() const { return states_; }
    int actions() const { return actions_; }
    const std::vector<double>& raw() const { return values_; }

  private:
    std::size_t index(int g, int s, int h, int s2, int a) const {
        return (((static_cast<std::size_t>(g) * states_ + s) * agents_ + h) * states_ + s2) * actions_ + a;
    }

    int agents_ = 0;
    int states_ = 0;
    int actions_ = 0;
    std::vector<double> values_;
};

/// Per-agent fixed dynamics.
///   T[s][u][s2]        undirected transition, u = undirected slot
///   DT[s][d][bin][s2]  directed transition, d = directed slot, bin = reputation bin
///   O[a][o][s2]        observation likelihood, a = global action index
struct AgentModels {
    std::vector<std::vector<Distribution>> T;
    std::vector<std::vector<std::vector<Distribution>>> DT;
    std::vector<std::vector<Distribution>> O;
};

/// One agent's mutable epistemic state: the only three models that change.
struct AgentView {
    int owner = 0;
    ActionDistribution ad;
    ImageProfile img;
    BeliefMap beliefs;
};

/// A complete reputation-network domain: shared symbols and impact table
/// plus per-agent dynamics and initial views. Immutable after load.
struct DomainSpec {
    std::vector<std::string> agents;
    std::vector<std::string> states;
    std::vector<ActionDef> actions;
    std::vector<std::string> observations;
    ImpactTable impact;
    UpdateRule update_rule;
    HyperParams hyper;
    std::vector<AgentModels> models;
    std::vector<AgentView> initial_views;

    int num_agents() const { return static_cast<int>(agents.size()); }
    int num_states() const { return static_cast<int>(states.size()); }
    int num_actions() const { return static_cast<int>(actions.size()); }
    int num_observations() const { return static_cast<int>(observations.size()); }

    int num_undirected() const {
        int n = 0;
        for (const auto& a : actions) n += a.kind == ActionKind::Undirected ? 1 : 0;
        return n;
    }
    int num_directed() const { return num_actions() - num_undirected(); }

    bool is_directed(int a) const { return actions[a].kind == ActionKind::Directed; }

    int find_agent(const std::string& name) const { return find(agents, name); }
    int find_state(const std::string& name) const { return find(states, name); }
    int find_observation(const std::string& name) const { return find(observations, name); }
    int find_action(const std::string& name) const {
        for (std::size_t i = 0; i < actions.size(); ++i)
            if (actions[i].name == name) return static_cast<int>(i);
        return -1;
    }

  private:
    static int find(const std::vector<std::string>& names, const std::string& name) {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return static_cast<int>(i);
        return -1;
    }
};

/// Fills in ActionDef::slot: position within its kind, declaration order.
inline void assign_action_slots(std::vector<ActionDef>& actions) {
    int u = 0, d = 0;
    for (auto& a : actions)
        a.slot = a.kind == ActionKind::Undirected ? u++ : d++;
}

/// Uniform partition of [-1,1] into `bins` intervals; r = 1 falls in the
/// last bin.
inline int rep_bin(double r, int bins) {
    if (!(r >= -1.0 && r <= 1.0))
        throw RangeError("reputation " + std::to_string(r) + " outside [-1,1]");
    if (bins < 1) throw RangeError("reputation_bins must be >= 1");
    const int idx = static_cast<int>(std::floor((r + 1.0) * 0.5 * bins));
    return idx >= bins ? bins - 1 : idx;
}

}  // namespace repnet
