#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "repnet/dynamics.hpp"
#include "repnet/errors.hpp"
#include "repnet/learning.hpp"
#include "repnet/planner.hpp"
#include "repnet/reputation.hpp"
#include "repnet/types.hpp"

namespace repnet::oracle {

/// Brute-force cross-check for the recursive planner. It enumerates every
/// depth-k conditional plan (an action at the root plus one depth-(k-1)
/// subtree per observation), scores each plan by walking its (action,
/// observation) paths and recomputing the view updates from scratch, and
/// maximizes over whole plans instead of interleaving max and expectation.
/// Exchanging max over subtrees with the expectation over observations is
/// valid because each observation branch selects its subtree independently,
/// so both routes must agree on the optimal value.

struct TreeNode {
    int action = 0;
    std::vector<int> children;  // indices into the next-shallower level
};

using TreeLevel = std::vector<TreeNode>;

struct OracleResult {
    int best_action = 0;
    double value = 0.0;
    std::vector<double> q_values;
    std::uint64_t tree_count = 0;
};

namespace detail {

/// Number of depth-k trees: tau(1) = |A|, tau(k) = |A| * tau(k-1)^|O|.
inline std::uint64_t count_trees(std::uint64_t actions, std::uint64_t observations, int depth) {
    std::uint64_t tau = actions;
    for (int d = 2; d <= depth; ++d) {
        std::uint64_t pow = 1;
        for (std::uint64_t i = 0; i < observations; ++i) {
            if (__builtin_mul_overflow(pow, tau, &pow)) throw OverflowError("policy tree count overflows");
        }
        if (__builtin_mul_overflow(actions, pow, &tau)) throw OverflowError("policy tree count overflows");
    }
    return tau;
}

inline std::vector<TreeLevel> enumerate_levels(int actions, int observations, int depth) {
    std::vector<TreeLevel> levels(static_cast<std::size_t>(depth) + 1);
    for (int a = 0; a < actions; ++a) levels[1].push_back(TreeNode{a, {}});
    for (int d = 2; d <= depth; ++d) {
        const int below = static_cast<int>(levels[d - 1].size());
        for (int a = 0; a < actions; ++a) {
            std::vector<int> pick(static_cast<std::size_t>(observations), 0);
            while (true) {
                levels[d].push_back(TreeNode{a, pick});
                int pos = observations - 1;
                while (pos >= 0 && ++pick[pos] == below) pick[pos--] = 0;
                if (pos < 0) break;
            }
        }
    }
    return levels;
}

/// Successor view after the owner acts and observes: same composition of
/// updates the planner applies, rebuilt here from the definitional
/// primitives. A zero-probability observation for some other agent's
/// estimator leaves that agent's belief at its prior.
inline AgentView child_view(const DomainSpec& spec, const AgentView& view, int action, int obs) {
    const int g = view.owner;
    AgentView next;
    next.owner = g;
    next.beliefs.resize(spec.num_agents());
    for (int h = 0; h < spec.num_agents(); ++h) {
        if (h == g) {
            next.beliefs[h] = ose(spec, g, action, obs, view.beliefs[g], rep_of(g, g, view.img));
        } else {
            try {
                next.beliefs[h] = sse(spec, g, h, obs, view.beliefs[h], view.ad, rep_of(g, h, view.img));
            } catch (const ImpossibleObservation&) {
                next.beliefs[h] = view.beliefs[h];
            }
        }
    }
    next.img = image_expectation(spec, g, view.img, spec.update_rule.alpha, view.beliefs, view.ad);
    next.ad = ade(spec, g, obs, view.ad, view.img);
    return next;
}

inline double tree_value(const DomainSpec& spec, const AgentView& view,
                         const std::vector<TreeLevel>& levels, int depth, int index, double gamma) {
    const TreeNode& node = levels[depth][index];
    const int g = view.owner;
    double value = pi_tot(spec, g, node.action, view.ad, view.beliefs);
    if (depth > 1) {
        const Distribution po = obs_prob(spec, g, node.action, view.beliefs[g], rep_of(g, g, view.img));
        for (int o = 0; o < spec.num_observations(); ++o) {
            if (po[o] == 0.0) continue;
            const AgentView next = child_view(spec, view, node.action, o);
            value += gamma * po[o] * tree_value(spec, next, levels, depth - 1, node.children[o], gamma);
        }
    }
    return value;
}

}  // namespace detail

inline OracleResult enumerate(const DomainSpec& spec, const AgentView& view, int horizon, double gamma,
                              std::uint64_t max_trees = (1ull << 20)) {
    if (horizon < 1) throw RangeError("oracle horizon must be >= 1");
    const int actions = spec.num_actions();
    const int observations = spec.num_observations();
    OracleResult result;
    result.tree_count = detail::count_trees(static_cast<std::uint64_t>(actions),
                                            static_cast<std::uint64_t>(observations), horizon);
    if (result.tree_count > max_trees) {
        throw OverflowError("policy tree count " + std::to_string(result.tree_count) +
                            " exceeds cap " + std::to_string(max_trees));
    }
    const std::vector<TreeLevel> levels = detail::enumerate_levels(actions, observations, horizon);
    result.q_values.assign(static_cast<std::size_t>(actions), -std::numeric_limits<double>::infinity());
    const TreeLevel& roots = levels[static_cast<std::size_t>(horizon)];
    for (int idx = 0; idx < static_cast<int>(roots.size()); ++idx) {
        const double v = detail::tree_value(spec, view, levels, horizon, idx, gamma);
        double& q = result.q_values[static_cast<std::size_t>(roots[static_cast<std::size_t>(idx)].action)];
        if (v > q) q = v;
    }
    result.best_action = 0;
    result.value = result.q_values[0];
    for (int a = 1; a < actions; ++a) {
        if (result.q_values[a] > result.value) {
            result.value = result.q_values[a];
            result.best_action = a;
        }
    }
    return result;
}

}  // namespace repnet::oracle
