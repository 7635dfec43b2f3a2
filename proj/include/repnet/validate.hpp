#pragma once

#include <cmath>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "repnet/types.hpp"

namespace repnet {

/// One invariant violation. Violations are data, not faults: validate()
/// collects them instead of throwing.
struct Violation {
    std::string path;
    std::string message;

    std::string str() const { return path + ": " + message; }
};

namespace detail {

inline void check_row(const std::string& path, const Distribution& row,
                      std::vector<Violation>& out) {
    double sum = 0.0;
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (!(row[i] >= 0.0)) {
            std::ostringstream m;
            m << "entry " << i << " is " << row[i] << ", expected >= 0";
            out.push_back({path, m.str()});
        }
        sum += row[i];
    }
    if (std::fabs(sum - 1.0) > kProbTol) {
        std::ostringstream m;
        m << "row sums to " << sum << ", expected 1 within " << kProbTol;
        out.push_back({path, m.str()});
    }
}

inline void check_unit_interval(const std::string& path, double v, const char* what,
                                std::vector<Violation>& out) {
    if (!(v >= 0.0 && v <= 1.0)) {
        std::ostringstream m;
        m << what << " is " << v << ", expected in [0,1]";
        out.push_back({path, m.str()});
    }
}

inline void check_signed_unit(const std::string& path, double v, const char* what,
                              std::vector<Violation>& out) {
    if (!(v >= -1.0 && v <= 1.0)) {
        std::ostringstream m;
        m << what << " is " << v << ", expected in [-1,1]";
        out.push_back({path, m.str()});
    }
}

inline void check_names(const std::string& path, const std::vector<std::string>& names,
                        std::vector<Violation>& out) {
    std::set<std::string> seen;
    for (const auto& n : names) {
        if (n.empty()) out.push_back({path, "empty name"});
        if (!seen.insert(n).second) out.push_back({path, "duplicate name '" + n + "'"});
    }
}

}  // namespace detail

/// Checks every structural and probabilistic invariant of a domain. Returns
/// an empty list iff the domain is valid; otherwise one entry per violation,
/// each naming the offending path.
inline std::vector<Violation> validate(const DomainSpec& spec) {
    using namespace detail;
    std::vector<Violation> out;

    const int nG = spec.num_agents();
    const int nS = spec.num_states();
    const int nA = spec.num_actions();
    const int nO = spec.num_observations();
    const int bins = spec.hyper.reputation_bins;

    if (nG < 1) out.push_back({"agents", "at least one agent required"});
    if (nS < 1) out.push_back({"states", "at least one state required"});
    if (nA < 1) out.push_back({"actions", "at least one action required"});
    if (nO < 1) out.push_back({"observations", "at least one observation required"});

    check_names("agents", spec.agents, out);
    check_names("states", spec.states, out);
    check_names("observations", spec.observations, out);
    {
        std::vector<std::string> action_names;
        for (const auto& a : spec.actions) action_names.push_back(a.name);
        check_names("actions", action_names, out);
    }

    {
        int u = 0, d = 0;
        for (int a = 0; a < nA; ++a) {
            const auto& def = spec.actions[a];
            const std::string path = "actions." + def.name;
            if (def.kind == ActionKind::Directed) {
                if (def.target < 0 || def.target >= nG)
                    out.push_back({path, "directed action with no valid target agent"});
                if (def.slot != d++) out.push_back({path, "directed slot out of declaration order"});
            } else {
                if (def.target != -1)
                    out.push_back({path, "undirected action must not carry a target"});
                if (def.slot != u++) out.push_back({path, "undirected slot out of declaration order"});
            }
        }
    }

    check_unit_interval("update_rule.alpha", spec.update_rule.alpha, "alpha", out);
    check_unit_interval("hyper.delta", spec.hyper.delta, "delta", out);
    check_unit_interval("hyper.gamma", spec.hyper.gamma, "gamma", out);
    if (bins < 1) out.push_back({"hyper.reputation_bins", "must be >= 1"});

    if (spec.impact.agents() != nG || spec.impact.states() != nS || spec.impact.actions() != nA) {
        out.push_back({"impact", "table dimensions do not match the declared symbols"});
    } else {
        for (int g = 0; g < nG; ++g)
            for (int s = 0; s < nS; ++s)
                for (int h = 0; h < nG; ++h)
                    for (int s2 = 0; s2 < nS; ++s2)
                        for (int a = 0; a < nA; ++a) {
                            const double v = spec.impact.at(g, s, h, s2, a);
                            if (!(v >= -1.0 && v <= 1.0)) {
                                std::ostringstream p;
                                p << "impact[" << spec.agents[g] << "," << spec.states[s] << ","
                                  << spec.agents[h] << "," << spec.states[s2] << ","
                                  << spec.actions[a].name << "]";
                                out.push_back({p.str(), "impact out of [-1,1]"});
                            }
                        }
    }

    const int nU = spec.num_undirected();
    const int nD = spec.num_directed();

    if (static_cast<int>(spec.models.size()) != nG) {
        out.push_back({"models", "one model block required per agent"});
        return out;
    }
    if (static_cast<int>(spec.initial_views.size()) != nG) {
        out.push_back({"models", "one initial view required per agent"});
        return out;
    }

    // Undirected slot -> action name, for readable paths.
    std::vector<std::string> u_name(nU), d_name(nD);
    for (const auto& a : spec.actions)
        (a.kind == ActionKind::Undirected ? u_name : d_name)[a.slot] = a.name;

    for (int g = 0; g < nG; ++g) {
        const std::string base = "models." + spec.agents[g];
        const AgentModels& m = spec.models[g];

        bool t_shape = static_cast<int>(m.T.size()) == nS;
        for (const auto& row : m.T) t_shape = t_shape && static_cast<int>(row.size()) == nU;
        if (!t_shape) {
            out.push_back({base + ".T", "expected shape [states][undirected][states]"});
        } else {
            for (int s = 0; s < nS; ++s)
                for (int u = 0; u < nU; ++u) {
                    if (static_cast<int>(m.T[s][u].size()) != nS) {
                        out.push_back({base + ".T", "expected shape [states][undirected][states]"});
                        continue;
                    }
                    check_row(base + ".T[" + spec.states[s] + "][" + u_name[u] + "]", m.T[s][u], out);
                }
        }

        bool dt_shape = static_cast<int>(m.DT.size()) == nS;
        for (const auto& row : m.DT) {
            dt_shape = dt_shape && static_cast<int>(row.size()) == nD;
            for (const auto& by_bin : row)
                dt_shape = dt_shape && static_cast<int>(by_bin.size()) == bins;
        }
        if (!dt_shape) {
            out.push_back({base + ".DT", "expected shape [states][directed][bins][states]"});
        } else {
            for (int s = 0; s < nS; ++s)
                for (int d = 0; d < nD; ++d)
                    for (int b = 0; b < bins; ++b) {
                        if (static_cast<int>(m.DT[s][d][b].size()) != nS) {
                            out.push_back({base + ".DT", "expected shape [states][directed][bins][states]"});
                            continue;
                        }
                        std::ostringstream p;
                        p << base << ".DT[" << spec.states[s] << "][" << d_name[d] << "][bin " << b << "]";
                        check_row(p.str(), m.DT[s][d][b], out);
                    }
        }

        bool o_shape = static_cast<int>(m.O.size()) == nA;
        for (const auto& by_a : m.O) {
            o_shape = o_shape && static_cast<int>(by_a.size()) == nO;
            for (const auto& by_o : by_a) o_shape = o_shape && static_cast<int>(by_o.size()) == nS;
        }
        if (!o_shape) {
            out.push_back({base + ".O", "expected shape [actions][observations][states]"});
        } else {
            // Normalized axis is the observation: for each (a, s') the
            // observation probabilities must sum to 1.
            for (int a = 0; a < nA; ++a)
                for (int s2 = 0; s2 < nS; ++s2) {
                    Distribution col(nO);
                    for (int o = 0; o < nO; ++o) col[o] = m.O[a][o][s2];
                    check_row(base + ".O[" + spec.actions[a].name + "][s'=" + spec.states[s2] + "]",
                              col, out);
                }
        }

        const AgentView& v = spec.initial_views[g];
        if (v.owner != g) out.push_back({base, "initial view owner mismatch"});

        bool ad_shape = static_cast<int>(v.ad.size()) == nG;
        for (const auto& by_h : v.ad) ad_shape = ad_shape && static_cast<int>(by_h.size()) == nS;
        if (!ad_shape) {
            out.push_back({base + ".AD0", "expected shape [agents][states][actions]"});
        } else {
            for (int h = 0; h < nG; ++h)
                for (int s = 0; s < nS; ++s) {
                    if (static_cast<int>(v.ad[h][s].size()) != nA) {
                        out.push_back({base + ".AD0", "expected shape [agents][states][actions]"});
                        continue;
                    }
                    check_row(base + ".AD0[" + spec.agents[h] + "][" + spec.states[s] + "]",
                              v.ad[h][s], out);
                }
        }

        bool img_shape = static_cast<int>(v.img.size()) == nG;
        for (const auto& row : v.img) img_shape = img_shape && static_cast<int>(row.size()) == nG;
        if (!img_shape) {
            out.push_back({base + ".Img0", "expected shape [agents][agents]"});
        } else {
            for (int h = 0; h < nG; ++h)
                for (int i = 0; i < nG; ++i)
                    check_signed_unit(
                        base + ".Img0[" + spec.agents[h] + "][" + spec.agents[i] + "]",
                        v.img[h][i], "image", out);
        }

        bool b_shape = static_cast<int>(v.beliefs.size()) == nG;
        if (!b_shape) {
            out.push_back({base + ".B0", "expected shape [agents][states]"});
        } else {
            for (int h = 0; h < nG; ++h) {
                if (static_cast<int>(v.beliefs[h].size()) != nS) {
                    out.push_back({base + ".B0", "expected shape [agents][states]"});
                    continue;
                }
                check_row(base + ".B0[" + spec.agents[h] + "]", v.beliefs[h], out);
            }
        }
    }

    return out;
}

}  // namespace repnet
