#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "repnet/types.hpp"
#include "repnet/validate.hpp"

namespace repnet {

namespace detail {

using nlohmann::json;

inline void require_keys(const json& j, const std::string& path,
                         std::initializer_list<const char*> required,
                         std::initializer_list<const char*> optional = {}) {
    if (!j.is_object()) throw SchemaError(path + ": expected an object");
    for (const char* k : required)
        if (!j.contains(k)) throw SchemaError(path + ": missing key '" + k + "'");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : required) known = known || it.key() == k;
        for (const char* k : optional) known = known || it.key() == k;
        if (!known) throw SchemaError(path + ": unknown key '" + it.key() + "'");
    }
}

inline double as_number(const json& j, const std::string& path) {
    if (!j.is_number()) throw SchemaError(path + ": expected a number");
    return j.get<double>();
}

inline int as_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw SchemaError(path + ": expected an integer");
    return j.get<int>();
}

inline std::string as_string(const json& j, const std::string& path) {
    if (!j.is_string()) throw SchemaError(path + ": expected a string");
    return j.get<std::string>();
}

inline std::vector<std::string> as_string_list(const json& j, const std::string& path) {
    if (!j.is_array()) throw SchemaError(path + ": expected an array");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(as_string(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

inline Distribution as_row(const json& j, const std::string& path) {
    if (!j.is_array()) throw SchemaError(path + ": expected an array of numbers");
    Distribution out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(as_number(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

template <typename Inner>
auto as_nested(const json& j, const std::string& path, Inner inner)
    -> std::vector<decltype(inner(j, path))> {
    if (!j.is_array()) throw SchemaError(path + ": expected an array");
    std::vector<decltype(inner(j, path))> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(inner(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

inline int resolve(const std::vector<std::string>& names, const std::string& name,
                   const std::string& path, const char* what) {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<int>(i);
    throw ValidationError(path + ": unknown " + what + " '" + name + "'");
}

}  // namespace detail

/// Builds a DomainSpec from a JSON document. Checks document structure and
/// name resolution only; numeric invariants are validate()'s job.
inline DomainSpec parse_spec_json(const nlohmann::json& j) {
    using namespace detail;
    using nlohmann::json;

    require_keys(j, "spec",
                 {"agents", "states", "actions", "observations", "impact", "update_rule",
                  "hyper", "models"});

    DomainSpec spec;
    spec.agents = as_string_list(j["agents"], "agents");
    spec.states = as_string_list(j["states"], "states");
    spec.observations = as_string_list(j["observations"], "observations");

    if (!j["actions"].is_array()) throw SchemaError("actions: expected an array");
    for (std::size_t i = 0; i < j["actions"].size(); ++i) {
        const std::string path = "actions[" + std::to_string(i) + "]";
        const json& aj = j["actions"][i];
        require_keys(aj, path, {"name", "kind"}, {"target"});
        ActionDef def;
        def.name = as_string(aj["name"], path + ".name");
        const std::string kind = as_string(aj["kind"], path + ".kind");
        if (kind == "undirected") {
            def.kind = ActionKind::Undirected;
            if (aj.contains("target"))
                throw SchemaError(path + ": 'target' not allowed on an undirected action");
        } else if (kind == "directed") {
            def.kind = ActionKind::Directed;
            if (!aj.contains("target"))
                throw SchemaError(path + ": directed action requires a 'target'");
            def.target = resolve(spec.agents, as_string(aj["target"], path + ".target"),
                                 path + ".target", "agent");
        } else {
            throw SchemaError(path + ".kind: expected 'directed' or 'undirected'");
        }
        spec.actions.push_back(def);
    }
    assign_action_slots(spec.actions);

    std::vector<std::string> action_names;
    for (const auto& a : spec.actions) action_names.push_back(a.name);

    spec.impact = ImpactTable(spec.num_agents(), spec.num_states(), spec.num_actions());
    if (!j["impact"].is_array()) throw SchemaError("impact: expected an array");
    for (std::size_t i = 0; i < j["impact"].size(); ++i) {
        const std::string path = "impact[" + std::to_string(i) + "]";
        const json& rec = j["impact"][i];
        require_keys(rec, path, {"g", "s", "h", "sp", "a", "value"});
        const int g = resolve(spec.agents, as_string(rec["g"], path + ".g"), path + ".g", "agent");
        const int s = resolve(spec.states, as_string(rec["s"], path + ".s"), path + ".s", "state");
        const int h = resolve(spec.agents, as_string(rec["h"], path + ".h"), path + ".h", "agent");
        const int sp = resolve(spec.states, as_string(rec["sp"], path + ".sp"), path + ".sp", "state");
        const int a = resolve(action_names, as_string(rec["a"], path + ".a"), path + ".a", "action");
        spec.impact.set(g, s, h, sp, a, as_number(rec["value"], path + ".value"));
    }

    {
        const json& ur = j["update_rule"];
        require_keys(ur, "update_rule", {"variant", "alpha"});
        const std::string variant = as_string(ur["variant"], "update_rule.variant");
        if (variant == "difference") spec.update_rule.variant = UpdateVariant::Difference;
        else if (variant == "saturation") spec.update_rule.variant = UpdateVariant::Saturation;
        else throw SchemaError("update_rule.variant: expected 'difference' or 'saturation'");
        spec.update_rule.alpha = as_number(ur["alpha"], "update_rule.alpha");
    }

    {
        const json& hy = j["hyper"];
        require_keys(hy, "hyper", {"delta", "gamma", "reputation_bins"});
        spec.hyper.delta = as_number(hy["delta"], "hyper.delta");
        spec.hyper.gamma = as_number(hy["gamma"], "hyper.gamma");
        spec.hyper.reputation_bins = as_int(hy["reputation_bins"], "hyper.reputation_bins");
    }

    {
        const json& blocks = j["models"];
        if (!blocks.is_object()) throw SchemaError("models: expected an object keyed by agent name");
        for (auto it = blocks.begin(); it != blocks.end(); ++it)
            resolve(spec.agents, it.key(), "models", "agent");
        for (int g = 0; g < spec.num_agents(); ++g) {
            const std::string base = "models." + spec.agents[g];
            if (!blocks.contains(spec.agents[g]))
                throw SchemaError("models: missing block for agent '" + spec.agents[g] + "'");
            const json& blk = blocks[spec.agents[g]];
            require_keys(blk, base, {"T", "DT", "O", "AD0", "Img0", "B0"});

            AgentModels m;
            m.T = as_nested(blk["T"], base + ".T", [](const json& x, const std::string& p) {
                return as_nested(x, p, as_row);
            });
            m.DT = as_nested(blk["DT"], base + ".DT", [](const json& x, const std::string& p) {
                return as_nested(x, p, [](const json& y, const std::string& q) {
                    return as_nested(y, q, as_row);
                });
            });
            m.O = as_nested(blk["O"], base + ".O", [](const json& x, const std::string& p) {
                return as_nested(x, p, as_row);
            });
            spec.models.push_back(std::move(m));

            AgentView view;
            view.owner = g;
            view.ad = as_nested(blk["AD0"], base + ".AD0", [](const json& x, const std::string& p) {
                return as_nested(x, p, as_row);
            });
            view.img = as_nested(blk["Img0"], base + ".Img0", as_row);
            view.beliefs = as_nested(blk["B0"], base + ".B0", as_row);
            spec.initial_views.push_back(std::move(view));
        }
    }

    return spec;
}

/// Parses a spec file without validating numeric invariants.
inline DomainSpec parse_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
    return parse_spec_json(j);
}

/// Loads and fully validates a spec file. Throws ValidationError listing
/// every violation if any invariant fails.
inline DomainSpec load_spec(const std::string& path) {
    DomainSpec spec = parse_spec_file(path);
    const std::vector<Violation> violations = validate(spec);
    if (!violations.empty()) {
        std::ostringstream m;
        m << path << ": " << violations.size() << " violation(s)";
        for (const auto& v : violations) m << "\n  " << v.str();
        throw ValidationError(m.str());
    }
    return spec;
}

inline nlohmann::json spec_to_json(const DomainSpec& spec) {
    using nlohmann::json;
    json j;
    j["agents"] = spec.agents;
    j["states"] = spec.states;
    j["observations"] = spec.observations;

    j["actions"] = json::array();
    for (const auto& a : spec.actions) {
        json aj;
        aj["name"] = a.name;
        aj["kind"] = a.kind == ActionKind::Directed ? "directed" : "undirected";
        if (a.kind == ActionKind::Directed) aj["target"] = spec.agents[a.target];
        j["actions"].push_back(aj);
    }

    // Only non-default entries are stored.
    j["impact"] = json::array();
    for (int g = 0; g < spec.num_agents(); ++g)
        for (int s = 0; s < spec.num_states(); ++s)
            for (int h = 0; h < spec.num_agents(); ++h)
                for (int s2 = 0; s2 < spec.num_states(); ++s2)
                    for (int a = 0; a < spec.num_actions(); ++a) {
                        const double v = spec.impact.at(g, s, h, s2, a);
                        if (v == 0.0) continue;
                        json rec;
                        rec["g"] = spec.agents[g];
                        rec["s"] = spec.states[s];
                        rec["h"] = spec.agents[h];
                        rec["sp"] = spec.states[s2];
                        rec["a"] = spec.actions[a].name;
                        rec["value"] = v;
                        j["impact"].push_back(rec);
                    }

    j["update_rule"] = {
        {"variant", spec.update_rule.variant == UpdateVariant::Difference ? "difference"
                                                                          : "saturation"},
        {"alpha", spec.update_rule.alpha}};
    j["hyper"] = {{"delta", spec.hyper.delta},
                  {"gamma", spec.hyper.gamma},
                  {"reputation_bins", spec.hyper.reputation_bins}};

    j["models"] = json::object();
    for (int g = 0; g < spec.num_agents(); ++g) {
        json blk;
        blk["T"] = spec.models[g].T;
        blk["DT"] = spec.models[g].DT;
        blk["O"] = spec.models[g].O;
        blk["AD0"] = spec.initial_views[g].ad;
        blk["Img0"] = spec.initial_views[g].img;
        blk["B0"] = spec.initial_views[g].beliefs;
        j["models"][spec.agents[g]] = blk;
    }
    return j;
}

inline void save_spec(const DomainSpec& spec, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << spec_to_json(spec).dump(2) << "\n";
}

}  // namespace repnet
