// repnet: file-level front end for the reputation-network engine.
//
//   repnet validate <spec.json>
//   repnet plan     <spec.json> --agent NAME --horizon K [--oracle]
//   repnet simulate <spec.json> --steps N --seed S --out trace.jsonl
//                   [--policy agent=kind[:arg]]...
//   repnet bench    [--grid "G=2;S=2;A=1,2;O=1,2;k=1,2,3"] [--seed S]
//                   [--cap N] [--out bench.csv]
//
// stdout carries only machine-readable payloads; diagnostics go to stderr.
// Exit codes: 0 success, 1 semantic failure (violations, oracle disagreement,
// simulation fault), 2 unusable input (parse/schema errors, bad flags).

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "repnet/repnet.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitBadInput = 2;

int thread_count_from_env() {
    const char* raw = std::getenv("REPNET_THREADS");
    if (raw == nullptr) return 1;
    try {
        const int n = std::stoi(raw);
        return n >= 1 ? n : 1;
    } catch (const std::exception&) {
        return 1;
    }
}

int resolve_agent(const repnet::DomainSpec& spec, const std::string& name) {
    const int idx = spec.find_agent(name);
    if (idx >= 0) return idx;
    try {
        std::size_t used = 0;
        const int parsed = std::stoi(name, &used);
        if (used == name.size() && parsed >= 0 && parsed < spec.num_agents()) return parsed;
    } catch (const std::exception&) {
    }
    throw repnet::ValidationError("unknown agent '" + name + "'");
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) parts.push_back(item);
    return parts;
}

repnet::Policy parse_policy(const repnet::DomainSpec& spec, const std::string& kind_arg) {
    const std::size_t colon = kind_arg.find(':');
    const std::string kind = kind_arg.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : kind_arg.substr(colon + 1);

    repnet::Policy policy;
    if (kind == "random") {
        policy.kind = repnet::PolicyKind::Random;
    } else if (kind == "plan") {
        policy.kind = repnet::PolicyKind::Plan;
        policy.plan_horizon = arg.empty() ? 1 : std::stoi(arg);
        if (policy.plan_horizon < 1) throw repnet::RangeError("plan horizon must be >= 1");
    } else if (kind == "fixed") {
        policy.kind = repnet::PolicyKind::Fixed;
        for (const std::string& name : split(arg, ',')) {
            const int a = spec.find_action(name);
            if (a < 0) throw repnet::ValidationError("unknown action '" + name + "' in fixed script");
            policy.script.push_back(a);
        }
        if (policy.script.empty()) throw repnet::ValidationError("fixed policy needs a script");
    } else if (kind == "stationary") {
        policy.kind = repnet::PolicyKind::Stationary;
        std::ifstream in(arg);
        if (!in) throw repnet::ParseError("cannot open stationary policy file '" + arg + "'");
        nlohmann::json rows = nlohmann::json::parse(in);
        if (!rows.is_array() || static_cast<int>(rows.size()) != spec.num_states())
            throw repnet::SchemaError("stationary policy must be one action row per state");
        for (const auto& row : rows) {
            repnet::Distribution d = row.get<repnet::Distribution>();
            if (static_cast<int>(d.size()) != spec.num_actions())
                throw repnet::SchemaError("stationary policy rows must cover every action");
            policy.state_action.push_back(std::move(d));
        }
    } else {
        throw repnet::ValidationError("unknown policy kind '" + kind +
                                      "' (expected plan, fixed, random, or stationary)");
    }
    return policy;
}

int cmd_validate(const std::string& path) {
    repnet::DomainSpec spec = repnet::parse_spec_file(path);
    const std::vector<repnet::Violation> violations = repnet::validate(spec);
    if (violations.empty()) {
        std::cout << "OK\n";
        return kExitOk;
    }
    for (const repnet::Violation& v : violations) std::cout << v.str() << "\n";
    return kExitFailure;
}

int cmd_plan(const std::string& path, const std::string& agent, int horizon, bool oracle,
             std::uint64_t max_trees) {
    const repnet::DomainSpec spec = repnet::load_spec(path);

    repnet::PlanConfig cfg;
    cfg.agent = resolve_agent(spec, agent);
    cfg.horizon = horizon;
    cfg.gamma = spec.hyper.gamma;
    cfg.threads = thread_count_from_env();

    const repnet::AgentView& view = spec.initial_views[static_cast<std::size_t>(cfg.agent)];
    const repnet::PlanResult result = repnet::oi(spec, view, cfg);
    std::cout << repnet::plan_result_to_json(spec, result).dump(2) << "\n";

    if (oracle) {
        const repnet::oracle::OracleResult check =
            repnet::oracle::enumerate(spec, view, horizon, cfg.gamma, max_trees);
        const double gap = std::abs(check.value - result.value);
        if (gap > 1e-9 || check.best_action != result.best_action) {
            std::cerr << "oracle disagreement: planner chose "
                      << spec.actions[static_cast<std::size_t>(result.best_action)].name << " at "
                      << result.value << ", enumerator chose "
                      << spec.actions[static_cast<std::size_t>(check.best_action)].name << " at "
                      << check.value << " (|gap| " << gap << " over " << check.tree_count
                      << " trees)\n";
            return kExitFailure;
        }
        std::cerr << "oracle agreement over " << check.tree_count << " policy trees\n";
    }
    return kExitOk;
}

int cmd_simulate(const std::string& path, int steps, std::uint64_t seed,
                 const std::vector<std::string>& policy_args, const std::string& out_path) {
    const repnet::DomainSpec spec = repnet::load_spec(path);

    repnet::PolicySpec policies(static_cast<std::size_t>(spec.num_agents()));
    for (const std::string& spec_arg : policy_args) {
        const std::size_t eq = spec_arg.find('=');
        if (eq == std::string::npos)
            throw repnet::ValidationError("--policy expects agent=kind[:arg], got '" + spec_arg + "'");
        const int g = resolve_agent(spec, spec_arg.substr(0, eq));
        policies[static_cast<std::size_t>(g)] = parse_policy(spec, spec_arg.substr(eq + 1));
    }

    const std::vector<repnet::StepRecord> trace = repnet::run(spec, policies, steps, seed);

    std::ofstream out(out_path);
    if (!out) throw repnet::ParseError("cannot open trace output '" + out_path + "'");
    out << repnet::trace_to_jsonl(spec, trace);
    out.close();

    nlohmann::json cumulative = nlohmann::json::object();
    for (int g = 0; g < spec.num_agents(); ++g) {
        double total = 0.0;
        for (const repnet::StepRecord& rec : trace)
            total += rec.agents[static_cast<std::size_t>(g)].realized_impact;
        cumulative[spec.agents[static_cast<std::size_t>(g)]] = total;
    }
    nlohmann::json summary = {{"steps", steps},
                              {"seed", seed},
                              {"trace", out_path},
                              {"cumulative_realized_impact", cumulative}};
    std::cout << summary.dump(2) << "\n";
    return kExitOk;
}

struct GridAxis {
    std::string key;
    std::vector<int> values;
};

std::vector<GridAxis> parse_grid(const std::string& text) {
    std::vector<GridAxis> axes;
    for (const std::string& part : split(text, ';')) {
        if (part.empty()) continue;
        const std::size_t eq = part.find('=');
        if (eq == std::string::npos)
            throw repnet::ValidationError("grid axis '" + part + "' is not key=v1,v2,...");
        GridAxis axis;
        axis.key = part.substr(0, eq);
        for (const std::string& v : split(part.substr(eq + 1), ',')) axis.values.push_back(std::stoi(v));
        if (axis.values.empty()) throw repnet::ValidationError("grid axis '" + axis.key + "' is empty");
        axes.push_back(std::move(axis));
    }
    return axes;
}

int cmd_bench(const std::string& grid, std::uint64_t seed, std::uint64_t cap, const std::string& out_path) {
    std::map<std::string, std::vector<int>> axes = {
        {"G", {2}}, {"S", {2}}, {"A", {1, 2}}, {"O", {1, 2}}, {"k", {1, 2, 3}}};
    for (GridAxis& axis : parse_grid(grid)) {
        if (axes.find(axis.key) == axes.end())
            throw repnet::ValidationError("unknown grid axis '" + axis.key + "' (expected G,S,A,O,k)");
        axes[axis.key] = std::move(axis.values);
    }

    std::ostringstream csv;
    csv << "G,S,A,O,k,nodes_expanded,wall_time_ns,predicted_nodes\n";

    for (int G : axes["G"])
        for (int S : axes["S"])
            for (int A : axes["A"])
                for (int O : axes["O"])
                    for (int k : axes["k"]) {
                        const std::uint64_t predicted = repnet::expected_node_count(
                            static_cast<std::uint64_t>(A), static_cast<std::uint64_t>(O),
                            static_cast<std::uint64_t>(k));
                        if (predicted > cap) {
                            std::cerr << "bench configuration A=" << A << " O=" << O << " k=" << k
                                      << " predicts " << predicted << " nodes, over cap " << cap
                                      << "\n";
                            return kExitBadInput;
                        }

                        repnet::GenConfig gen;
                        gen.agents = G;
                        gen.states = S;
                        gen.directed = A >= 2 ? 1 : 0;
                        gen.undirected = A - gen.directed;
                        gen.observations = O;
                        gen.reputation_bins = gen.directed > 0 ? 2 : 1;
                        gen.strictly_positive = true;
                        const repnet::DomainSpec spec = repnet::random_spec(gen, seed);

                        repnet::PlanConfig cfg;
                        cfg.agent = 0;
                        cfg.horizon = k;
                        cfg.gamma = spec.hyper.gamma;
                        cfg.threads = thread_count_from_env();

                        const auto start = std::chrono::steady_clock::now();
                        const repnet::PlanResult result = repnet::oi(spec, spec.initial_views[0], cfg);
                        const auto stop = std::chrono::steady_clock::now();
                        const auto ns =
                            std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count();

                        csv << G << "," << S << "," << A << "," << O << "," << k << ","
                            << result.nodes_expanded << "," << ns << "," << predicted << "\n";
                    }

    if (out_path.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream out(out_path);
        if (!out) throw repnet::ParseError("cannot open bench output '" + out_path + "'");
        out << csv.str();
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"reputation-network engine"};
    app.require_subcommand(1);

    std::string spec_path;
    std::string agent = "0";
    int horizon = 1;
    bool oracle = false;
    std::uint64_t max_trees = 1ull << 20;

    int steps = 1;
    std::uint64_t seed = 0;
    std::vector<std::string> policy_args;
    std::string out_path;

    std::string grid;
    std::uint64_t cap = 1000000;
    std::string bench_out;

    CLI::App* validate = app.add_subcommand("validate", "check a domain file");
    validate->add_option("spec", spec_path, "domain JSON file")->required();

    CLI::App* plan = app.add_subcommand("plan", "run the optimal-impact planner");
    plan->add_option("spec", spec_path, "domain JSON file")->required();
    plan->add_option("--agent", agent, "planning agent (name or index)");
    plan->add_option("--horizon", horizon, "plan depth k >= 1");
    plan->add_flag("--oracle", oracle, "cross-check against the brute-force enumerator");
    plan->add_option("--max-trees", max_trees, "policy-tree cap for --oracle");

    CLI::App* simulate = app.add_subcommand("simulate", "run the synchronous simulator");
    simulate->add_option("spec", spec_path, "domain JSON file")->required();
    simulate->add_option("--steps", steps, "number of steps")->required();
    simulate->add_option("--seed", seed, "RNG seed");
    simulate->add_option("--policy", policy_args, "agent=kind[:arg]; kinds: plan[:k], fixed:a1,a2,..., random, stationary:file");
    simulate->add_option("--out", out_path, "trace output path (JSON Lines)")->required();

    CLI::App* bench = app.add_subcommand("bench", "node-count benchmark over generated domains");
    bench->add_option("--grid", grid, "axes, e.g. \"G=2;S=2;A=1,2;O=1,2;k=1,2,3\"");
    bench->add_option("--seed", seed, "generator seed");
    bench->add_option("--cap", cap, "refuse configurations predicting more nodes than this");
    bench->add_option("--out", bench_out, "CSV output path (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitBadInput;
    }

    try {
        if (validate->parsed()) return cmd_validate(spec_path);
        if (plan->parsed()) return cmd_plan(spec_path, agent, horizon, oracle, max_trees);
        if (simulate->parsed()) return cmd_simulate(spec_path, steps, seed, policy_args, out_path);
        if (bench->parsed()) return cmd_bench(grid, seed, cap, bench_out);
    } catch (const repnet::SimulationFault& e) {
        std::cerr << "simulation fault at step " << e.step << ", agent " << e.agent << ": "
                  << e.what() << "\n";
        return kExitFailure;
    } catch (const repnet::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const repnet::SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const repnet::ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const repnet::OverflowError& e) {
        std::cerr << "size guard: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const repnet::RangeError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    return kExitBadInput;
}
