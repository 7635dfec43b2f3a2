#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "repnet/spec_io.hpp"
#include "repnet/types.hpp"

#ifndef REPNET_DOMAIN_DIR
#define REPNET_DOMAIN_DIR "domains"
#endif

namespace fixtures {

inline std::string domain_path(const std::string& name) {
    return std::string(REPNET_DOMAIN_DIR) + "/" + name;
}

/// Minimal valid two-agent document the tests mutate to probe the loader.
inline nlohmann::json micro_json() {
    return nlohmann::json::parse(R"({
      "agents": ["a", "b"],
      "states": ["s0", "s1"],
      "actions": [
        {"name": "go", "kind": "undirected"},
        {"name": "hit@b", "kind": "directed", "target": "b"}
      ],
      "observations": ["low", "high"],
      "impact": [
        {"g": "a", "s": "s0", "h": "b", "sp": "s1", "a": "hit@b", "value": -0.5},
        {"g": "b", "s": "s1", "h": "a", "sp": "s0", "a": "go", "value": 0.25}
      ],
      "update_rule": {"variant": "difference", "alpha": 0.5},
      "hyper": {"delta": 0.5, "gamma": 0.9, "reputation_bins": 2},
      "models": {
        "a": {
          "T": [[[0.8, 0.2]], [[0.4, 0.6]]],
          "DT": [[[[0.7, 0.3], [0.2, 0.8]]], [[[0.5, 0.5], [0.1, 0.9]]]],
          "O": [[[0.9, 0.2], [0.1, 0.8]], [[0.6, 0.3], [0.4, 0.7]]],
          "AD0": [[[0.5, 0.5], [0.6, 0.4]], [[0.3, 0.7], [0.8, 0.2]]],
          "Img0": [[0.1, -0.2], [0.3, 0.4]],
          "B0": [[0.7, 0.3], [0.2, 0.8]]
        },
        "b": {
          "T": [[[0.6, 0.4]], [[0.3, 0.7]]],
          "DT": [[[[0.9, 0.1], [0.4, 0.6]]], [[[0.2, 0.8], [0.6, 0.4]]]],
          "O": [[[0.7, 0.1], [0.3, 0.9]], [[0.5, 0.4], [0.5, 0.6]]],
          "AD0": [[[0.4, 0.6], [0.5, 0.5]], [[0.9, 0.1], [0.2, 0.8]]],
          "Img0": [[-0.1, 0.0], [0.2, 0.5]],
          "B0": [[0.5, 0.5], [0.6, 0.4]]
        }
      }
    })");
}

inline repnet::DomainSpec micro_spec() { return repnet::parse_spec_json(micro_json()); }

}  // namespace fixtures
