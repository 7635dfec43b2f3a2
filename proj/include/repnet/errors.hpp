#pragma once

#include <stdexcept>
#include <string>

namespace repnet {

/// Malformed input that never produced a JSON document (bad syntax,
/// unreadable file).
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Structurally wrong document: missing key, unknown key, wrong type or
/// tensor arity. The message names the offending path.
struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

/// Semantically invalid values: row sums off, out-of-range entries,
/// duplicate or unresolvable names.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Scalar argument outside its documented range (reputation or impact
/// outside [-1,1], etc.).
struct RangeError : std::runtime_error {
    explicit RangeError(const std::string& what) : std::runtime_error(what) {}
};

/// A belief update was asked to condition on an observation whose
/// probability under the model is zero.
struct ImpossibleObservation : std::runtime_error {
    ImpossibleObservation(const std::string& what, int agent_index)
        : std::runtime_error(what), agent(agent_index) {}
    int agent;
};

/// A counter or node-count computation exceeded 64 bits.
struct OverflowError : std::runtime_error {
    explicit OverflowError(const std::string& what) : std::runtime_error(what) {}
};

/// Wraps any error raised while stepping the simulator, with the step and
/// agent it occurred at.
struct SimulationFault : std::runtime_error {
    SimulationFault(const std::string& what, int step_index, int agent_index)
        : std::runtime_error(what), step(step_index), agent(agent_index) {}
    int step;
    int agent;
};

}  // namespace repnet
