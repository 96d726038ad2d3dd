#pragma once

#include "a2lab/piecewise_fn.hpp"

#include <nlohmann/json_fwd.hpp>
#include <string>

namespace a2lab {

/// JSON schema for a PiecewisePowerFn:
///   {"pieces": [{"l","r","log2_coeff","offset","exponent","orientation"}]}
/// All real fields round-trip bit-exactly (shortest-round-trip doubles).
nlohmann::json to_json(const PiecewisePowerFn& f);
PiecewisePowerFn piecewise_from_json(const nlohmann::json& j);

/// StepFn schema: {"breakpoints": [...], "log2_values": [...]} where an exact
/// zero cell is encoded as null (JSON has no -inf).
nlohmann::json to_json(const StepFn& s);
StepFn step_from_json(const nlohmann::json& j);

std::string orientation_name(Orientation o);
Orientation orientation_from_name(const std::string& name);

} // namespace a2lab
