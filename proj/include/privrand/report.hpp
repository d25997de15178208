#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "privrand/belldiag.hpp"
#include "privrand/bounds.hpp"
#include "privrand/format.hpp"
#include "privrand/version.hpp"

namespace privrand {

using ordered_json = nlohmann::ordered_json;

// +inf is a legitimate value (support violations); JSON has no literal for
// it, so infinite values are emitted as the string "+inf".
inline ordered_json json_number(double v) {
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  return ordered_json::parse(fmt12(v));
}

inline ordered_json to_json(const BoundReport& r) {
  ordered_json j;
  j["formula_id"] = r.formula_id;
  ordered_json inputs = ordered_json::object();
  for (const auto& [k, v] : r.inputs) inputs[k] = v;
  j["inputs"] = inputs;
  j["value"] = json_number(r.value);
  ordered_json conds = ordered_json::array();
  for (const auto& c : r.side_conditions)
    conds.push_back(ordered_json{{"name", c.name}, {"satisfied", c.satisfied}});
  j["side_conditions"] = conds;
  j["provenance"] = r.provenance;
  j["applicable"] = r.applicable();
  return j;
}

inline ordered_json to_json(const BellSearchReport& r) {
  ordered_json j;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["separable_only"] = r.separable_only;
  ordered_json v = ordered_json::array();
  for (const auto& viol : r.violations) {
    v.push_back(ordered_json{{"sample_index", viol.sample_index},
                             {"a_plus", json_number(viol.params.a_plus)},
                             {"a_minus", json_number(viol.params.a_minus)},
                             {"b_plus", json_number(viol.params.b_plus)},
                             {"b_minus", json_number(viol.params.b_minus)},
                             {"lhs", json_number(viol.lhs)},
                             {"rhs", json_number(viol.rhs)}});
  }
  j["violations"] = v;
  j["runtime_ms"] = r.runtime_ms;
  return j;
}

struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::uint64_t seed = 0;
  std::vector<std::string> outputs;
};

inline ordered_json to_json(const RunManifest& m) {
  ordered_json j;
  j["command"] = m.command;
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : m.parameters) params[k] = v;
  j["parameters"] = params;
  j["seed"] = m.seed;
  j["tool_version"] = kToolVersion;
  j["outputs"] = m.outputs;
  return j;
}

}  // namespace privrand
