#pragma once

#include <string>
#include <vector>

#include "privaudit/core.hpp"
#include "privaudit/policy.hpp"

#include "json.hpp"

namespace privaudit {

/// Schema config: {"attributes":[{"name","kind","role","bins"}...]}.
inline std::vector<AttributeSchema> schema_from_json(const nlohmann::json& j) {
  if (!j.contains("attributes") || !j["attributes"].is_array())
    throw SchemaError("schema file must contain an \"attributes\" array");
  std::vector<AttributeSchema> out;
  for (const auto& aj : j["attributes"]) {
    AttributeSchema a;
    if (!aj.contains("name")) throw SchemaError("schema attribute without a name");
    a.name = aj["name"].get<std::string>();
    const std::string kind = aj.value("kind", "categorical");
    if (kind == "categorical") a.kind = AttributeKind::categorical;
    else if (kind == "continuous") a.kind = AttributeKind::continuous;
    else throw SchemaError("attribute " + a.name + ": unknown kind \"" + kind + "\"");
    const std::string role = aj.value("role", "other");
    if (role == "quasi-identifier" || role == "qi") a.role = AttributeRole::quasi_identifier;
    else if (role == "sensitive") a.role = AttributeRole::sensitive;
    else if (role == "other") a.role = AttributeRole::other;
    else throw SchemaError("attribute " + a.name + ": unknown role \"" + role + "\"");
    a.bins = aj.value("bins", 20);
    out.push_back(a);
  }
  validate_schema(out);
  return out;
}

inline std::vector<AttributeSchema> load_schema(const std::string& path) {
  return schema_from_json(nlohmann::json::parse(read_file(path)));
}

inline Thresholds thresholds_from_json(const nlohmann::json& j) {
  Thresholds t;
  t.f_rel_anchor = j.value("f_rel_anchor", t.f_rel_anchor);
  t.a_rel = j.value("a_rel", t.a_rel);
  t.a_abs = j.value("a_abs", t.a_abs);
  t.epsilon_near_zero = j.value("epsilon_near_zero", t.epsilon_near_zero);
  if (j.contains("adjustments")) {
    for (const auto& aj : j["adjustments"]) {
      ThresholdAdjustment adj;
      adj.target = aj.value("target", "");
      adj.delta = aj.value("delta", 0.0);
      adj.justification = aj.value("justification", "");
      t.adjustments.push_back(adj);
    }
  }
  t.effective(); // validate now: bad adjustments are config errors
  return t;
}

} // namespace privaudit
