#pragma once

#include <string>

#include "diracflow/json_io.hpp"

namespace diracflow {

/// One verification record; serialized shape matches schema/report.schema.json.
struct CheckReport {
  std::string check;
  int dim = 0;
  std::int64_t seed = 0;
  double kappa = 0.0;
  Json values = Json::object();
  bool pass = false;
  double tolerance = 0.0;

  Json to_json() const {
    return Json{{"check", check}, {"dim", dim},   {"seed", seed},      {"kappa", kappa},
                {"values", values}, {"pass", pass}, {"tolerance", tolerance}};
  }
};

/// Minimal structural validator for the subset of JSON Schema the shipped
/// schema uses: type, properties, required, items, additionalProperties.
inline bool validate_against_schema(const Json& doc, const Json& schema,
                                    std::string* error = nullptr) {
  auto fail = [&](const std::string& message) {
    if (error) *error = message;
    return false;
  };

  if (schema.contains("type")) {
    const std::string type = schema["type"].get<std::string>();
    const bool ok = (type == "object" && doc.is_object()) ||
                    (type == "array" && doc.is_array()) ||
                    (type == "string" && doc.is_string()) ||
                    (type == "boolean" && doc.is_boolean()) ||
                    (type == "number" && doc.is_number()) ||
                    (type == "integer" && doc.is_number_integer());
    if (!ok) return fail("expected type '" + type + "', got " + doc.dump());
  }
  if (schema.contains("required")) {
    for (const auto& key : schema["required"])
      if (!doc.contains(key.get<std::string>()))
        return fail("missing required key '" + key.get<std::string>() + "'");
  }
  if (schema.contains("properties") && doc.is_object()) {
    for (const auto& [key, sub] : schema["properties"].items()) {
      if (!doc.contains(key)) continue;
      if (!validate_against_schema(doc.at(key), sub, error)) return false;
    }
    if (schema.contains("additionalProperties") &&
        schema["additionalProperties"].is_boolean() &&
        !schema["additionalProperties"].get<bool>()) {
      for (const auto& [key, value] : doc.items())
        if (!schema["properties"].contains(key))
          return fail("unexpected key '" + key + "'");
    }
  }
  if (schema.contains("items") && doc.is_array()) {
    for (const auto& element : doc)
      if (!validate_against_schema(element, schema["items"], error)) return false;
  }
  return true;
}

}  // namespace diracflow
