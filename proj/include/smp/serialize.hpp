#pragma once

// JSON instance files. Exact numbers are written as "p/q" strings and read
// back exactly; floating-point parameters are written as JSON numbers.

#include <string>

#include "json.hpp"

#include "smp/instances.hpp"

namespace smp {

inline constexpr const char* kInstanceSchema = "smplab.instance";
inline constexpr int kInstanceVersion = 1;

nlohmann::json instance_to_json(const InstanceBundle& bundle);
// Throws ParseError naming the offending field or kind.
InstanceBundle instance_from_json(const nlohmann::json& doc);

std::string serialize_instance(const InstanceBundle& bundle);
InstanceBundle parse_instance(const std::string& text);

InstanceBundle load_instance(const std::string& path);
void save_instance(const InstanceBundle& bundle, const std::string& path);

// Component encoders, shared with reports.
nlohmann::json number_to_json(const Number& n);
Number number_from_json(const nlohmann::json& j, const std::string& field);
nlohmann::json valuation_to_json(const ValuationFunction& f, const Universe& universe);
nlohmann::json family_to_json(const IndependenceOracle& family, const Universe& universe);
nlohmann::json constraint_to_json(const ConstraintOracle& constraint, const Universe& universe);
nlohmann::json tree_to_json(const DecisionTree& tree);

}  // namespace smp
