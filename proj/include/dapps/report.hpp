#pragma once

#include "dapps/orchestrator.hpp"
#include "dapps/simulator.hpp"

#include <json.hpp>

#include <string>

namespace dapps {

inline constexpr int kReportVersion = 1;

// Shortest decimal form that reads back to the same double.
std::string format_number(double v);

// `metric,value,unit` rows in a fixed order, per-app rows sorted by app id.
std::string report_csv(const MetricsReport& r);

nlohmann::json report_json(const MetricsReport& r);
// Throws ParseError when fields are missing or mistyped.
MetricsReport report_from_json(const nlohmann::json& j);

nlohmann::json conflict_json(const ConflictRecord& c);

// Plan with objective and per-task justification.
nlohmann::json plan_json(const PlacementPlan& plan, const Intent& intent, const Topology& t);

} // namespace dapps
