#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "jamsched/metrics.hpp"
#include "jamsched/scenario.hpp"

namespace jamsched {

/// A parsed scenario file: the runnable scenario plus, when present, a stored
/// offline plan (used instead of the oracle beyond its caps).
struct LoadedScenario {
  Scenario scenario;
  std::optional<OptSchedule> plan;
};

/// Parses the scenario JSON document:
///   {"lengths": [...], "horizon": "p/q", "speedup": "p/q",
///    "arrivals": [["t", index], ...], "errors": ["t", ...],
///    "adversary": {"kind": ...}, "seed": n, "opt_plan": [["t", index], ...]}
/// Times are rationals in base units ("p/q" strings or integers). Unknown
/// keys are rejected. Throws InvalidScenario on any malformed field.
LoadedScenario scenario_from_json(const nlohmann::json& doc);

nlohmann::json scenario_to_json(const Scenario& s, const OptSchedule* plan = nullptr);

nlohmann::json series_to_json(const RatioSeries& series);
std::string series_to_csv(const RatioSeries& series);

/// Audit report with the derived constants of the length system attached.
nlohmann::json audit_report_to_json(const AuditReport& report, const LengthSystem& ls);

}  // namespace jamsched
