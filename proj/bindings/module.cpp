// Python bindings. Structured data crosses the boundary as JSON strings; the
// Python package wraps them into dicts, so the binding itself stays thin and
// the exact-rational values survive as "p/q" strings.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "jamsched/adversaries.hpp"
#include "jamsched/engine.hpp"
#include "jamsched/io.hpp"
#include "jamsched/metrics.hpp"
#include "jamsched/search.hpp"

namespace py = pybind11;
using namespace jamsched;
using nlohmann::json;

namespace {

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidScenario(e.what());
  }
}

LengthSystem lengths_from(const std::vector<std::string>& raw) {
  std::vector<Rat> lengths;
  for (const auto& item : raw) lengths.push_back(parse_rational(item));
  return build_length_system(lengths);
}

std::string constants_json(const std::vector<std::string>& raw) {
  LengthSystem ls = lengths_from(raw);
  AuxConstants aux = aux_constants(ls);
  json doc;
  doc["lengths"] = ls.lengths();
  doc["k"] = ls.k();
  doc["divisible"] = ls.divisible();
  doc["gamma"] = format_rational(upper_bound_gamma(ls));
  doc["f"] = f_constants(ls);
  doc["eta"] = format_rational(aux.eta);
  doc["delta"] = format_rational(aux.delta);
  return doc.dump();
}

RatioSeries score(const Trace& trace, const LoadedScenario& loaded, int samples) {
  const Scenario& s = loaded.scenario;
  auto at = default_samples(s.horizon, samples);
  if (loaded.plan) return ratio_series(trace, s, at, &*loaded.plan);
  try {
    return ratio_series(trace, s, at, nullptr);
  } catch (const InstanceTooLarge&) {
    OptSchedule plan =
        largest_fit_plan(s.ls, trace.arrivals, trace.errors, s.horizon, s.ticks_per_unit);
    return ratio_series(trace, s, at, &plan);
  }
}

std::string simulate_json(const std::string& scenario_text, const std::string& policy_id,
                          int samples) {
  LoadedScenario loaded = scenario_from_json(parse(scenario_text));
  auto policy = make_policy(policy_id, loaded.scenario.ls);
  Trace trace = run(*policy, loaded.scenario);
  RatioSeries series = score(trace, loaded, samples);
  json doc;
  doc["policy"] = policy->id();
  doc["completed"] = completed_length(trace, loaded.scenario.ls, loaded.scenario.horizon);
  doc["records"] = json::array();
  for (const auto& r : trace.records) {
    const char* outcome = r.outcome == Outcome::Success   ? "success"
                          : r.outcome == Outcome::Jammed ? "jammed"
                                                         : "truncated";
    doc["records"].push_back(
        {{"start", r.start}, {"end", r.end}, {"length_index", r.length_index},
         {"outcome", outcome}});
  }
  doc["series"] = series_to_json(series);
  doc["realized"] = scenario_to_json(make_tick_scenario(
      loaded.scenario.ls, trace.arrivals, trace.errors, loaded.scenario.horizon,
      loaded.scenario.speedup, loaded.scenario.ticks_per_unit));
  return doc.dump();
}

std::string offline_opt_json(const std::string& scenario_text) {
  LoadedScenario loaded = scenario_from_json(parse(scenario_text));
  OptSchedule opt = offline_opt(loaded.scenario);
  json doc;
  doc["value"] = opt.value;
  doc["plan"] = opt.plan;
  return doc.dump();
}

std::string audit_json(const std::string& scenario_text, const std::string& policy_id,
                       int samples) {
  LoadedScenario loaded = scenario_from_json(parse(scenario_text));
  const Scenario& s = loaded.scenario;
  auto policy = make_policy(policy_id, s.ls);
  Trace trace = run(*policy, s);
  RatioSeries series = score(trace, loaded, samples);
  AuditReport report;
  if (policy_id.rfind("greedy", 0) == 0) {
    report = audit_greedy(trace, s, series, policy_id);
  } else if (policy_id == "prudent") {
    OptSchedule plan = loaded.plan ? *loaded.plan
                                   : offline_opt(s.ls, trace.arrivals, trace.errors,
                                                 s.horizon, s.ticks_per_unit);
    report = audit_prudent(trace, s, series, plan, policy_id);
  } else if (policy_id.rfind("mgreedy", 0) == 0) {
    auto* mg = dynamic_cast<MGreedyPolicy*>(policy.get());
    report = audit_mgreedy(s, series, mg->stage_parameter(), policy_id);
    for (const auto& stage : uniform_call_summary(*mg, s.ls))
      if (!stage.pass) report.pass = false;
  } else {
    throw AuditMismatch("no audit defined for policy " + policy_id);
  }
  return audit_report_to_json(report, s.ls).dump();
}

std::string search_json(const std::string& policy_id, const std::vector<std::string>& raw,
                        const std::vector<long long>& max_per_length, long long max_jams,
                        long long horizon_ticks, long long node_limit) {
  LengthSystem ls = lengths_from(raw);
  SearchBudget budget{max_per_length, max_jams, horizon_ticks};
  auto policy = make_policy(policy_id, ls);
  SearchResult result =
      worst_case_search(*policy, ls, budget, node_limit > 0 ? node_limit : search_node_limit());
  json doc;
  doc["min_ratio"] = format_rational(result.min_ratio);
  doc["alg"] = result.alg;
  doc["opt"] = result.opt;
  doc["nodes"] = result.nodes;
  doc["patterns"] = result.patterns;
  doc["witness"] = scenario_to_json(
      make_tick_scenario(ls, result.witness_arrivals, result.witness_errors, budget.horizon));
  return doc.dump();
}

}  // namespace

PYBIND11_MODULE(_jamsched, m) {
  m.doc() = "online packet scheduling under jamming: exact simulation core";

  py::register_exception<InvalidScenario>(m, "InvalidScenario", PyExc_ValueError);
  py::register_exception<InstanceTooLarge>(m, "InstanceTooLarge", PyExc_RuntimeError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

  m.def("constants_json", &constants_json, py::arg("lengths"),
        "derived constants of a length system, as a JSON string");
  m.def("simulate_json", &simulate_json, py::arg("scenario"), py::arg("policy"),
        py::arg("samples") = 20, "run a policy on a scenario JSON document");
  m.def("offline_opt_json", &offline_opt_json, py::arg("scenario"),
        "exact offline optimum of a scenario JSON document");
  m.def("audit_json", &audit_json, py::arg("scenario"), py::arg("policy"),
        py::arg("samples") = 20, "run the guarantee audit for a policy family");
  m.def("search_json", &search_json, py::arg("policy"), py::arg("lengths"),
        py::arg("max_per_length"), py::arg("max_jams"), py::arg("horizon_ticks"),
        py::arg("node_limit") = 0, "exhaustive worst-case adversary search");
}
