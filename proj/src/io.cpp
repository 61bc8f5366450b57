#include "jamsched/io.hpp"

#include <set>
#include <sstream>

#include "jamsched/adversaries.hpp"

namespace jamsched {

namespace {

using nlohmann::json;

Rat rat_from_json(const json& v, const char* what) {
  try {
    if (v.is_number_integer()) return Rat(v.get<long long>());
    if (v.is_string()) return parse_rational(v.get<std::string>());
  } catch (const std::invalid_argument&) {
  }
  throw InvalidScenario(std::string(what) + ": expected an integer or a \"p/q\" string");
}

void check_keys(const json& doc, const std::set<std::string>& allowed, const char* where) {
  for (const auto& [key, value] : doc.items()) {
    if (!allowed.count(key))
      throw InvalidScenario("unknown key \"" + key + "\" in " + where);
  }
}

long long int_field(const json& doc, const char* key, long long fallback) {
  if (!doc.contains(key)) return fallback;
  if (!doc[key].is_number_integer())
    throw InvalidScenario(std::string(key) + ": expected an integer");
  return doc[key].get<long long>();
}

/// Converts a rational instant in base units to ticks under resolution r.
Tick to_ticks(const Rat& t, long long r, const char* what) {
  Rat v = t * Rat(r);
  if (v.denominator() != 1)
    throw InvalidScenario(std::string(what) + ": instant not representable at this resolution");
  return v.numerator();
}

OptSchedule plan_from_json(const json& v, const Scenario& s) {
  if (!v.is_array()) throw InvalidScenario("opt_plan: expected an array");
  OptSchedule plan;
  for (const auto& entry : v) {
    if (!entry.is_array() || entry.size() != 2)
      throw InvalidScenario("opt_plan: expected [time, length_index] pairs");
    Tick start = to_ticks(rat_from_json(entry[0], "opt_plan time"), s.ticks_per_unit, "opt_plan");
    long long idx = entry[1].get<long long>();
    if (idx < 1 || idx > s.ls.k()) throw InvalidScenario("opt_plan: length index out of range");
    plan.plan.push_back({start, static_cast<int>(idx)});
    plan.value += s.ls.length(static_cast<int>(idx));
  }
  return plan;
}

LoadedScenario from_generator(const json& adv, const std::vector<Rat>& lengths) {
  std::vector<Rat> expect{Rat(1), Rat(2)};
  if (lengths != expect)
    throw InvalidScenario("this adversary kind is defined for lengths [1, 2]");
  std::string kind = adv["kind"].get<std::string>();
  LoadedScenario out;
  if (kind == "ll-killer") {
    check_keys(adv, {"kind", "periods"}, "adversary");
    auto [s, plan] = ll_killer_scenario(int_field(adv, "periods", 100));
    out.scenario = std::move(s);
    out.plan = std::move(plan);
  } else {
    check_keys(adv, {"kind", "cycles"}, "adversary");
    auto [s, plan] = sl_bound_scenario(int_field(adv, "cycles", 100));
    out.scenario = std::move(s);
    out.plan = std::move(plan);
  }
  return out;
}

}  // namespace

LoadedScenario scenario_from_json(const json& doc) {
  if (!doc.is_object()) throw InvalidScenario("scenario document must be a JSON object");
  check_keys(doc,
             {"lengths", "horizon", "speedup", "arrivals", "errors", "adversary", "seed",
              "opt_plan"},
             "scenario");
  if (!doc.contains("lengths") || !doc["lengths"].is_array())
    throw InvalidScenario("lengths: required array");
  std::vector<Rat> lengths;
  for (const auto& v : doc["lengths"]) lengths.push_back(rat_from_json(v, "lengths"));
  LengthSystem ls = build_length_system(lengths);

  if (doc.contains("adversary")) {
    const json& adv = doc["adversary"];
    if (!adv.is_object() || !adv.contains("kind") || !adv["kind"].is_string())
      throw InvalidScenario("adversary: expected an object with a \"kind\" string");
    std::string kind = adv["kind"].get<std::string>();
    if (kind == "ll-killer" || kind == "sl-bound") return from_generator(adv, lengths);
  }

  if (!doc.contains("horizon")) throw InvalidScenario("horizon: required");
  Rat horizon = rat_from_json(doc["horizon"], "horizon");
  Rat speedup = doc.contains("speedup") ? rat_from_json(doc["speedup"], "speedup") : Rat(1);

  std::vector<std::pair<Rat, int>> arrivals;
  if (doc.contains("arrivals")) {
    if (!doc["arrivals"].is_array()) throw InvalidScenario("arrivals: expected an array");
    for (const auto& entry : doc["arrivals"]) {
      if (!entry.is_array() || entry.size() != 2 || !entry[1].is_number_integer())
        throw InvalidScenario("arrivals: expected [time, length_index] pairs");
      arrivals.emplace_back(rat_from_json(entry[0], "arrival time"), entry[1].get<int>());
    }
  }
  std::vector<Rat> errors;
  if (doc.contains("errors")) {
    if (!doc["errors"].is_array()) throw InvalidScenario("errors: expected an array");
    for (const auto& v : doc["errors"]) errors.push_back(rat_from_json(v, "error time"));
  }

  LoadedScenario out;
  try {
    out.scenario = make_scenario(ls, arrivals, errors, horizon, speedup);
  } catch (const std::out_of_range&) {
    throw InvalidScenario("arrival length index out of range");
  }

  if (doc.contains("adversary")) {
    const json& adv = doc["adversary"];
    std::string kind = adv["kind"].get<std::string>();
    if (kind == "scripted") {
      check_keys(adv, {"kind"}, "adversary");
    } else if (kind == "two-length-driver") {
      check_keys(adv, {"kind", "i", "j"}, "adversary");
      int i = static_cast<int>(int_field(adv, "i", ls.k()));
      int j = static_cast<int>(int_field(adv, "j", 1));
      try {
        out.scenario.adversary = std::make_shared<TwoLengthAdversary>(ls, i, j);
      } catch (const std::invalid_argument& e) {
        throw InvalidScenario(e.what());
      }
    } else if (kind == "stochastic") {
      check_keys(adv, {"kind", "mean-arrival-gap-ticks", "mean-jam-gap-ticks"}, "adversary");
      std::uint64_t seed = static_cast<std::uint64_t>(int_field(doc, "seed", 1));
      double ag = adv.contains("mean-arrival-gap-ticks")
                      ? adv["mean-arrival-gap-ticks"].get<double>()
                      : 4.0;
      double jg =
          adv.contains("mean-jam-gap-ticks") ? adv["mean-jam-gap-ticks"].get<double>() : 16.0;
      try {
        out.scenario.adversary = std::make_shared<StochasticAdversary>(seed, ag, jg);
      } catch (const std::invalid_argument& e) {
        throw InvalidScenario(e.what());
      }
    } else {
      throw InvalidScenario("unknown adversary kind \"" + kind + "\"");
    }
  }

  if (doc.contains("opt_plan")) out.plan = plan_from_json(doc["opt_plan"], out.scenario);
  return out;
}

nlohmann::json scenario_to_json(const Scenario& s, const OptSchedule* plan) {
  json doc;
  doc["lengths"] = json::array();
  for (long long l : s.ls.lengths()) doc["lengths"].push_back(l);
  long long r = s.ticks_per_unit;
  auto unit_str = [r](Tick t) { return format_rational(Rat(t, r)); };
  doc["horizon"] = unit_str(s.horizon);
  doc["speedup"] = format_rational(s.speedup);
  doc["arrivals"] = json::array();
  for (const auto& a : s.arrivals) doc["arrivals"].push_back({unit_str(a.time), a.length_index});
  doc["errors"] = json::array();
  for (Tick e : s.errors) doc["errors"].push_back(unit_str(e));
  if (plan) {
    doc["opt_plan"] = json::array();
    for (const auto& [start, idx] : plan->plan) doc["opt_plan"].push_back({unit_str(start), idx});
  }
  return doc;
}

nlohmann::json series_to_json(const RatioSeries& series) {
  json doc;
  doc["samples"] = json::array();
  for (const auto& s : series.samples) {
    doc["samples"].push_back(
        {{"t", s.t}, {"l_alg", s.l_alg}, {"l_opt", s.l_opt}, {"ratio", format_rational(s.ratio)}});
  }
  doc["tail_estimate"] = format_rational(series.tail_estimate);
  return doc;
}

std::string series_to_csv(const RatioSeries& series) {
  std::ostringstream out;
  out << "t,L_alg,L_opt,ratio\n";
  for (const auto& s : series.samples)
    out << s.t << "," << s.l_alg << "," << s.l_opt << "," << format_rational(s.ratio) << "\n";
  return out.str();
}

nlohmann::json audit_report_to_json(const AuditReport& report, const LengthSystem& ls) {
  json doc;
  doc["audit"] = report.audit;
  doc["pass"] = report.pass;
  doc["slack"] = format_rational(report.slack);
  doc["detail"] = report.detail;
  doc["samples"] = json::array();
  for (const auto& s : report.samples) {
    doc["samples"].push_back(
        {{"t", s.t}, {"l_alg", s.l_alg}, {"l_opt", s.l_opt}, {"pass", s.pass}});
  }
  AuxConstants aux = aux_constants(ls);
  doc["constants"] = {{"gamma", format_rational(upper_bound_gamma(ls))},
                      {"delta", format_rational(aux.delta)},
                      {"eta", format_rational(aux.eta)},
                      {"f", f_constants(ls)}};
  return doc;
}

}  // namespace jamsched
