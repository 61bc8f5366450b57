#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "jamsched/adversaries.hpp"
#include "jamsched/engine.hpp"
#include "jamsched/io.hpp"
#include "jamsched/metrics.hpp"
#include "jamsched/search.hpp"

namespace {

using namespace jamsched;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kAuditFail = 1;
constexpr int kInvalidInput = 2;
constexpr int kResourceCap = 3;

LoadedScenario load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidScenario("cannot open " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw InvalidScenario(path + ": " + e.what());
  }
  return scenario_from_json(doc);
}

RatioSeries evaluate(const Trace& trace, const LoadedScenario& loaded, int samples,
                     const std::string& baseline) {
  const Scenario& s = loaded.scenario;
  auto samples_at = default_samples(s.horizon, samples);
  auto fit = [&] {
    return largest_fit_plan(s.ls, trace.arrivals, trace.errors, s.horizon, s.ticks_per_unit);
  };
  if (baseline == "oracle") return ratio_series(trace, s, samples_at, nullptr);
  if (baseline == "largest-fit") {
    OptSchedule plan = fit();
    return ratio_series(trace, s, samples_at, &plan);
  }
  // auto: stored plan, else the exact oracle, else the feasible largest-fit
  // plan once the instance outgrows the oracle caps.
  if (loaded.plan) return ratio_series(trace, s, samples_at, &*loaded.plan);
  try {
    return ratio_series(trace, s, samples_at, nullptr);
  } catch (const InstanceTooLarge&) {
    OptSchedule plan = fit();
    return ratio_series(trace, s, samples_at, &plan);
  }
}

struct AuditOutcome {
  json report;
  bool pass = true;
};

AuditOutcome run_audit(const std::string& path, const std::string& policy_id, int samples,
                       const std::string& baseline, bool mutate) {
  LoadedScenario loaded = load_file(path);
  auto policy = make_policy(policy_id, loaded.scenario.ls);
  Trace trace = run(*policy, loaded.scenario);
  if (mutate) {
    // Deliberate corruption hook: drop two of every three successes. Halving
    // would still satisfy 2*L + f_k >= L_opt, so drop more than half.
    std::vector<TransmissionRecord> kept;
    int idx = 0;
    for (const auto& r : trace.records) {
      if (r.outcome == Outcome::Success && idx++ % 3 != 0) continue;
      kept.push_back(r);
    }
    trace.records = std::move(kept);
  }
  RatioSeries series = evaluate(trace, loaded, samples, baseline);

  AuditReport report;
  if (policy_id.rfind("greedy", 0) == 0) {
    report = audit_greedy(trace, loaded.scenario, series, policy_id);
  } else if (policy_id == "prudent") {
    OptSchedule plan =
        loaded.plan ? *loaded.plan
                    : offline_opt(loaded.scenario.ls, trace.arrivals, trace.errors,
                                  loaded.scenario.horizon, loaded.scenario.ticks_per_unit);
    report = audit_prudent(trace, loaded.scenario, series, plan, policy_id);
  } else if (policy_id.rfind("mgreedy", 0) == 0) {
    auto* mg = dynamic_cast<MGreedyPolicy*>(policy.get());
    report = audit_mgreedy(loaded.scenario, series, mg->stage_parameter(), policy_id);
    for (const auto& stage : uniform_call_summary(*mg, loaded.scenario.ls))
      if (!stage.pass) report.pass = false;
  } else {
    throw AuditMismatch("no audit defined for policy " + policy_id);
  }
  AuditOutcome out;
  out.report = audit_report_to_json(report, loaded.scenario.ls);
  out.report["scenario"] = path;
  out.report["policy"] = policy_id;
  out.pass = report.pass;
  return out;
}

std::vector<std::string> scenario_files(const std::string& path) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(path)) return {path};
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(path))
    if (entry.path().extension() == ".json") files.push_back(entry.path().string());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw InvalidScenario("no .json scenarios in " + path);
  return files;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"Online packet scheduling under jamming: simulation and audit harness"};
  app.require_subcommand(1);

  std::string scenario_path, policy_id, out_format = "csv", audit_kind = "auto";
  std::string baseline = "auto";
  std::string witness_path, lengths_csv, per_length_csv = "2";
  int samples = 20;
  int jobs = 1;
  long long max_jams = 2;
  long long horizon_ticks = 8;
  bool mutate = false;

  auto* cmd_run = app.add_subcommand("run", "simulate a policy on a scenario");
  cmd_run->add_option("scenario", scenario_path)->required();
  cmd_run->add_option("policy", policy_id)->required();
  cmd_run->add_option("--samples", samples);
  cmd_run->add_option("--baseline", baseline)
      ->check(CLI::IsMember({"auto", "oracle", "largest-fit"}));
  cmd_run->add_option("--out", out_format)->check(CLI::IsMember({"csv", "json"}));

  auto* cmd_audit = app.add_subcommand("audit", "run the guarantee-level audits");
  cmd_audit->add_option("scenario", scenario_path, "scenario file or directory")->required();
  cmd_audit->add_option("policy", policy_id)->required();
  cmd_audit->add_option("--samples", samples);
  cmd_audit->add_option("--baseline", baseline)
      ->check(CLI::IsMember({"auto", "oracle", "largest-fit"}));
  cmd_audit->add_option("--audit", audit_kind);
  cmd_audit->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
  cmd_audit->add_flag("--mutate", mutate, "corrupt the trace first; the audit must fail");

  auto* cmd_search = app.add_subcommand("search", "exhaustive worst-case adversary search");
  cmd_search->add_option("policy", policy_id)->required();
  cmd_search->add_option("--lengths", lengths_csv)->required();
  cmd_search->add_option("--max-per-length", per_length_csv);
  cmd_search->add_option("--max-jams", max_jams);
  cmd_search->add_option("--horizon-ticks", horizon_ticks);
  cmd_search->add_option("--witness", witness_path);

  auto* cmd_validate = app.add_subcommand("validate", "parse and validate a scenario file");
  cmd_validate->add_option("scenario", scenario_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInvalidInput;
  }

  if (cmd_validate->parsed()) {
    load_file(scenario_path);
    std::cout << "ok\n";
    return kOk;
  }

  if (cmd_run->parsed()) {
    LoadedScenario loaded = load_file(scenario_path);
    auto policy = make_policy(policy_id, loaded.scenario.ls);
    Trace trace = run(*policy, loaded.scenario);
    RatioSeries series = evaluate(trace, loaded, samples, baseline);
    if (out_format == "csv")
      std::cout << series_to_csv(series);
    else
      std::cout << series_to_json(series).dump(2) << "\n";
    return kOk;
  }

  if (cmd_audit->parsed()) {
    auto files = scenario_files(scenario_path);
    std::vector<AuditOutcome> outcomes(files.size());
    std::vector<std::string> errors(files.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
      for (size_t i = next.fetch_add(1); i < files.size(); i = next.fetch_add(1)) {
        try {
          outcomes[i] = run_audit(files[i], policy_id, samples, baseline, mutate);
        } catch (const std::exception& e) {
          errors[i] = e.what();
        }
      }
    };
    std::vector<std::thread> pool;
    int n = std::min<int>(jobs, static_cast<int>(files.size()));
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    for (const auto& err : errors)
      if (!err.empty()) throw std::runtime_error(err);

    json all = json::array();
    bool pass = true;
    for (auto& o : outcomes) {
      pass = pass && o.pass;
      all.push_back(std::move(o.report));
    }
    std::cout << all.dump(2) << "\n";
    return pass ? kOk : kAuditFail;
  }

  // search
  std::vector<Rat> lengths;
  {
    std::stringstream ss(lengths_csv);
    std::string item;
    while (std::getline(ss, item, ',')) lengths.push_back(parse_rational(item));
  }
  LengthSystem ls = build_length_system(lengths);
  SearchBudget budget;
  budget.max_jams = max_jams;
  budget.horizon = horizon_ticks;
  {
    std::stringstream ss(per_length_csv);
    std::string item;
    while (std::getline(ss, item, ',')) budget.max_packets.push_back(std::stoll(item));
    while (static_cast<int>(budget.max_packets.size()) < ls.k())
      budget.max_packets.push_back(budget.max_packets.back());
  }
  auto policy = make_policy(policy_id, ls);
  SearchResult result = worst_case_search(*policy, ls, budget, search_node_limit());
  json doc;
  doc["min_ratio"] = format_rational(result.min_ratio);
  doc["alg"] = result.alg;
  doc["opt"] = result.opt;
  doc["nodes"] = result.nodes;
  doc["patterns"] = result.patterns;
  Scenario witness = make_tick_scenario(ls, result.witness_arrivals, result.witness_errors,
                                        budget.horizon);
  doc["witness"] = scenario_to_json(witness);
  std::cout << doc.dump(2) << "\n";
  if (!witness_path.empty()) {
    std::ofstream out(witness_path);
    out << scenario_to_json(witness).dump(2) << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const InstanceTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kResourceCap;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kResourceCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
}
