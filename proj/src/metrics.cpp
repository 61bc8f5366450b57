#include "jamsched/metrics.hpp"

#include <algorithm>

namespace jamsched {

Rat throughput_ratio(long long l_alg, long long l_opt) {
  if (l_opt == 0) return Rat(1);  // both-zero convention; opt=0 implies alg=0
  return Rat(l_alg, l_opt);
}

std::vector<Tick> default_samples(Tick horizon, int n) {
  std::vector<Tick> out;
  for (int i = 1; i <= n; ++i) {
    Tick t = horizon * i / n;
    if (t > 0 && (out.empty() || out.back() != t)) out.push_back(t);
  }
  if (out.empty() || out.back() != horizon) out.push_back(horizon);
  return out;
}

RatioSeries ratio_series(const Trace& trace, const Scenario& s, std::vector<Tick> sample_times,
                         const OptSchedule* plan) {
  std::sort(sample_times.begin(), sample_times.end());
  sample_times.erase(std::unique(sample_times.begin(), sample_times.end()), sample_times.end());
  RatioSeries series;
  for (Tick t : sample_times) {
    RatioSample sample;
    sample.t = t;
    sample.l_alg = completed_length(trace, s.ls, t);
    if (plan) {
      sample.l_opt = plan_prefix(*plan, s.ls, t, s.ticks_per_unit);
    } else {
      sample.l_opt = offline_opt(s.ls, trace.arrivals, trace.errors, t, s.ticks_per_unit).value;
    }
    sample.ratio = throughput_ratio(sample.l_alg, sample.l_opt);
    series.samples.push_back(sample);
  }
  if (!series.samples.empty()) {
    size_t n = series.samples.size();
    size_t tail = (n + 3) / 4;
    Rat m = series.samples[n - tail].ratio;
    for (size_t a = n - tail; a < n; ++a) m = std::min(m, series.samples[a].ratio);
    series.tail_estimate = m;
  }
  return series;
}

OptSchedule largest_fit_plan(const LengthSystem& ls, const std::vector<Arrival>& arrivals,
                             const std::vector<Tick>& errors, Tick horizon,
                             long long ticks_per_unit) {
  std::vector<Arrival> arr(arrivals);
  std::stable_sort(arr.begin(), arr.end(),
                   [](const Arrival& a, const Arrival& b) { return a.time < b.time; });
  std::vector<Tick> jams(errors);
  std::sort(jams.begin(), jams.end());

  OptSchedule plan;
  std::vector<long long> pool(ls.k(), 0);
  size_t next_arrival = 0;
  Tick t = 0;
  while (t < horizon) {
    while (next_arrival < arr.size() && arr[next_arrival].time <= t) {
      ++pool[arr[next_arrival].length_index - 1];
      ++next_arrival;
    }
    auto jam_it = std::upper_bound(jams.begin(), jams.end(), t);
    Tick fence = std::min(horizon, jam_it == jams.end() ? horizon : *jam_it);
    bool started = false;
    for (int i = ls.k(); i >= 1; --i) {
      if (pool[i - 1] == 0) continue;
      Tick end = t + ls.length(i) * ticks_per_unit;
      if (end > fence) continue;
      --pool[i - 1];
      plan.plan.push_back({t, i});
      plan.value += ls.length(i);
      t = end;
      started = true;
      break;
    }
    if (started) continue;
    Tick next = fence;
    if (next_arrival < arr.size()) next = std::min(next, arr[next_arrival].time);
    if (next <= t) next = t + 1;  // fence == t only when t sits on the horizon
    t = next;
  }
  return plan;
}

namespace {

struct BusyInterval {
  Tick begin;
  Tick end;
};

std::vector<BusyInterval> busy_intervals(const Trace& trace) {
  std::vector<BusyInterval> out;
  Tick prev = 0;
  for (const auto& idle : trace.idle_intervals) {
    if (idle.begin > prev) out.push_back({prev, idle.begin});
    prev = std::max(prev, idle.end);
  }
  if (trace.horizon > prev) out.push_back({prev, trace.horizon});
  return out;
}

}  // namespace

AuditReport audit_greedy(const Trace& trace, const Scenario& s, const RatioSeries& series,
                         const std::string& policy_id) {
  if (policy_id.rfind("greedy", 0) != 0)
    throw AuditMismatch("greedy audit applied to a trace from " + policy_id);
  AuditReport report;
  report.audit = "greedy-lower-bound";
  long long f_k = f_constants(s.ls).back();
  report.slack = Rat(f_k);
  auto busy = busy_intervals(trace);
  for (const auto& sample : series.samples) {
    auto it = std::find_if(busy.begin(), busy.end(), [&](const BusyInterval& b) {
      return b.begin < sample.t && sample.t <= b.end;
    });
    if (it == busy.end()) continue;
    // Baselines at the interval start: exact for the policy; for the optimum
    // the latest sample at or before it (an underestimate, so the check can
    // only get stricter).
    long long alg0 = completed_length(trace, s.ls, it->begin);
    long long opt0 = 0;
    for (const auto& other : series.samples) {
      if (other.t <= it->begin) opt0 = std::max(opt0, other.l_opt);
    }
    AuditSample out;
    out.t = sample.t;
    out.l_alg = sample.l_alg - alg0;
    out.l_opt = sample.l_opt - opt0;
    out.pass = 2 * out.l_alg + f_k >= out.l_opt;
    if (!out.pass) report.pass = false;
    report.samples.push_back(out);
  }
  report.detail = "checks 2*L_alg + f_k >= L_opt over maximal busy intervals";
  return report;
}

AuditReport audit_prudent(const Trace& trace, const Scenario& s, const RatioSeries& series,
                          const OptSchedule& plan, const std::string& policy_id) {
  if (policy_id != "prudent")
    throw AuditMismatch("prudent audit applied to a trace from " + policy_id);
  if (s.speedup != Rat(2))
    throw AuditMismatch("prudent guarantee is stated at speed-up 2");
  AuditReport report;
  report.audit = "prudent-speedup";
  int k = s.ls.k();
  Rat slack = Rat(5, 2) * Rat(k) * Rat(s.ls.l_max());
  report.slack = slack;
  Selector longest = Selector::greater_eq(k);
  for (const auto& sample : series.samples) {
    AuditSample out;
    out.t = sample.t;
    out.l_alg = sample.l_alg;
    out.l_opt = sample.l_opt;
    bool total_ok = Rat(sample.l_alg) >= Rat(sample.l_opt) - slack;
    long long alg_long = completed_length(trace, s.ls, sample.t, longest);
    long long opt_long = plan_prefix(plan, s.ls, sample.t, s.ticks_per_unit, longest);
    out.pass = total_ok && alg_long >= opt_long;
    if (!out.pass) report.pass = false;
    report.samples.push_back(out);
  }
  report.detail = "checks L_alg >= L_opt - (5/2)k*l_k and the longest-class dominance";
  return report;
}

AuditReport audit_mgreedy(const Scenario& s, const RatioSeries& series, long long c,
                          const std::string& policy_id) {
  if (policy_id.rfind("mgreedy", 0) != 0)
    throw AuditMismatch("mgreedy audit applied to a trace from " + policy_id);
  AuditReport report;
  report.audit = "mgreedy-tail";
  Rat gamma = upper_bound_gamma(s.ls);
  Rat eta = aux_constants(s.ls).eta;
  Rat bound = gamma * (Rat(c) * eta) / (Rat(c) * eta + Rat(4));
  long long f_k = f_constants(s.ls).back();
  long long k = s.ls.k();
  long long opt_h = series.samples.empty() ? 0 : series.samples.back().l_opt;
  Rat slack = opt_h == 0 ? Rat(0) : Rat(f_k + k * c * k * s.ls.l_max(), opt_h);
  report.slack = slack;
  report.pass = series.tail_estimate >= bound - slack;
  AuditSample out;
  out.t = series.samples.empty() ? 0 : series.samples.back().t;
  out.l_alg = series.samples.empty() ? 0 : series.samples.back().l_alg;
  out.l_opt = opt_h;
  out.pass = report.pass;
  report.samples.push_back(out);
  report.detail = "checks tail ratio >= gamma/(1 + 4/(c*eta)) - additive-constant slack";
  return report;
}

std::vector<StageSummary> uniform_call_summary(const MGreedyPolicy& policy,
                                               const LengthSystem& ls) {
  std::vector<StageSummary> out;
  for (const auto& stage : policy.stage_log()) {
    if (!stage.completed) continue;
    StageSummary s;
    s.stage = stage.index;
    s.c = stage.c;
    s.calls = static_cast<long long>(stage.calls.size());
    for (const auto& call : stage.calls)
      if (call.uniform) ++s.uniform;
    long long needed = stage.c * ls.k() - 2 * ls.k();
    s.pass = s.uniform >= std::max<long long>(needed, 0);
    out.push_back(s);
  }
  return out;
}

}  // namespace jamsched
