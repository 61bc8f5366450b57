#pragma once

#include <string>
#include <vector>

#include "jamsched/oracle.hpp"
#include "jamsched/policies.hpp"
#include "jamsched/trace.hpp"

namespace jamsched {

struct AuditMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RatioSample {
  Tick t;
  long long l_alg = 0;
  long long l_opt = 0;
  Rat ratio{1};
};

/// T(t) = L_alg(t) / L_opt(t) at each sample, exact rationals throughout.
/// tail_estimate = min ratio over the last quartile of samples: the
/// conservative finite proxy for the asymptotic limit.
struct RatioSeries {
  std::vector<RatioSample> samples;
  Rat tail_estimate{1};
};

/// Ratio convention: 1 when both sides are 0; alg/opt otherwise. An opt of 0
/// with positive alg cannot happen against the exact oracle and maps to 1.
Rat throughput_ratio(long long l_alg, long long l_opt);

/// Evaluates the trace at the given sample times. The offline optimum per
/// sample comes from the supplied plan when given, otherwise from re-running
/// the exact oracle with horizon t (caps apply; InstanceTooLarge propagates).
RatioSeries ratio_series(const Trace& trace, const Scenario& s, std::vector<Tick> sample_times,
                         const OptSchedule* plan = nullptr);

/// Feasible offline plan for a realized pattern at any scale: walk the
/// timeline, always starting the longest arrived-unused packet that completes
/// before the next jam. A lower bound on the true optimum, so ratios measured
/// against it upper-bound the true ratio.
OptSchedule largest_fit_plan(const LengthSystem& ls, const std::vector<Arrival>& arrivals,
                             const std::vector<Tick>& errors, Tick horizon,
                             long long ticks_per_unit);

struct AuditSample {
  Tick t;
  long long l_alg = 0;
  long long l_opt = 0;
  bool pass = true;
};

struct AuditReport {
  std::string audit;
  bool pass = true;
  Rat slack{0};
  std::vector<AuditSample> samples;
  std::string detail;
};

/// Checks 2 * L_alg(tau) + f_k >= L_opt(tau) over every maximal busy
/// interval tau of the trace, at each sample time inside it. Both sides are
/// measured relative to the interval start.
AuditReport audit_greedy(const Trace& trace, const Scenario& s, const RatioSeries& series,
                         const std::string& policy_id);

/// Checks, at every sample t: L_alg(t) >= L_opt(t) - (5/2) k l_k, and for
/// the longest class L_alg(=k,t) >= L_opt(=k,t). Requires speed-up 2 and a
/// stored plan for the per-class optimum.
AuditReport audit_prudent(const Trace& trace, const Scenario& s, const RatioSeries& series,
                          const OptSchedule& plan, const std::string& policy_id);

/// Checks tail_estimate >= gamma / (1 + 4/(c eta)) - slack with
/// slack = (f_k + k c k l_k) / L_opt(horizon).
AuditReport audit_mgreedy(const Scenario& s, const RatioSeries& series, long long c,
                          const std::string& policy_id);

/// Uniform top-level calls per completed stage, from the policy's stage log.
/// The guarantee: at least ck - 2k uniform calls in every completed stage.
struct StageSummary {
  long long stage = 0;
  long long c = 0;
  long long calls = 0;
  long long uniform = 0;
  bool pass = true;
};
std::vector<StageSummary> uniform_call_summary(const MGreedyPolicy& policy,
                                               const LengthSystem& ls);

/// Evenly spaced sample times over (0, horizon], always including horizon.
std::vector<Tick> default_samples(Tick horizon, int n);

}  // namespace jamsched
