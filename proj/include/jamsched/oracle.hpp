#pragma once

#include <vector>

#include "jamsched/scenario.hpp"

namespace jamsched {

struct InstanceTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OracleCaps {
  long long max_packets = 24;
  long long max_event_times = 64;
};

/// The offline optimum for one fixed instance: its value and a witnessing
/// schedule. Starts are in ticks; the plan always runs at speed 1.
struct OptSchedule {
  long long value = 0;  // total completed length (length units) by the horizon
  std::vector<std::pair<Tick, int>> plan;  // (start, length_index), time-ordered
};

/// Exact maximum completed length by `horizon` for the given arrivals and
/// error pattern, via memoized search over the event grid (arrival instants,
/// post-jam instants, completion instants). OPT runs at speed 1 regardless of
/// the scenario speed-up. Throws InstanceTooLarge beyond the caps.
OptSchedule offline_opt(const LengthSystem& ls, const std::vector<Arrival>& arrivals,
                        const std::vector<Tick>& errors, Tick horizon,
                        long long ticks_per_unit = 1, OracleCaps caps = {});

inline OptSchedule offline_opt(const Scenario& s, OracleCaps caps = {}) {
  return offline_opt(s.ls, s.arrivals, s.errors, s.horizon, s.ticks_per_unit, caps);
}

/// Completed length of a stored plan by time t (and its per-class variant).
long long plan_prefix(const OptSchedule& sched, const LengthSystem& ls, Tick t,
                      long long ticks_per_unit = 1,
                      const Selector& sel = Selector::all());

}  // namespace jamsched
