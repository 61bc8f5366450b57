#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "jamsched/core.hpp"

namespace jamsched {

struct InvalidScenario : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Arrival {
  Tick time;
  int length_index;  // 1-based
  bool operator==(const Arrival&) const = default;
};

class Adversary;

/// One fixed run instance: the length system, arrival/error patterns (or an
/// adversary producing them online), the horizon and the speed-up.
///
/// All times are integer ticks. `ticks_per_unit` (R) is the per-scenario
/// resolution: a packet of length l_i occupies l_i * R ticks at speed 1 and
/// l_i * R * s_den / s_num ticks at speed-up s = s_num/s_den. Construct via
/// make_scenario so that R is picked to keep both exact.
struct Scenario {
  LengthSystem ls;
  std::vector<Arrival> arrivals;  // sorted by time
  std::vector<Tick> errors;       // sorted, deduplicated
  Tick horizon = 0;
  Rat speedup = Rat(1);
  long long ticks_per_unit = 1;

  // Optional adaptive source of arrivals and errors; the scripted lists above
  // may then be empty. Owned by the caller of run().
  std::shared_ptr<Adversary> adversary;

  /// Ticks occupied by one l_i packet at this scenario's speed-up.
  Tick duration_ticks(int i) const {
    Rat d = Rat(ls.length(i) * ticks_per_unit) / speedup;
    return d.numerator() / d.denominator();  // exact by choice of R
  }

  /// Ticks occupied by one l_i packet at speed 1 (what OPT pays).
  Tick unit_duration_ticks(int i) const { return ls.length(i) * ticks_per_unit; }

  void validate() const;
};

/// Builds a scenario from rational event times, choosing the tick resolution
/// R as the LCM of every denominator involved plus the speed-up numerator, so
/// every duration and event instant is an exact tick count.
Scenario make_scenario(const LengthSystem& ls,
                       const std::vector<std::pair<Rat, int>>& arrivals,
                       const std::vector<Rat>& errors, Rat horizon,
                       Rat speedup = Rat(1));

/// Scenario already expressed in ticks (R = 1 unless stated otherwise).
Scenario make_tick_scenario(const LengthSystem& ls, std::vector<Arrival> arrivals,
                            std::vector<Tick> errors, Tick horizon, Rat speedup = Rat(1),
                            long long ticks_per_unit = 1);

}  // namespace jamsched
