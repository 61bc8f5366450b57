#include "jamsched/scenario.hpp"

#include <algorithm>

namespace jamsched {

void Scenario::validate() const {
  if (ls.k() < 2) throw InvalidScenario("scenario needs a valid length system");
  if (horizon < 0) throw InvalidScenario("negative horizon");
  if (speedup <= Rat(0)) throw InvalidScenario("speed-up must be positive");
  if (ticks_per_unit < 1) throw InvalidScenario("resolution must be >= 1");
  for (size_t a = 0; a < arrivals.size(); ++a) {
    const auto& ar = arrivals[a];
    if (ar.length_index < 1 || ar.length_index > ls.k())
      throw InvalidScenario("arrival length index out of range");
    if (ar.time < 0 || ar.time > horizon) throw InvalidScenario("arrival time outside [0, horizon]");
    if (a > 0 && arrivals[a - 1].time > ar.time)
      throw InvalidScenario("arrivals must be sorted by time");
  }
  for (size_t e = 0; e < errors.size(); ++e) {
    if (errors[e] < 0 || errors[e] > horizon)
      throw InvalidScenario("error time outside [0, horizon]");
    if (e > 0 && errors[e - 1] > errors[e]) throw InvalidScenario("errors must be sorted");
  }
  for (int i = 1; i <= ls.k(); ++i) {
    Rat d = Rat(ls.length(i) * ticks_per_unit) / speedup;
    if (d.denominator() != 1)
      throw InvalidScenario("resolution does not make every duration an exact tick count");
  }
}

Scenario make_scenario(const LengthSystem& ls,
                       const std::vector<std::pair<Rat, int>>& arrivals,
                       const std::vector<Rat>& errors, Rat horizon, Rat speedup) {
  if (speedup <= Rat(0)) throw InvalidScenario("speed-up must be positive");
  long long r = speedup.numerator();
  r = lcm_ll(r, horizon.denominator());
  for (const auto& [t, idx] : arrivals) r = lcm_ll(r, t.denominator());
  for (const auto& t : errors) r = lcm_ll(r, t.denominator());

  Scenario s;
  s.ls = ls;
  s.speedup = speedup;
  s.ticks_per_unit = r;
  auto to_ticks = [r](const Rat& t) {
    Rat v = t * Rat(r);
    return static_cast<Tick>(v.numerator());
  };
  s.horizon = to_ticks(horizon);
  for (const auto& [t, idx] : arrivals) s.arrivals.push_back({to_ticks(t), idx});
  std::stable_sort(s.arrivals.begin(), s.arrivals.end(),
                   [](const Arrival& a, const Arrival& b) { return a.time < b.time; });
  for (const auto& t : errors) s.errors.push_back(to_ticks(t));
  std::sort(s.errors.begin(), s.errors.end());
  s.errors.erase(std::unique(s.errors.begin(), s.errors.end()), s.errors.end());
  s.validate();
  return s;
}

Scenario make_tick_scenario(const LengthSystem& ls, std::vector<Arrival> arrivals,
                            std::vector<Tick> errors, Tick horizon, Rat speedup,
                            long long ticks_per_unit) {
  Scenario s;
  s.ls = ls;
  s.arrivals = std::move(arrivals);
  std::stable_sort(s.arrivals.begin(), s.arrivals.end(),
                   [](const Arrival& a, const Arrival& b) { return a.time < b.time; });
  s.errors = std::move(errors);
  std::sort(s.errors.begin(), s.errors.end());
  s.errors.erase(std::unique(s.errors.begin(), s.errors.end()), s.errors.end());
  s.horizon = horizon;
  s.speedup = speedup;
  s.ticks_per_unit = ticks_per_unit;
  s.validate();
  return s;
}

}  // namespace jamsched
