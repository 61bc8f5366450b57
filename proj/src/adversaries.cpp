#include "jamsched/adversaries.hpp"

#include <random>

#include "jamsched/engine.hpp"
#include "jamsched/policies.hpp"

namespace jamsched {

StochasticAdversary::StochasticAdversary(std::uint64_t seed, double mean_arrival_gap_ticks,
                                         double mean_jam_gap_ticks)
    : seed_(seed), arrival_gap_(mean_arrival_gap_ticks), jam_gap_(mean_jam_gap_ticks) {
  if (arrival_gap_ < 1.0 || jam_gap_ < 1.0)
    throw std::invalid_argument("stochastic adversary needs mean gaps >= 1 tick");
}

void StochasticAdversary::begin(const Scenario& s) {
  pattern_ = {};
  std::mt19937_64 rng(seed_);
  std::geometric_distribution<Tick> arrival_gap(1.0 / arrival_gap_);
  std::geometric_distribution<Tick> jam_gap(1.0 / jam_gap_);
  std::uniform_int_distribution<int> length(1, s.ls.k());
  Tick t = 0;
  for (;;) {
    t += 1 + arrival_gap(rng);
    if (t > s.horizon) break;
    pattern_.arrivals.push_back({t, length(rng)});
  }
  t = 0;
  for (;;) {
    t += 1 + jam_gap(rng);
    if (t > s.horizon) break;
    pattern_.jams.push_back(t);
  }
}

// ---------------------------------------------------------------------------
// TwoLengthAdversary

TwoLengthAdversary::TwoLengthAdversary(const LengthSystem& ls, int i, int j) : i_(i), j_(j) {
  if (j < 1 || i <= j || i > ls.k())
    throw std::invalid_argument("two-length adversary needs 1 <= j < i <= k");
  floor_rho_ = floor_rat(ls.ratio(i, j));
}

void TwoLengthAdversary::begin(const Scenario& s) {
  if (s.duration_ticks(i_) < 2)
    throw AdversaryViolation("long-packet duration too short to jam strictly inside");
  horizon_ = s.horizon;
  long long r = s.ticks_per_unit;
  period_ticks_ = (floor_rho_ * s.ls.length(j_) + s.ls.length(i_)) * r;
  timeout_ticks_ = (floor_rho_ * s.ls.length(j_) + 3 * s.ls.length(i_)) * r;
  feed_gap_ticks_ = s.ls.length(j_) * r;
  round_start_ = 0;
  shorts_done_ = 0;
  jams_fired_ = 0;
}

AdvEvents TwoLengthAdversary::round_batch(Tick at) {
  round_start_ = at;
  shorts_done_ = 0;
  jams_fired_ = 0;
  AdvEvents ev;
  if (at > horizon_) return ev;
  for (long long n = 0; n < floor_rho_; ++n) ev.arrivals.push_back({at, j_});
  ev.arrivals.push_back({at, i_});
  return ev;
}

AdvEvents TwoLengthAdversary::on_run_start() { return round_batch(0); }

AdvEvents TwoLengthAdversary::on_transmission_start(Tick start, int length_index,
                                                    Tick planned_end) {
  AdvEvents ev;
  // Durations are exact integer tick counts, so the longer class occupies at
  // least two ticks and planned_end - 1 is strictly inside.
  if (length_index == i_) ev.jams.push_back(planned_end - 1);
  return ev;
}

AdvEvents TwoLengthAdversary::maybe_end_round(Tick t) {
  // Only the cooperative pattern earns the next batch. A policy stuck
  // retrying the l_i packet is starved: its completed length freezes while
  // the backlog shorts keep the optimum moving, so the ratio decays.
  if (shorts_done_ >= floor_rho_ && jams_fired_ >= 2) return round_batch(t);
  return {};
}

AdvEvents TwoLengthAdversary::on_transmission_end(Tick t, int length_index, bool success) {
  if (success && length_index == j_) ++shorts_done_;
  if (!success) ++jams_fired_;  // only l_i attempts get jammed
  return maybe_end_round(t);
}

AdvEvents TwoLengthAdversary::on_idle(Tick now, Tick) {
  // A policy sitting below some internal threshold gets fed a round's worth
  // of packets per l_j duration; the pool then outgrows any fixed threshold.
  Tick at = now + feed_gap_ticks_;
  if (at > horizon_) return {};
  return round_batch(at);
}

// ---------------------------------------------------------------------------
// Scripted lower-bound scenarios

std::pair<Scenario, OptSchedule> ll_killer_scenario(long long periods) {
  if (periods < 1) throw std::invalid_argument("need at least one period");
  LengthSystem ls = build_length_system(std::vector<long long>{1, 2});
  const long long r = 10;
  const Tick period = 19;  // l_2 * (1 - 1/(2R)) in ticks: just under one long
  std::vector<Arrival> arrivals{{0, 2}};
  std::vector<Tick> errors;
  OptSchedule plan;
  for (long long n = 0; n < periods; ++n) {
    Tick t = n * period;
    arrivals.push_back({t, 1});
    arrivals.push_back({t, 1});
    errors.push_back(t + period);
    plan.plan.push_back({t, 1});
    plan.value += 1;
  }
  Tick horizon = periods * period;
  Scenario s = make_tick_scenario(ls, std::move(arrivals), std::move(errors), horizon, Rat(1), r);
  return {std::move(s), std::move(plan)};
}

std::pair<Scenario, OptSchedule> sl_bound_scenario(long long cycles) {
  if (cycles < 1) throw std::invalid_argument("need at least one cycle");
  LengthSystem ls = build_length_system(std::vector<long long>{1, 2});
  const Tick period = 5;
  Tick horizon = cycles * period;

  auto build = [&](int phase) {
    std::vector<Arrival> arrivals;
    std::vector<Tick> errors;
    OptSchedule plan;
    for (long long m = 0; m < cycles; ++m) {
      Tick t = m * period;
      arrivals.push_back({t, 1});
      arrivals.push_back({t, 2});
      for (Tick off : {Tick(0), Tick(2), Tick(3), Tick(4)}) {
        Tick jam = t + off + phase;
        if (jam <= horizon) errors.push_back(jam);
      }
      if (phase == 0) {
        plan.plan.push_back({t, 2});
        plan.plan.push_back({t + 2, 1});
      } else {
        // Jams sit at t+1, t+3, t+4, t+5; both slots below touch them only
        // at endpoints.
        plan.plan.push_back({t, 1});
        plan.plan.push_back({t + 1, 2});
      }
    }
    for (const auto& [start, idx] : plan.plan) plan.value += ls.length(idx);
    Scenario s = make_tick_scenario(ls, std::move(arrivals), std::move(errors), horizon);
    return std::make_pair(std::move(s), std::move(plan));
  };

  // Two jam phasings; keep the one that leaves shortest-first less.
  auto a = build(0);
  auto b = build(1);
  ShortestFirstPolicy sl_a(ls), sl_b(ls);
  long long got_a = completed_length(run(sl_a, a.first), ls, horizon);
  long long got_b = completed_length(run(sl_b, b.first), ls, horizon);
  return got_a <= got_b ? std::move(a) : std::move(b);
}

}  // namespace jamsched
