#pragma once

#include <cstdint>
#include <utility>

#include "jamsched/adversary.hpp"
#include "jamsched/oracle.hpp"

namespace jamsched {

/// Replays a fixed pattern; everything is announced at run start. Used to
/// check that a recorded pattern reproduces the trace it came from.
class ScriptedAdversary final : public Adversary {
 public:
  ScriptedAdversary(std::vector<Arrival> arrivals, std::vector<Tick> jams)
      : arrivals_(std::move(arrivals)), jams_(std::move(jams)) {}

  AdvEvents on_run_start() override { return {arrivals_, jams_}; }

 private:
  std::vector<Arrival> arrivals_;
  std::vector<Tick> jams_;
};

/// Seeded random pattern source: geometric inter-arrival and inter-jam gaps,
/// uniform length classes. Experiment plumbing only; no claims attached. The
/// whole pattern is drawn up front in begin(), so a given seed is fully
/// reproducible.
class StochasticAdversary final : public Adversary {
 public:
  StochasticAdversary(std::uint64_t seed, double mean_arrival_gap_ticks,
                      double mean_jam_gap_ticks);

  void begin(const Scenario& s) override;
  AdvEvents on_run_start() override { return pattern_; }

 private:
  std::uint64_t seed_;
  double arrival_gap_;
  double jam_gap_;
  AdvEvents pattern_;
};

/// Adaptive two-length adversary over l_j < l_i. Rounds: inject floor(rho)
/// l_j packets and one l_i packet, then jam every l_i attempt one tick
/// before completion. A round ends, triggering the next batch, when
///   - the policy has completed the round's l_j packets and lost two l_i
///     attempts (the cooperative pattern: round wall time equals injected
///     volume, so the offline optimum stays saturated while the policy keeps
///     only the l_j packets), or
///   - two jams have fired and one batch worth of time has passed (a policy
///     stuck retrying the l_i packet completes nothing while the batches
///     keep the optimum supplied), or
///   - a long timeout expires (a policy hoarding below some internal
///     threshold gets fed until the threshold is crossed).
class TwoLengthAdversary final : public Adversary {
 public:
  TwoLengthAdversary(const LengthSystem& ls, int i, int j);

  void begin(const Scenario& s) override;
  AdvEvents on_run_start() override;
  AdvEvents on_transmission_start(Tick start, int length_index, Tick planned_end) override;
  AdvEvents on_transmission_end(Tick t, int length_index, bool success) override;
  AdvEvents on_idle(Tick now, Tick until) override;

 private:
  AdvEvents round_batch(Tick at);
  AdvEvents maybe_end_round(Tick t);

  int i_;
  int j_;
  long long floor_rho_;
  Tick period_ticks_ = 1;
  Tick timeout_ticks_ = 0;
  Tick feed_gap_ticks_ = 1;
  Tick horizon_ = 0;
  Tick round_start_ = 0;
  long long shorts_done_ = 0;
  long long jams_fired_ = 0;
};

/// Scripted scenario on lengths [1,2] that starves a longest-first policy:
/// one long packet up front, jams just under one long duration apart, two
/// shorts per jam period. Longest-first never completes anything; the
/// returned plan completes one short per period.
std::pair<Scenario, OptSchedule> ll_killer_scenario(long long periods);

/// Scripted scenario on lengths [1,2] pinning shortest-first near 1/(rho+1):
/// per 5-tick cycle one short and one long arrive and four ticks carry jams,
/// leaving shortest-first exactly one short per cycle while the returned plan
/// completes a long and a short. Of the two jam phasings the one worse for
/// shortest-first is kept.
std::pair<Scenario, OptSchedule> sl_bound_scenario(long long cycles);

}  // namespace jamsched
