#pragma once

#include <optional>
#include <vector>

#include "jamsched/scenario.hpp"

namespace jamsched {

struct AdversaryViolation : std::logic_error {
  using std::logic_error::logic_error;
};

/// Events an adversary hands to the engine: future arrivals and future jams.
/// All times must be >= the callback instant.
struct AdvEvents {
  std::vector<Arrival> arrivals;
  std::vector<Tick> jams;
};

/// Adaptive arrival/error source consulted by the engine as the run unfolds.
/// The adversary sees the policy's observable actions only: when transmissions
/// start (and their planned end), when they finish or get jammed, and when the
/// policy goes idle. One instance per run.
class Adversary {
 public:
  virtual ~Adversary() = default;

  virtual void begin(const Scenario&) {}

  /// Called once at t=0 before the first decision.
  virtual AdvEvents on_run_start() { return {}; }

  /// The policy started transmitting class `length_index` over
  /// [start, planned_end). A returned jam inside that interval corrupts it.
  virtual AdvEvents on_transmission_start(Tick start, int length_index, Tick planned_end) {
    return {};
  }

  /// The attempt ended at t, successfully or jammed.
  virtual AdvEvents on_transmission_end(Tick t, int length_index, bool success) { return {}; }

  /// The policy chose to idle at `now` with no scheduled arrival before
  /// `until` (the horizon, or the next already-known arrival).
  virtual AdvEvents on_idle(Tick now, Tick until) { return {}; }
};

}  // namespace jamsched
