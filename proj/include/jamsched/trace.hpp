#pragma once

#include <vector>

#include "jamsched/core.hpp"

namespace jamsched {

enum class Outcome {
  Success,
  Jammed,
  Truncated,  // still in flight when the horizon was reached
};

struct TransmissionRecord {
  int packet_id;
  int length_index;
  Tick start;
  Tick end;  // completion for Success, jam instant for Jammed, horizon for Truncated
  Outcome outcome;
};

struct IdleInterval {
  Tick begin;
  Tick end;
};

/// Full transmission history of one run: the evidence object every audit
/// works from. Also carries the realized arrival/error pattern (scripted plus
/// anything an adaptive adversary injected) so the run can be re-scored
/// offline or replayed as a scripted scenario.
struct Trace {
  std::vector<TransmissionRecord> records;
  std::vector<IdleInterval> idle_intervals;
  QueueState final_queue;
  Tick horizon = 0;
  std::vector<Arrival> arrivals;  // realized pattern, sorted by time
  std::vector<Tick> errors;       // realized pattern, sorted, deduplicated
};

/// L(sel, up_to): total length (in length units, not ticks) of successful
/// transmissions matching sel that completed by up_to.
long long completed_length(const Trace& trace, const LengthSystem& ls, Tick up_to,
                           const Selector& sel = Selector::all());

/// Number of successful transmissions matching sel completed by up_to.
long long completed_count(const Trace& trace, const LengthSystem& ls, Tick up_to,
                          const Selector& sel = Selector::all());

}  // namespace jamsched
