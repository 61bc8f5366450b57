#include "jamsched/engine.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace jamsched {

namespace {

class Run {
 public:
  Run(Policy& policy, const Scenario& s)
      : policy_(policy), s_(s), adv_(s.adversary.get()), queue_(s.ls.k()) {
    for (const auto& a : s.arrivals) pending_.insert({a.time, a.length_index});
    for (Tick e : s.errors) jams_.insert(e);
    trace_.arrivals = s.arrivals;
    trace_.errors = s.errors;
  }

  Trace go() {
    s_.validate();
    trace_.horizon = s_.horizon;
    if (adv_) {
      adv_->begin(s_);
      merge(adv_->on_run_start(), 0);
    }
    Tick t = 0;
    while (t < s_.horizon) {
      deliver(t);
      Action action = policy_.decide(t, queue_);
      if (action.is_idle()) {
        Tick until = next_arrival_after(t);
        if (action.wake && *action.wake > t) until = std::min(until, *action.wake);
        if (adv_) {
          merge(adv_->on_idle(t, until), t);
          until = next_arrival_after(t);
          if (action.wake && *action.wake > t) until = std::min(until, *action.wake);
        }
        if (has_arrival_at(t)) continue;  // adversary injected at this instant
        if (until > t) trace_.idle_intervals.push_back({t, until});
        t = until;
        continue;
      }
      int i = *action.transmit;
      if (queue_.count(i) == 0)
        throw PolicyViolation("policy requested length class " + std::to_string(i) +
                              " with no pending packet");
      Tick start = t;
      Tick end = start + s_.duration_ticks(i);
      if (adv_) merge(adv_->on_transmission_start(start, i, end), start);
      // First jam strictly inside (start, end); a jam at the start tick has
      // already fired under the same-tick ordering.
      auto it = jams_.upper_bound(start);
      std::optional<Tick> jam;
      if (it != jams_.end() && *it < end) jam = *it;
      Tick event = jam ? *jam : end;
      if (event > s_.horizon) {
        trace_.records.push_back({queue_.front(i), i, start, s_.horizon, Outcome::Truncated});
        t = s_.horizon;
        break;
      }
      if (jam) {
        trace_.records.push_back({queue_.front(i), i, start, *jam, Outcome::Jammed});
        t = *jam;
        policy_.on_result(t, i, false);
        if (adv_) merge(adv_->on_transmission_end(t, i, false), t);
      } else {
        int pid = queue_.pop(i);
        trace_.records.push_back({pid, i, start, end, Outcome::Success});
        t = end;
        policy_.on_result(t, i, true);
        if (adv_) merge(adv_->on_transmission_end(t, i, true), t);
      }
    }
    deliver(s_.horizon);
    trace_.final_queue = queue_;
    std::stable_sort(trace_.arrivals.begin(), trace_.arrivals.end(),
                     [](const Arrival& a, const Arrival& b) { return a.time < b.time; });
    std::sort(trace_.errors.begin(), trace_.errors.end());
    trace_.errors.erase(std::unique(trace_.errors.begin(), trace_.errors.end()),
                        trace_.errors.end());
    return std::move(trace_);
  }

 private:
  void merge(const AdvEvents& ev, Tick now) {
    for (const auto& a : ev.arrivals) {
      if (a.time < now) throw AdversaryViolation("adversary injected an arrival in the past");
      if (a.length_index < 1 || a.length_index > s_.ls.k())
        throw AdversaryViolation("adversary arrival length index out of range");
      if (a.time <= s_.horizon) {
        pending_.insert({a.time, a.length_index});
        trace_.arrivals.push_back(a);
      }
    }
    for (Tick j : ev.jams) {
      if (j < now) throw AdversaryViolation("adversary scheduled a jam in the past");
      jams_.insert(j);
      if (j <= s_.horizon) trace_.errors.push_back(j);
    }
  }

  void deliver(Tick t) {
    while (!pending_.empty() && pending_.begin()->first <= t) {
      queue_.push(pending_.begin()->second, next_id_++);
      pending_.erase(pending_.begin());
    }
  }

  Tick next_arrival_after(Tick t) const {
    auto it = pending_.upper_bound(t);
    return it == pending_.end() ? s_.horizon : std::min(it->first, s_.horizon);
  }

  bool has_arrival_at(Tick t) const {
    auto it = pending_.begin();
    return it != pending_.end() && it->first <= t;
  }

  Policy& policy_;
  const Scenario& s_;
  Adversary* adv_;
  QueueState queue_;
  std::multimap<Tick, int> pending_;  // stable for equal keys: FIFO per instant
  std::set<Tick> jams_;
  Trace trace_;
  int next_id_ = 0;
};

}  // namespace

Trace run(Policy& policy, const Scenario& scenario) { return Run(policy, scenario).go(); }

long long completed_length(const Trace& trace, const LengthSystem& ls, Tick up_to,
                           const Selector& sel) {
  long long total = 0;
  for (const auto& r : trace.records)
    if (r.outcome == Outcome::Success && r.end <= up_to && sel.matches(r.length_index))
      total += ls.length(r.length_index);
  return total;
}

long long completed_count(const Trace& trace, const LengthSystem& ls, Tick up_to,
                          const Selector& sel) {
  long long n = 0;
  for (const auto& r : trace.records)
    if (r.outcome == Outcome::Success && r.end <= up_to && sel.matches(r.length_index)) ++n;
  return n;
}

}  // namespace jamsched
