#pragma once

#include <memory>
#include <optional>
#include <string>

#include "jamsched/core.hpp"

namespace jamsched {

/// What a policy wants to do at a decision point: transmit one packet of the
/// given length class, or stay idle until the next arrival (optionally with
/// an earlier self-imposed wake-up instant).
struct Action {
  std::optional<int> transmit;  // 1-based length index; empty = idle
  std::optional<Tick> wake;     // idle only: re-decide at this tick at latest

  static Action idle() { return {}; }
  static Action idle_until(Tick t) { return {std::nullopt, t}; }
  static Action send(int i) { return {i, std::nullopt}; }
  bool is_idle() const { return !transmit.has_value(); }
};

/// Resumable online decision procedure. The engine consults decide() at t=0,
/// at every arrival instant while idle, and at every transmission end, and
/// reports each attempt's outcome through on_result() before the next
/// decide(). One instance per run; never shared.
class Policy {
 public:
  virtual ~Policy() = default;

  virtual Action decide(Tick now, const QueueState& q) = 0;
  virtual void on_result(Tick now, int length_index, bool success) {}

  virtual std::string id() const = 0;
  virtual std::unique_ptr<Policy> clone() const = 0;
};

struct UnknownPolicy : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Policy selection by string id: "greedy", "greedy-cover", "mgreedy:c=<int>",
/// "mgreedy-adaptive:c0=<int>,W=<int>", "prudent", "sl", "ll".
std::unique_ptr<Policy> make_policy(const std::string& id, const LengthSystem& ls);

}  // namespace jamsched
