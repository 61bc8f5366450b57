#include "jamsched/oracle.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace jamsched {

namespace {

struct VecHash {
  size_t operator()(const std::vector<long long>& v) const {
    size_t h = 1469598103934665603ull;
    for (long long x : v) {
      h ^= static_cast<size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

class Solver {
 public:
  Solver(const LengthSystem& ls, std::vector<Arrival> arrivals, std::vector<Tick> errors,
         Tick horizon, long long r)
      : ls_(ls), arrivals_(std::move(arrivals)), errors_(std::move(errors)), horizon_(horizon),
        r_(r) {
    std::stable_sort(arrivals_.begin(), arrivals_.end(),
                     [](const Arrival& a, const Arrival& b) { return a.time < b.time; });
    std::sort(errors_.begin(), errors_.end());
    errors_.erase(std::unique(errors_.begin(), errors_.end()), errors_.end());
  }

  OptSchedule solve() {
    OptSchedule out;
    std::vector<long long> used(ls_.k(), 0);
    out.value = best(0, used);
    reconstruct(0, used, out);
    return out;
  }

 private:
  std::vector<long long> available(Tick t, const std::vector<long long>& used) const {
    std::vector<long long> avail(ls_.k(), 0);
    for (const auto& a : arrivals_) {
      if (a.time > t) break;
      ++avail[a.length_index - 1];
    }
    for (int i = 0; i < ls_.k(); ++i) avail[i] -= used[i];
    return avail;
  }

  bool feasible(Tick start, Tick end) const {
    if (end > horizon_) return false;
    auto it = std::upper_bound(errors_.begin(), errors_.end(), start);
    return it == errors_.end() || *it >= end;
  }

  // Next grid instant strictly after t: an arrival or a jam.
  std::optional<Tick> next_grid(Tick t) const {
    std::optional<Tick> g;
    auto a = std::upper_bound(
        arrivals_.begin(), arrivals_.end(), t,
        [](Tick v, const Arrival& ar) { return v < ar.time; });
    if (a != arrivals_.end()) g = a->time;
    auto e = std::upper_bound(errors_.begin(), errors_.end(), t);
    if (e != errors_.end() && (!g || *e < *g)) g = *e;
    if (g && *g >= horizon_) return std::nullopt;
    return g;
  }

  long long best(Tick t, std::vector<long long>& used) {
    if (t >= horizon_) return 0;
    std::vector<long long> key(used);
    key.push_back(t);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    long long v = 0;
    std::vector<long long> avail = available(t, used);
    for (int i = 1; i <= ls_.k(); ++i) {
      if (avail[i - 1] <= 0) continue;
      Tick end = t + ls_.length(i) * r_;
      if (!feasible(t, end)) continue;
      ++used[i - 1];
      v = std::max(v, ls_.length(i) + best(end, used));
      --used[i - 1];
    }
    if (auto g = next_grid(t)) v = std::max(v, best(*g, used));
    memo_.emplace(std::move(key), v);
    return v;
  }

  void reconstruct(Tick t, std::vector<long long>& used, OptSchedule& out) {
    while (t < horizon_) {
      long long target = best(t, used);
      if (target == 0) return;
      bool moved = false;
      std::vector<long long> avail = available(t, used);
      for (int i = 1; i <= ls_.k(); ++i) {
        if (avail[i - 1] <= 0) continue;
        Tick end = t + ls_.length(i) * r_;
        if (!feasible(t, end)) continue;
        ++used[i - 1];
        if (ls_.length(i) + best(end, used) == target) {
          out.plan.push_back({t, i});
          t = end;
          moved = true;
          break;
        }
        --used[i - 1];
      }
      if (moved) continue;
      auto g = next_grid(t);
      if (!g) return;
      t = *g;
    }
  }

  LengthSystem ls_;
  std::vector<Arrival> arrivals_;
  std::vector<Tick> errors_;
  Tick horizon_;
  long long r_;
  std::unordered_map<std::vector<long long>, long long, VecHash> memo_;
};

}  // namespace

OptSchedule offline_opt(const LengthSystem& ls, const std::vector<Arrival>& arrivals,
                        const std::vector<Tick>& errors, Tick horizon, long long ticks_per_unit,
                        OracleCaps caps) {
  if (static_cast<long long>(arrivals.size()) > caps.max_packets)
    throw InstanceTooLarge("too many packets for the exact oracle");
  std::set<Tick> events;
  for (const auto& a : arrivals) events.insert(a.time);
  for (Tick e : errors) events.insert(e);
  if (static_cast<long long>(events.size()) > caps.max_event_times)
    throw InstanceTooLarge("too many distinct event times for the exact oracle");
  return Solver(ls, arrivals, errors, horizon, ticks_per_unit).solve();
}

long long plan_prefix(const OptSchedule& sched, const LengthSystem& ls, Tick t,
                      long long ticks_per_unit, const Selector& sel) {
  long long total = 0;
  for (const auto& [start, i] : sched.plan) {
    if (start + ls.length(i) * ticks_per_unit > t) continue;
    if (sel.matches(i)) total += ls.length(i);
  }
  return total;
}

}  // namespace jamsched
