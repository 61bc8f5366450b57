#include <doctest.h>

#include <functional>
#include <map>
#include <random>

#include "jamsched/engine.hpp"
#include "jamsched/oracle.hpp"

using namespace jamsched;

namespace {

LengthSystem make(std::initializer_list<long long> raw) {
  return build_length_system(std::vector<long long>(raw));
}

// Independent reference: memoized tick-by-tick recursion with no event-grid
// restriction. At each state either start any available class at exactly t or
// wait one tick.
long long naive_opt(const LengthSystem& ls, const std::vector<Arrival>& arrivals,
                    const std::vector<Tick>& errors, Tick horizon, long long r = 1) {
  std::map<std::pair<Tick, std::vector<long long>>, long long> memo;
  std::function<long long(Tick, std::vector<long long>&)> rec =
      [&](Tick t, std::vector<long long>& used) -> long long {
    if (t >= horizon) return 0;
    auto key = std::make_pair(t, used);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    long long best = rec(t + 1 <= horizon ? t + 1 : horizon, used);
    for (int i = 1; i <= ls.k(); ++i) {
      long long avail = 0;
      for (const auto& a : arrivals)
        if (a.length_index == i && a.time <= t) ++avail;
      avail -= used[i - 1];
      if (avail <= 0) continue;
      Tick end = t + ls.length(i) * r;
      if (end > horizon) continue;
      bool clean = true;
      for (Tick e : errors) clean = clean && !(t < e && e < end);
      if (!clean) continue;
      ++used[i - 1];
      best = std::max(best, ls.length(i) + rec(end, used));
      --used[i - 1];
    }
    memo.emplace(key, best);
    return best;
  };
  std::vector<long long> used(ls.k(), 0);
  return rec(0, used);
}

}  // namespace

TEST_CASE("oracle matches the worked example with a fractional jam") {
  // Times scaled by 2 so the jam at 3/2 lands on a tick.
  LengthSystem ls = make({1, 2});
  std::vector<Arrival> arrivals{{0, 2}, {0, 1}, {0, 1}};
  OptSchedule got = offline_opt(ls, arrivals, {3}, 8, 2);
  CHECK(got.value == 3);
  CHECK(plan_prefix(got, ls, 2, 2) == 1);   // one short done by t=1 (unit time)
  CHECK(plan_prefix(got, ls, 0, 2) == 0);
  CHECK(plan_prefix(got, ls, 8, 2) == got.value);
}

TEST_CASE("everything fits when there are no errors and enough room") {
  LengthSystem ls = make({1, 2});
  std::vector<Arrival> arrivals{{0, 1}, {0, 2}, {0, 2}};
  OptSchedule got = offline_opt(ls, arrivals, {}, 5);
  CHECK(got.value == 5);
  CHECK(got.plan.size() == 3);
}

TEST_CASE("empty instance yields an empty plan") {
  OptSchedule got = offline_opt(make({1, 2}), {}, {}, 10);
  CHECK(got.value == 0);
  CHECK(got.plan.empty());
}

TEST_CASE("oracle rejects instances beyond its caps") {
  LengthSystem ls = make({1, 2});
  std::vector<Arrival> many;
  for (Tick t = 0; t < 30; ++t) many.push_back({t, 1});
  CHECK_THROWS_AS(offline_opt(ls, many, {}, 40), InstanceTooLarge);
}

TEST_CASE("plans are feasible: replaying them reproduces the value") {
  LengthSystem ls = make({1, 2, 4});
  std::vector<Arrival> arrivals{{0, 3}, {1, 1}, {2, 2}, {5, 1}};
  std::vector<Tick> errors{3, 7};
  OptSchedule got = offline_opt(ls, arrivals, errors, 12);

  struct Replay final : Policy {
    const OptSchedule* plan;
    size_t pos = 0;
    explicit Replay(const OptSchedule* p) : plan(p) {}
    Action decide(Tick now, const QueueState&) override {
      if (pos >= plan->plan.size()) return Action::idle();
      if (plan->plan[pos].first == now) return Action::send(plan->plan[pos++].second);
      return Action::idle_until(plan->plan[pos].first);
    }
    std::string id() const override { return "replay"; }
    std::unique_ptr<Policy> clone() const override { return std::make_unique<Replay>(*this); }
  };

  Scenario s = make_tick_scenario(ls, arrivals, errors, 12);
  Replay replay(&got);
  Trace t = run(replay, s);
  CHECK(completed_length(t, ls, 12) == got.value);
  for (const auto& r : t.records) CHECK(r.outcome == Outcome::Success);
}

TEST_CASE("oracle agrees with the naive tick recursion on random micro instances") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> nd(0, 5);
  std::uniform_int_distribution<Tick> td(0, 11);
  for (int trial = 0; trial < 200; ++trial) {
    LengthSystem ls = trial % 2 ? make({1, 2}) : make({2, 3});
    std::vector<Arrival> arrivals;
    int n = nd(rng);
    for (int p = 0; p < n; ++p)
      arrivals.push_back({td(rng), 1 + static_cast<int>(rng() % ls.k())});
    std::vector<Tick> errors;
    int jams = static_cast<int>(rng() % 4);
    for (int j = 0; j < jams; ++j) errors.push_back(td(rng));
    CHECK(offline_opt(ls, arrivals, errors, 12).value ==
          naive_opt(ls, arrivals, errors, 12));
  }
}

TEST_CASE("monotonicity in arrivals and jams") {
  LengthSystem ls = make({1, 2});
  std::vector<Arrival> arrivals{{0, 2}, {2, 1}};
  std::vector<Tick> errors{3};
  long long base = offline_opt(ls, arrivals, errors, 8).value;
  auto more = arrivals;
  more.push_back({4, 1});
  CHECK(offline_opt(ls, more, errors, 8).value >= base);
  auto worse = errors;
  worse.push_back(5);
  CHECK(offline_opt(ls, arrivals, worse, 8).value <= base);
}
