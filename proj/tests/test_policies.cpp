#include <doctest.h>

#include "jamsched/engine.hpp"
#include "jamsched/policies.hpp"

using namespace jamsched;

namespace {

LengthSystem make(std::initializer_list<long long> raw) {
  return build_length_system(std::vector<long long>(raw));
}

QueueState queue_with(const LengthSystem& ls, std::vector<long long> counts) {
  QueueState q(ls.k());
  int id = 0;
  for (int i = 1; i <= ls.k(); ++i)
    for (long long n = 0; n < counts[i - 1]; ++n) q.push(i, id++);
  return q;
}

std::vector<int> successes(const Trace& t) {
  std::vector<int> out;
  for (const auto& r : t.records)
    if (r.outcome == Outcome::Success) out.push_back(r.length_index);
  return out;
}

}  // namespace

TEST_CASE("shortest-first and longest-first pick the obvious ends") {
  LengthSystem ls = make({1, 2, 4});
  ShortestFirstPolicy sl(ls);
  LongestFirstPolicy ll(ls);
  QueueState q = queue_with(ls, {1, 0, 1});
  CHECK(sl.decide(0, q).transmit == 1);
  CHECK(ll.decide(0, q).transmit == 3);
  QueueState mid = queue_with(ls, {0, 2, 0});
  CHECK(sl.decide(0, mid).transmit == 2);
  CHECK(ll.decide(0, mid).transmit == 2);
  QueueState empty = queue_with(ls, {0, 0, 0});
  CHECK(sl.decide(0, empty).is_idle());
  CHECK(ll.decide(0, empty).is_idle());
}

TEST_CASE("greedy first decisions on the worked examples") {
  LengthSystem ls = make({1, 2, 4});
  {
    GreedyPolicy g(ls, false);
    QueueState q = queue_with(ls, {5, 1, 1});
    CHECK(g.decide(0, q).transmit == 1);  // descends 3 -> 2 -> 1: 7 >= 4, 5 >= 2
  }
  {
    GreedyPolicy g(ls, false);
    QueueState q = queue_with(ls, {1, 0, 1});
    CHECK(g.decide(0, q).transmit == 3);  // total 5 >= 4 but below-3 volume 1 < 4
  }
  {
    GreedyPolicy g(ls, false);
    QueueState q = queue_with(ls, {1, 1, 0});
    CHECK(g.decide(0, q).is_idle());  // total 3 < l_k
  }
}

TEST_CASE("greedy requires divisible lengths; the cover variant does not") {
  LengthSystem nd = make({2, 3});
  CHECK_THROWS_AS(GreedyPolicy(nd, false), UnsupportedLengthSystem);
  CHECK_NOTHROW(GreedyPolicy(nd, true));
  CHECK_THROWS_AS(PrudentPolicy{nd}, UnsupportedLengthSystem);
}

TEST_CASE("greedy cover variant on the two-length examples") {
  LengthSystem ls = make({2, 3});
  {
    GreedyPolicy g(ls, true);
    QueueState q = queue_with(ls, {3, 1});
    CHECK(g.decide(0, q).transmit == 1);  // 6 >= 3 opens a child group
  }
  {
    GreedyPolicy g(ls, true);
    QueueState q = queue_with(ls, {1, 1});
    CHECK(g.decide(0, q).transmit == 2);  // 2 < 3 at the top level
  }
  {
    GreedyPolicy g(ls, true);
    QueueState q = queue_with(ls, {0, 0});
    CHECK(g.decide(0, q).is_idle());
  }
}

TEST_CASE("greedy group quotas consume exactly the planned children") {
  Scenario s = make_tick_scenario(make({1, 2, 4}), {{0, 1}, {0, 1}, {0, 1}, {0, 1}}, {}, 10);
  GreedyPolicy g(s.ls, false);
  Trace t = run(g, s);
  CHECK(successes(t) == std::vector<int>{1, 1, 1, 1});
  CHECK(t.idle_intervals.size() == 1);
  CHECK(t.idle_intervals[0].begin == 4);
}

TEST_CASE("greedy retries a jammed transmission and re-evaluates the descend rule") {
  Scenario s = make_tick_scenario(make({1, 2}), {{0, 2}, {1, 1}, {1, 1}}, {1}, 10);
  GreedyPolicy g(s.ls, false);
  Trace t = run(g, s);
  // The long attempt [0,2) is jammed at 1; the two shorts arriving at 1 make
  // the descend condition true, so the retry is a group of shorts.
  REQUIRE(t.records.size() >= 3);
  CHECK(t.records[0].outcome == Outcome::Jammed);
  CHECK(t.records[1].length_index == 1);
  CHECK(t.records[2].length_index == 1);
  CHECK(completed_length(t, s.ls, 10) == 4);
}

TEST_CASE("mgreedy candidate selection on the worked examples") {
  LengthSystem ls = make({2, 3});
  {
    MGreedyPolicy m(ls, 2);  // threshold c*k*l_k = 12
    QueueState q = queue_with(ls, {0, 4});
    CHECK(m.decide(0, q).transmit == 2);
  }
  {
    MGreedyPolicy m(ls, 2);
    QueueState q = queue_with(ls, {6, 4});
    CHECK(m.decide(0, q).transmit == 1);  // i* = min of the candidate set
  }
  {
    MGreedyPolicy m(ls, 2);
    QueueState q = queue_with(ls, {5, 3});
    CHECK(m.decide(0, q).is_idle());  // 10 < 12 and 9 < 12
  }
}

TEST_CASE("mgreedy stages count ck top-level calls and log uniformity") {
  LengthSystem ls = make({2, 3});
  std::vector<Arrival> arrivals;
  for (int n = 0; n < 40; ++n) arrivals.push_back({0, 1});
  Scenario s = make_tick_scenario(ls, std::move(arrivals), {}, 80);
  MGreedyPolicy m(ls, 2);
  Trace t = run(m, s);
  REQUIRE(!m.stage_log().empty());
  const auto& stage = m.stage_log().front();
  CHECK(stage.completed);
  CHECK(stage.calls.size() == 4);  // ck = 2*2
  long long uniform = 0;
  for (const auto& call : stage.calls)
    if (call.uniform) ++uniform;
  CHECK(uniform >= 4 - 2 * ls.k());
  CHECK(completed_length(t, s.ls, 80) > 0);
}

TEST_CASE("mgreedy-adaptive doubles c once enough length went through") {
  LengthSystem ls = make({2, 3});
  std::vector<Arrival> arrivals;
  for (int n = 0; n < 60; ++n) arrivals.push_back({0, 1});
  Scenario s = make_tick_scenario(ls, std::move(arrivals), {}, 200);
  // Doubling threshold W*c^2*k*l_k = 6 at c0=1, reached after one stage.
  MGreedyAdaptivePolicy m(ls, 1, 1);
  run(m, s);
  REQUIRE(m.stage_log().size() >= 2);
  CHECK(m.stage_log()[0].c == 1);
  CHECK(m.stage_parameter() > 1);
}

TEST_CASE("prudent first decisions on the worked examples") {
  LengthSystem ls = make({1, 2, 4});
  {
    PrudentPolicy p(ls);
    QueueState q = queue_with(ls, {4, 0, 0});
    CHECK(p.decide(0, q).transmit == 1);  // preamble of shorts
  }
  {
    PrudentPolicy p(ls);
    QueueState q = queue_with(ls, {0, 0, 2});
    CHECK(p.decide(0, q).transmit == 3);  // i = k skips the preamble
  }
  {
    PrudentPolicy p(ls);
    QueueState q = queue_with(ls, {3, 0, 0});
    CHECK(p.decide(0, q).is_idle());  // no class reaches l_k
  }
}

TEST_CASE("prudent preamble runs blocks until the phase is amortized") {
  Scenario s = make_tick_scenario(make({1, 2, 4}),
                                  {{0, 1}, {0, 1}, {0, 1}, {0, 1}, {0, 3}}, {}, 20);
  PrudentPolicy p(s.ls);
  Trace t = run(p, s);
  // Four shorts amortize l_k = 4, then the longest loop sends the long.
  CHECK(successes(t) == std::vector<int>{1, 1, 1, 1, 3});
}

TEST_CASE("a jam resets prudent to a fresh phase") {
  Scenario s = make_tick_scenario(make({1, 2, 4}),
                                  {{0, 1}, {0, 1}, {0, 1}, {0, 1}, {0, 3}}, {6}, 20);
  PrudentPolicy p(s.ls);
  Trace t = run(p, s);
  CHECK(completed_length(t, s.ls, 20) == 8);
  bool saw_jam = false;
  for (const auto& r : t.records) saw_jam = saw_jam || r.outcome == Outcome::Jammed;
  CHECK(saw_jam);
}

TEST_CASE("policy ids round-trip through the factory") {
  LengthSystem ls = make({1, 2, 4});
  for (const char* id :
       {"greedy", "greedy-cover", "prudent", "sl", "ll", "mgreedy:c=4",
        "mgreedy-adaptive:c0=2,W=16"}) {
    auto p = make_policy(id, ls);
    CHECK(p->id() == id);
  }
  CHECK_THROWS_AS(make_policy("nope", ls), UnknownPolicy);
  CHECK_THROWS_AS(make_policy("mgreedy:c=x", ls), UnknownPolicy);
  CHECK_THROWS_AS(make_policy("mgreedy-adaptive:c0=2", ls), UnknownPolicy);
}
