#include <doctest.h>

#include "jamsched/engine.hpp"
#include "jamsched/policies.hpp"

using namespace jamsched;

namespace {

LengthSystem ls12() { return build_length_system(std::vector<long long>{1, 2}); }

}  // namespace

TEST_CASE("single packet, no jams: success then idle") {
  Scenario s = make_tick_scenario(ls12(), {{0, 1}}, {}, 4);
  ShortestFirstPolicy sl(s.ls);
  Trace t = run(sl, s);
  REQUIRE(t.records.size() == 1);
  CHECK(t.records[0].outcome == Outcome::Success);
  CHECK(t.records[0].start == 0);
  CHECK(t.records[0].end == 1);
  REQUIRE(t.idle_intervals.size() == 1);
  CHECK(t.idle_intervals[0].begin == 1);
  CHECK(t.idle_intervals[0].end == 4);
}

TEST_CASE("jam mid-transmission: retry succeeds") {
  Scenario s = make_tick_scenario(ls12(), {{0, 2}}, {1}, 4);
  LongestFirstPolicy ll(s.ls);
  Trace t = run(ll, s);
  REQUIRE(t.records.size() == 2);
  CHECK(t.records[0].outcome == Outcome::Jammed);
  CHECK(t.records[0].start == 0);
  CHECK(t.records[0].end == 1);
  CHECK(t.records[1].outcome == Outcome::Success);
  CHECK(t.records[1].start == 1);
  CHECK(t.records[1].end == 3);
}

TEST_CASE("jam at the completion instant does not corrupt (half-open rule)") {
  Scenario s = make_tick_scenario(ls12(), {{0, 1}}, {1}, 4);
  ShortestFirstPolicy sl(s.ls);
  Trace t = run(sl, s);
  REQUIRE(t.records.size() == 1);
  CHECK(t.records[0].outcome == Outcome::Success);
  CHECK(t.records[0].end == 1);
}

TEST_CASE("transmission started at a jam tick is unaffected") {
  // Jams at 1 and 2 kill [0,2) and [1,3); the retry starting exactly at the
  // jam tick 2 runs clean.
  Scenario s = make_tick_scenario(ls12(), {{0, 2}}, {1, 2}, 6);
  LongestFirstPolicy ll(s.ls);
  Trace t = run(ll, s);
  REQUIRE(t.records.size() == 3);
  CHECK(t.records[0].outcome == Outcome::Jammed);
  CHECK(t.records[1].outcome == Outcome::Jammed);
  CHECK(t.records[2].start == 2);
  CHECK(t.records[2].outcome == Outcome::Success);
}

TEST_CASE("completed length and count respect selectors") {
  Scenario s = make_tick_scenario(ls12(), {{0, 1}, {0, 1}, {0, 2}}, {}, 4);
  ShortestFirstPolicy sl(s.ls);
  Trace t = run(sl, s);
  CHECK(completed_length(t, s.ls, 4) == 4);
  CHECK(completed_length(t, s.ls, 4, Selector::greater_eq(2)) == 2);
  CHECK(completed_count(t, s.ls, 4) == 3);
  CHECK(completed_length(Trace{}, s.ls, 4) == 0);
}

TEST_CASE("horizon truncates an in-flight transmission") {
  Scenario s = make_tick_scenario(ls12(), {{0, 2}}, {}, 1);
  LongestFirstPolicy ll(s.ls);
  Trace t = run(ll, s);
  REQUIRE(t.records.size() == 1);
  CHECK(t.records[0].outcome == Outcome::Truncated);
  CHECK(t.records[0].end == 1);
  CHECK(completed_length(t, s.ls, 1) == 0);
  CHECK(t.final_queue.count(2) == 1);
}

TEST_CASE("speed-up scales durations exactly") {
  Scenario s = make_scenario(ls12(), {{Rat(0), 2}}, {}, Rat(4), Rat(2));
  CHECK(s.ticks_per_unit == 2);
  CHECK(s.duration_ticks(2) == 2);      // l_2 = 2 units, speed 2, R = 2
  CHECK(s.unit_duration_ticks(2) == 4);  // what the optimum pays
  LongestFirstPolicy ll(s.ls);
  Trace t = run(ll, s);
  REQUIRE(t.records.size() == 1);
  CHECK(t.records[0].end == 2);
}

TEST_CASE("fractional event times pick a resolution that keeps ticks exact") {
  Scenario s = make_scenario(ls12(), {{Rat(1, 3), 1}}, {Rat(1, 2)}, Rat(2));
  CHECK(s.ticks_per_unit == 6);
  CHECK(s.arrivals[0].time == 2);
  CHECK(s.errors[0] == 3);
}

TEST_CASE("runs are deterministic and replayable from the recorded pattern") {
  Scenario s = make_tick_scenario(ls12(), {{0, 1}, {2, 2}, {3, 1}}, {4, 7}, 12);
  ShortestFirstPolicy a(s.ls), b(s.ls);
  Trace t1 = run(a, s);
  Trace t2 = run(b, s);
  REQUIRE(t1.records.size() == t2.records.size());
  for (size_t i = 0; i < t1.records.size(); ++i) {
    CHECK(t1.records[i].start == t2.records[i].start);
    CHECK(t1.records[i].outcome == t2.records[i].outcome);
  }
  CHECK(t1.arrivals == s.arrivals);
  CHECK(t1.errors == s.errors);
}

TEST_CASE("requesting an empty queue class is a policy violation") {
  struct Bad final : Policy {
    Action decide(Tick, const QueueState&) override { return Action::send(2); }
    std::string id() const override { return "bad"; }
    std::unique_ptr<Policy> clone() const override { return std::make_unique<Bad>(*this); }
  };
  Scenario s = make_tick_scenario(ls12(), {{0, 1}}, {}, 4);
  Bad bad;
  CHECK_THROWS_AS(run(bad, s), PolicyViolation);
}

TEST_CASE("scenario validation rejects malformed inputs") {
  CHECK_THROWS_AS(make_tick_scenario(ls12(), {{0, 3}}, {}, 4), InvalidScenario);
  CHECK_THROWS_AS(make_tick_scenario(ls12(), {{5, 1}}, {}, 4), InvalidScenario);
  CHECK_THROWS_AS(make_tick_scenario(ls12(), {}, {-1}, 4), InvalidScenario);
  CHECK_THROWS_AS(make_scenario(ls12(), {}, {}, Rat(4), Rat(0)), InvalidScenario);
  // speed-up 3 on unit lengths: one tick per third of a unit keeps it exact
  Scenario s = make_scenario(ls12(), {}, {}, Rat(4), Rat(3));
  CHECK(s.duration_ticks(1) == 1);
}
