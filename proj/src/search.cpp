#include "jamsched/search.hpp"

#include <cstdlib>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "jamsched/engine.hpp"
#include "jamsched/oracle.hpp"

namespace jamsched {

namespace {

/// One adversary decision: packets injected at the decision point's instant
/// (count per length class) and, at transmission starts, an optional jam.
struct Choice {
  std::vector<long long> inject;
  std::optional<Tick> jam;
};

/// Thrown by the replay adversary when the script runs out: describes the
/// decision point so the search can enumerate its options.
struct ChoicePoint {
  Tick inject_at;
  Tick jam_lo = 0;  // jam options are [jam_lo, jam_hi]; empty when lo > hi
  Tick jam_hi = -1;
};

class ReplayAdversary final : public Adversary {
 public:
  ReplayAdversary(const std::vector<Choice>& script, int k, Tick horizon)
      : script_(script), k_(k), horizon_(horizon) {}

  AdvEvents on_run_start() override { return consume({0}); }

  AdvEvents on_transmission_start(Tick start, int, Tick planned_end) override {
    ChoicePoint p;
    p.inject_at = start + 1;
    p.jam_lo = start + 1;
    p.jam_hi = std::min(planned_end - 1, horizon_);
    return consume(p);
  }

  AdvEvents on_idle(Tick now, Tick) override { return consume({now}); }

 private:
  AdvEvents consume(const ChoicePoint& p) {
    if (pos_ >= script_.size()) throw p;
    const Choice& c = script_[pos_++];
    AdvEvents ev;
    for (int i = 1; i <= k_; ++i)
      for (long long n = 0; n < c.inject[i - 1]; ++n) ev.arrivals.push_back({p.inject_at, i});
    if (c.jam) ev.jams.push_back(*c.jam);
    return ev;
  }

  const std::vector<Choice>& script_;
  int k_;
  Tick horizon_;
  size_t pos_ = 0;
};

class Searcher {
 public:
  Searcher(const Policy& proto, const LengthSystem& ls, const SearchBudget& budget,
           long long limit)
      : proto_(proto), ls_(ls), budget_(budget), limit_(limit) {}

  SearchResult go() {
    std::vector<Choice> script;
    explore(script);
    return std::move(result_);
  }

 private:
  void explore(std::vector<Choice>& script) {
    if (++result_.nodes > limit_)
      throw BudgetExceeded("worst-case search exceeded the node limit");
    auto policy = proto_.clone();
    Scenario s = make_tick_scenario(ls_, {}, {}, budget_.horizon);
    s.adversary = std::make_shared<ReplayAdversary>(script, ls_.k(), budget_.horizon);
    try {
      evaluate(run(*policy, s));
      return;
    } catch (const ChoicePoint& p) {
      std::vector<long long> rem(budget_.max_packets);
      long long jams_left = budget_.max_jams;
      for (const Choice& c : script) {
        for (int i = 0; i < ls_.k(); ++i) rem[i] -= c.inject[i];
        if (c.jam) --jams_left;
      }
      Choice choice;
      choice.inject.assign(ls_.k(), 0);
      bool can_inject = p.inject_at <= budget_.horizon;
      enumerate_injections(script, choice, p, 0, can_inject, rem, jams_left);
    }
  }

  void enumerate_injections(std::vector<Choice>& script, Choice& choice, const ChoicePoint& p,
                            int cls, bool can_inject, const std::vector<long long>& rem,
                            long long jams_left) {
    if (cls == ls_.k()) {
      enumerate_jams(script, choice, p, jams_left);
      return;
    }
    long long cap = can_inject ? rem[cls] : 0;
    for (long long n = 0; n <= cap; ++n) {
      choice.inject[cls] = n;
      enumerate_injections(script, choice, p, cls + 1, can_inject, rem, jams_left);
    }
    choice.inject[cls] = 0;
  }

  void enumerate_jams(std::vector<Choice>& script, Choice& choice, const ChoicePoint& p,
                      long long jams_left) {
    choice.jam.reset();
    script.push_back(choice);
    explore(script);
    script.pop_back();
    if (jams_left <= 0) return;
    for (Tick j = p.jam_lo; j <= p.jam_hi; ++j) {
      choice.jam = j;
      script.push_back(choice);
      explore(script);
      script.pop_back();
    }
    choice.jam.reset();
  }

  void evaluate(const Trace& trace) {
    std::ostringstream key;
    for (const auto& a : trace.arrivals) key << a.time << ":" << a.length_index << ",";
    key << "|";
    for (Tick e : trace.errors) key << e << ",";
    if (!seen_.insert(key.str()).second) return;
    ++result_.patterns;

    OracleCaps caps;
    caps.max_packets = 64;
    caps.max_event_times = 128;
    long long opt =
        offline_opt(ls_, trace.arrivals, trace.errors, budget_.horizon, 1, caps).value;
    if (opt == 0) return;  // ratio convention: both-zero patterns count as 1
    long long alg = completed_length(trace, ls_, budget_.horizon);
    Rat ratio(alg, opt);
    if (!found_ || ratio < result_.min_ratio) {
      found_ = true;
      result_.min_ratio = ratio;
      result_.witness_arrivals = trace.arrivals;
      result_.witness_errors = trace.errors;
      result_.alg = alg;
      result_.opt = opt;
    }
  }

  const Policy& proto_;
  LengthSystem ls_;
  SearchBudget budget_;
  long long limit_;
  SearchResult result_;
  bool found_ = false;
  std::set<std::string> seen_;
};

}  // namespace

SearchResult worst_case_search(const Policy& prototype, const LengthSystem& ls,
                               const SearchBudget& budget, long long node_limit) {
  if (static_cast<int>(budget.max_packets.size()) != ls.k())
    throw std::invalid_argument("budget needs one packet cap per length class");
  return Searcher(prototype, ls, budget, node_limit).go();
}

long long search_node_limit() {
  if (const char* env = std::getenv("JAMSCHED_NODE_LIMIT")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 10'000'000;
}

}  // namespace jamsched
