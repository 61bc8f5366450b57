#pragma once

#include <vector>

#include "jamsched/policy.hpp"
#include "jamsched/scenario.hpp"

namespace jamsched {

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Adversary budget for the exhaustive game-tree search. Horizon is in ticks
/// at resolution 1.
struct SearchBudget {
  std::vector<long long> max_packets;  // per length index, 1-based order
  long long max_jams = 0;
  Tick horizon = 0;
};

struct SearchResult {
  Rat min_ratio{1};
  std::vector<Arrival> witness_arrivals;
  std::vector<Tick> witness_errors;
  long long alg = 0;   // completed length of the policy on the witness
  long long opt = 0;   // oracle value on the witness
  long long nodes = 0;
  long long patterns = 0;  // distinct full patterns evaluated
};

/// Exact minimum of completed_length(policy)/OPT over the declared adversary
/// space within the budget: packet injections at t=0, at the tick after each
/// transmission start, and one packet-duration after each idle decision; jams
/// strictly inside transmissions. Earlier or mid-flight variations are
/// dominated for the adversary, so the restriction loses nothing against a
/// deterministic policy. Patterns where the optimum is 0 are skipped (ratio
/// convention: 1 when both sides are 0).
SearchResult worst_case_search(const Policy& prototype, const LengthSystem& ls,
                               const SearchBudget& budget, long long node_limit);

/// Node cap from JAMSCHED_NODE_LIMIT, default 10^7.
long long search_node_limit();

}  // namespace jamsched
