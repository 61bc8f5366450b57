#pragma once

#include "jamsched/adversary.hpp"
#include "jamsched/policy.hpp"
#include "jamsched/scenario.hpp"
#include "jamsched/trace.hpp"

namespace jamsched {

struct PolicyViolation : std::logic_error {
  using std::logic_error::logic_error;
};

/// Runs one policy against one scenario and returns the full trace.
///
/// Same-tick ordering: (1) deliver arrivals, (2) resolve the running
/// transmission, (3) apply the jam, (4) consult the policy. A jam therefore
/// corrupts exactly the transmission in flight when it fires: start < t_jam
/// < end, and a transmission started at the jam's own tick is unaffected.
/// Once started, a transmission runs to completion or jam; the engine rejects
/// any attempt to transmit from an empty queue class (PolicyViolation).
Trace run(Policy& policy, const Scenario& scenario);

}  // namespace jamsched
