"""Online packet scheduling under jamming: Python wrapper over the C++ core.

Every function takes/returns plain dicts; exact rationals appear as "p/q"
strings. Scenario documents use the same schema as the CLI:

    {"lengths": [1, 2], "horizon": 20,
     "arrivals": [[0, 1], ["1/2", 2]], "errors": [3]}
"""

import json as _json
from fractions import Fraction

# Installed wheels place the extension inside the package; a development
# checkout finds it on PYTHONPATH next to the build tree.
try:
    from ._jamsched import (
        BudgetExceeded,
        InstanceTooLarge,
        InvalidScenario,
        audit_json,
        constants_json,
        offline_opt_json,
        search_json,
        simulate_json,
    )
except ImportError:
    from _jamsched import (
        BudgetExceeded,
        InstanceTooLarge,
        InvalidScenario,
        audit_json,
        constants_json,
        offline_opt_json,
        search_json,
        simulate_json,
    )

__all__ = [
    "BudgetExceeded",
    "InstanceTooLarge",
    "InvalidScenario",
    "audit",
    "constants",
    "offline_opt",
    "ratio",
    "search",
    "simulate",
]


def ratio(value):
    """Parse a "p/q" rational string from any result into a Fraction."""
    return Fraction(value)


def constants(lengths):
    return _json.loads(constants_json([str(x) for x in lengths]))


def simulate(scenario, policy, samples=20):
    return _json.loads(simulate_json(_json.dumps(scenario), policy, samples))


def offline_opt(scenario):
    return _json.loads(offline_opt_json(_json.dumps(scenario)))


def audit(scenario, policy, samples=20):
    return _json.loads(audit_json(_json.dumps(scenario), policy, samples))


def search(policy, lengths, max_per_length, max_jams, horizon_ticks, node_limit=0):
    return _json.loads(
        search_json(policy, [str(x) for x in lengths], list(max_per_length), max_jams,
                    horizon_ticks, node_limit)
    )
