from __future__ import annotations

from ..instances import CnfFormula, count_satisfied
from .base import ApproxOutcome


def max3sat_two_assignments(formula: CnfFormula) -> ApproxOutcome:
    """Better of the all-true and all-false assignments (ties to all-true).

    Every clause without a repeated variable is satisfied by at least one of
    the two, so the result satisfies at least half of the clauses.
    """
    n = formula.num_vars
    ones, zeros = (True,) * n, (False,) * n
    c1, c0 = count_satisfied(formula, ones), count_satisfied(formula, zeros)
    if c1 >= c0:
        return ApproxOutcome(c1, ones, 2, {"all_true": c1, "all_false": c0})
    return ApproxOutcome(c0, zeros, 2, {"all_true": c1, "all_false": c0})
