"""Greedy and LP randomized-rounding set cover."""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from ..instances import SetCoverInstance, harmonic
from ..lp import LpProblem, solve_lp
from .base import ApproxOutcome, RoundingParams, trial_rng


def _greedy_complete(inst: SetCoverInstance, chosen: list[int]) -> list[int]:
    """Extend ``chosen`` greedily (least cost per new element, lowest index) to a cover."""
    chosen = list(chosen)
    covered = set().union(*(inst.sets[j] for j in chosen)) if chosen else set()
    while len(covered) < inst.universe_size:
        best, best_j = None, -1
        for j, s in enumerate(inst.sets):
            new = len(s - covered)
            if new == 0:
                continue
            ratio = inst.costs[j] / new
            if best is None or ratio < best:
                best, best_j = ratio, j
        chosen.append(best_j)
        covered |= inst.sets[best_j]
    return chosen


def setcover_greedy(inst: SetCoverInstance) -> ApproxOutcome:
    chosen = _greedy_complete(inst, [])
    return ApproxOutcome(inst.cost_of(chosen), tuple(sorted(chosen)),
                         harmonic(inst.universe_size), {"order": tuple(chosen)})


def setcover_lp(inst: SetCoverInstance) -> LpProblem:
    """Relaxation: min sum c_j x_j, every element covered at least once, x in [0, 1]."""
    k = len(inst.sets)
    rows = []
    for e in range(1, inst.universe_size + 1):
        rows.append(([1.0 if e in s else 0.0 for s in inst.sets], ">=", 1.0))
    return LpProblem([float(c) for c in inst.costs], rows, [(0.0, 1.0)] * k)


def rounding_rounds(n: int, d: int) -> int:
    return math.ceil(d * math.log(n + 1))


def setcover_lp_rounding(inst: SetCoverInstance, params: RoundingParams = RoundingParams()) -> ApproxOutcome:
    """LP relaxation followed by ``ceil(d ln(n+1))`` independent rounding rounds.

    Round r includes set j with probability p_j (the LP value).  If the union
    is still not a cover, greedy repair completes it.  The cheapest cover over
    ``params.trials`` independent trials is returned.
    """
    sol = solve_lp(setcover_lp(inst))
    if sol.status != "optimal":
        raise ArithmeticError(f"set cover relaxation returned {sol.status}")
    p = np.clip(sol.values, 0.0, 1.0)
    p[p > 1 - 1e-9] = 1.0
    p[p < 1e-9] = 0.0
    rounds = rounding_rounds(inst.universe_size, params.d)
    best, best_cover, best_repaired = None, None, False
    trial_costs, repairs = [], 0
    for t in range(params.trials):
        rng = trial_rng(params.seed, t)
        picked = np.zeros(len(inst.sets), dtype=bool)
        for _ in range(rounds):
            picked |= rng.random(len(inst.sets)) < p
        chosen = [int(j) for j in np.nonzero(picked)[0]]
        repaired = not inst.covers(chosen)
        if repaired:
            repairs += 1
            chosen = _greedy_complete(inst, chosen)
        cost = inst.cost_of(chosen)
        trial_costs.append(cost)
        if best is None or cost < best:
            best, best_cover, best_repaired = cost, tuple(sorted(chosen)), repaired
    return ApproxOutcome(best, best_cover, None, {
        "lp_value": sol.objective_value,
        "probabilities": tuple(float(x) for x in p),
        "rounds": rounds,
        "repaired": best_repaired,
        "repair_count": repairs,
        "trial_costs": trial_costs,
    })
