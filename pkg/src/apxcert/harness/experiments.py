"""Ratio experiments against exact oracles, and the congestion experiment."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from .. import approx, oracles
from ..approx import RoundingParams
from ..instances import harmonic

# Comparisons of float tour lengths allow this much relative slack.
RATIO_TOL = 1e-9


@dataclass(frozen=True)
class Algorithm:
    tag: str
    problem: str
    sense: str
    run: Callable[[Any, RoundingParams], approx.ApproxOutcome]
    oracle: Callable[[Any], oracles.OptResult]
    bound: Callable[[Any], Any] | None = None
    corpus: str = "cnf"


ALGORITHMS = {a.tag: a for a in (
    Algorithm("maxsat-two-assignments", "maxsat", "max",
              lambda x, p: approx.max3sat_two_assignments(x), oracles.opt_maxsat, lambda x: 2, "cnf"),
    Algorithm("vertexcover-matching", "vertexcover", "min",
              lambda x, p: approx.vertexcover_matching(x), oracles.opt_vertexcover, lambda x: 2,
              "graph"),
    Algorithm("maxcut-random", "maxcut", "max",
              lambda x, p: approx.maxcut_random(x, p.trials, p.seed), oracles.opt_maxcut, None,
              "graph"),
    Algorithm("maxcut-derandomized", "maxcut", "max",
              lambda x, p: approx.maxcut_derandomized(x), oracles.opt_maxcut, lambda x: 2, "graph"),
    Algorithm("setcover-greedy", "setcover", "min",
              lambda x, p: approx.setcover_greedy(x), oracles.opt_setcover,
              lambda x: harmonic(x.universe_size), "setcover"),
    Algorithm("setcover-lp-rounding", "setcover", "min",
              approx.setcover_lp_rounding, oracles.opt_setcover, None, "setcover"),
    Algorithm("tsp-double-tree", "tsp", "min",
              lambda x, p: approx.tsp_double_tree(x), oracles.opt_tsp, lambda x: 2, "metric"),
    Algorithm("tsp-christofides", "tsp", "min",
              lambda x, p: approx.tsp_christofides(x), oracles.opt_tsp, lambda x: Fraction(3, 2),
              "metric"),
    Algorithm("congestion-round", "congestion", "min",
              approx.congestion_round, oracles.opt_congestion, None, "network"),
)}

ORACLES = {
    "maxsat": oracles.opt_maxsat,
    "nae3sat": oracles.opt_nae3sat,
    "maxcut": oracles.opt_maxcut,
    "vertexcover": oracles.opt_vertexcover,
    "setcover": oracles.opt_setcover,
    "tsp": oracles.opt_tsp,
    "congestion": oracles.opt_congestion,
}


def resolve_algorithm(name: str, problem: str | None = None) -> Algorithm:
    """Accept a full tag (``tsp-christofides``) or a short one with its problem."""
    if name in ALGORITHMS:
        alg = ALGORITHMS[name]
    elif problem is not None and f"{problem}-{name}" in ALGORITHMS:
        alg = ALGORITHMS[f"{problem}-{name}"]
    else:
        raise ValueError(f"unknown algorithm {name!r}; known: {sorted(ALGORITHMS)}")
    if problem is not None and alg.problem != problem:
        raise ValueError(f"algorithm {alg.tag} solves {alg.problem}, not {problem}")
    return alg


def approximation_ratio(sense: str, alg_value, opt_value):
    """OPT/ALG for maximisation, ALG/OPT for minimisation; 0/0 counts as 1."""
    num, den = (opt_value, alg_value) if sense == "max" else (alg_value, opt_value)
    if den == 0:
        return 1 if num == 0 else math.inf
    if isinstance(num, float) or isinstance(den, float):
        return float(num) / float(den)
    return Fraction(num) / Fraction(den)


@dataclass
class RatioRow:
    index: int
    alg_value: Any
    opt_value: Any
    ratio: Any
    bound: Any
    violation: bool


@dataclass
class RatioReport:
    algorithm: str
    sense: str
    rows: list = field(default_factory=list)

    @property
    def violations(self) -> list[int]:
        return [r.index for r in self.rows if r.violation]

    @property
    def max_ratio(self):
        return max((r.ratio for r in self.rows), default=None)

    @property
    def mean_ratio(self):
        if not self.rows:
            return None
        return sum(float(r.ratio) for r in self.rows) / len(self.rows)

    @property
    def guarantee_bound(self):
        """Largest per-instance bound (H_n varies with the instance)."""
        bounds = [r.bound for r in self.rows if r.bound is not None]
        return max(bounds) if bounds else None

    HEADER = ("index", "alg_value", "opt_value", "ratio", "bound", "violation")

    def table(self):
        return self.HEADER, [(r.index, r.alg_value, r.opt_value, r.ratio, r.bound, r.violation)
                             for r in self.rows]

    def to_dict(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "sense": self.sense,
            "instances": len(self.rows),
            "max_ratio": self.max_ratio,
            "mean_ratio": self.mean_ratio,
            "guarantee_bound": self.guarantee_bound,
            "violations": len(self.violations),
            "violating_instances": self.violations,
            "rows": [dict(zip(self.HEADER, row)) for row in self.table()[1]],
        }


def run_ratio_experiment(algorithm: str, corpus, params: RoundingParams = RoundingParams()) -> RatioReport:
    """Run ``algorithm`` on every instance and compare with the exact optimum.

    A row is a violation when its ratio exceeds the algorithm's declared
    bound.  The derandomized max-cut additionally has to reach half of the
    total edge mass.
    """
    alg = resolve_algorithm(algorithm)
    report = RatioReport(alg.tag, alg.sense)
    for idx, x in enumerate(corpus):
        out = alg.run(x, params)
        opt = alg.oracle(x).value
        ratio = approximation_ratio(alg.sense, out.value, opt)
        bound = alg.bound(x) if alg.bound else None
        bad = bound is not None and ratio > bound * (1 + RATIO_TOL)
        if alg.tag == "maxcut-derandomized" and 2 * out.value < x.total_mass():
            bad = True
        report.rows.append(RatioRow(idx, out.value, opt, ratio, bound, bad))
    return report


@dataclass
class CongestionRow:
    index: int
    lp_bound: float | None
    alpha: float | None
    trial_congestions: list
    success_fraction: float | None
    error: str | None = None


@dataclass
class CongestionReport:
    rows: list = field(default_factory=list)
    lower_bound_tol: float = 1e-6

    @property
    def pooled_success_fraction(self):
        ok = total = 0
        for r in self.rows:
            if r.error is None:
                total += len(r.trial_congestions)
                ok += round(r.success_fraction * len(r.trial_congestions))
        return ok / total if total else None

    @property
    def lower_bound_violations(self) -> list[int]:
        """Instances with a trial below the LP bound (which would be a pipeline bug)."""
        return [r.index for r in self.rows if r.error is None
                and any(float(c) < r.lp_bound - self.lower_bound_tol for c in r.trial_congestions)]

    @property
    def failures(self) -> list[int]:
        return [r.index for r in self.rows if r.error is not None]

    HEADER = ("index", "lp_bound", "alpha", "trials", "min_congestion", "max_congestion",
              "success_fraction", "error")

    def table(self):
        rows = []
        for r in self.rows:
            cs = r.trial_congestions
            rows.append((r.index, r.lp_bound, r.alpha, len(cs), min(cs) if cs else None,
                         max(cs) if cs else None, r.success_fraction, r.error or ""))
        return self.HEADER, rows

    def to_dict(self) -> dict:
        return {
            "instances": len(self.rows),
            "pooled_success_fraction": self.pooled_success_fraction,
            "lower_bound_violations": self.lower_bound_violations,
            "failures": self.failures,
            "rows": [
                {"index": r.index, "lp_bound": r.lp_bound, "alpha": r.alpha,
                 "trial_congestions": list(r.trial_congestions),
                 "success_fraction": r.success_fraction, "error": r.error}
                for r in self.rows
            ],
        }


def run_congestion_experiment(corpus, params: RoundingParams = RoundingParams()) -> CongestionReport:
    """Congestion rounding per instance; success means congestion <= alpha * r_LP."""
    report = CongestionReport()
    for idx, net in enumerate(corpus):
        try:
            out = approx.congestion_round(net, params)
        except (ArithmeticError, approx.DecompositionError) as exc:
            report.rows.append(CongestionRow(idx, None, None, [], None, f"{type(exc).__name__}: {exc}"))
            continue
        d = out.details
        report.rows.append(CongestionRow(idx, d["lp_bound"], d["alpha"], d["trial_congestions"],
                                         d["success_fraction"]))
    return report
