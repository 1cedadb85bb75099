"""Gadget L-reductions, clause splitting, PTAS composition and an empirical verifier.

A reduction is packaged as an :class:`LReductionSpec` holding the instance map
``f``, the solution pull-back ``g(x, y)`` and the claimed constants.  The
verifier measures, with exact oracles,

* ``max OPT2(f(x)) / OPT1(x)`` against ``a`` and
* ``max |OPT1(x) - VAL1(g(y))| / |OPT2(f(x)) - VAL2(y)|`` against ``b``,

over every target solution ``y`` when there are at most ``2**16`` of them and
over a uniform sample otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, NamedTuple

import numpy as np

from . import kernels
from .instances import (CnfFormula, InstanceError, MultiGraph, count_nae_satisfied,
                        count_satisfied, cut_weight)
from .oracles import (OptResult, OracleLimitError, decode_bits, encode_bits, opt_maxcut,
                      opt_maxsat, opt_nae3sat, sat_masks, scaled_edge_weights)

EXHAUSTIVE_BITS = 16


# --------------------------------------------------------------------------
# Problems
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Problem:
    """Binary-encoded optimisation problem: solutions are codes in range(2**num_bits)."""

    name: str
    sense: str
    evaluate: Callable[[Any, Any], Any]
    optimum: Callable[[Any], OptResult]
    num_bits: Callable[[Any], int]
    decode: Callable[[Any, int], Any]
    values_all: Callable[[Any], tuple[np.ndarray, int]]


def _sat_values(formula, nae):
    pos, neg = sat_masks(formula)
    return kernels.sat_values(pos, neg, formula.num_vars, nae), 1


def _cut_values(g):
    ws, scale = scaled_edge_weights(g)
    vals = kernels.cut_values([e.u for e in g.edges], [e.v for e in g.edges], ws, g.num_vertices)
    return vals, scale


MAXSAT = Problem("maxsat", "max", count_satisfied, opt_maxsat, lambda f: f.num_vars,
                 lambda f, c: decode_bits(c, f.num_vars), lambda f: _sat_values(f, False))
MAXNAESAT = Problem("maxnae3sat", "max", count_nae_satisfied, opt_nae3sat, lambda f: f.num_vars,
                    lambda f, c: decode_bits(c, f.num_vars), lambda f: _sat_values(f, True))
MAXCUT = Problem("maxcut", "max", cut_weight, opt_maxcut, lambda g: g.num_vertices,
                 lambda g, c: tuple(int(b) for b in decode_bits(c, g.num_vertices)),
                 _cut_values)


# --------------------------------------------------------------------------
# Reductions
# --------------------------------------------------------------------------


class Reduced(NamedTuple):
    instance: Any
    pullback: Callable[[Any], Any]


def gadget_clauses(x: int, y: int, z: int, v: int) -> list[tuple[int, ...]]:
    """The ten 2-CNF clauses replacing the 3-clause (x | y | z); v is fresh."""
    return [(x,), (y,), (z,), (v,),
            (-x, -y), (-x, -z), (-y, -z),
            (x, -v), (y, -v), (z, -v)]


def _require_width(formula: CnfFormula, widths: tuple[int, ...], what: str):
    for j, c in enumerate(formula.clauses):
        if len(c) not in widths:
            raise InstanceError(f"{what}: clause {j} has width {len(c)}")


def reduce_3sat_to_2sat(formula: CnfFormula) -> Reduced:
    """Each clause j becomes the ten-clause gadget with auxiliary variable n + 1 + j."""
    _require_width(formula, (3,), "Max-3SAT to Max-2SAT needs exactly 3 literals per clause")
    n = formula.num_vars
    clauses = []
    for j, (x, y, z) in enumerate(formula.clauses):
        clauses += gadget_clauses(x, y, z, n + 1 + j)
    target = CnfFormula(n + formula.num_clauses, tuple(clauses), 2)
    return Reduced(target, lambda a: tuple(a[:n]))


def reduce_2sat_to_nae3sat(formula: CnfFormula) -> Reduced:
    """(a | b) becomes NAE(a, b, c) with one shared fresh variable c = n + 1."""
    _require_width(formula, (2,), "Max-2SAT to Max-NAE3SAT needs exactly 2 literals per clause")
    n = formula.num_vars
    c = n + 1
    target = CnfFormula(n + 1, tuple((a, b, c) for a, b in formula.clauses), 3)

    def pullback(assignment):
        a = tuple(assignment)
        if a[c - 1]:
            a = tuple(not v for v in a)
        return a[:n]

    return Reduced(target, pullback)


def literal_vertex(lit: int) -> int:
    """Vertex of a literal: 2(i-1) for variable i, 2(i-1)+1 for its negation."""
    return 2 * (abs(lit) - 1) + (lit < 0)


def reduce_nae3sat_to_maxcut(formula: CnfFormula) -> Reduced:
    """Literal-vertex multigraph: clause triangles (or doubled edges) plus 2k-bundles."""
    _require_width(formula, (2, 3), "Max-NAE3SAT to MAX-CUT needs 2 or 3 literals per clause")
    n = formula.num_vars
    edges = []
    for clause in formula.clauses:
        vs = [literal_vertex(l) for l in clause]
        if len(vs) == 3:
            a, b, c = vs
            edges += [(a, b, 1), (b, c, 1), (a, c, 1)]
        else:
            edges.append((vs[0], vs[1], 2))
    occ = formula.occurrences()
    for i in range(1, n + 1):
        if occ[i]:
            edges.append((literal_vertex(i), literal_vertex(-i), 2 * occ[i]))
    labels = {literal_vertex(l): l for i in range(1, n + 1) for l in (i, -i)}
    graph = MultiGraph(2 * n, tuple(edges), labels)
    return Reduced(graph, lambda p: cut_to_assignment(n, p))


def repair_partition(n: int, partition) -> tuple[int, ...]:
    """Move each negated-literal vertex opposite its positive vertex (variable order)."""
    side = list(partition)
    for i in range(1, n + 1):
        pv, nv = literal_vertex(i), literal_vertex(-i)
        if side[pv] == side[nv]:
            side[nv] = 1 - side[pv]
    return tuple(side)


def cut_to_assignment(n: int, partition) -> tuple[bool, ...]:
    """Literals on side S (0) are true after repair."""
    side = repair_partition(n, partition)
    return tuple(side[literal_vertex(i)] == 0 for i in range(1, n + 1))


def split_clause(clause, next_var: int) -> tuple[list[tuple[int, ...]], int]:
    """Chain-split a wide clause into 3-clauses using fresh variables from ``next_var``."""
    clause = tuple(clause)
    k = len(clause)
    if k <= 3:
        return [clause], next_var
    w = list(range(next_var, next_var + k - 3))
    out = [(clause[0], clause[1], w[0])]
    for j in range(1, k - 3):
        out.append((-w[j - 1], clause[j + 1], w[j]))
    out.append((-w[-1], clause[-2], clause[-1]))
    return out, next_var + k - 3


def ksat_to_3sat(formula: CnfFormula) -> CnfFormula:
    """Width <= 3 clauses pass through; wider ones become chains of 3-clauses."""
    nxt = formula.num_vars + 1
    clauses = []
    for c in formula.clauses:
        part, nxt = split_clause(c, nxt)
        clauses += part
    return CnfFormula(nxt - 1, tuple(clauses), 3 if clauses else 1)


# --------------------------------------------------------------------------
# L-reduction specs
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class LReductionSpec:
    name: str
    source: Problem
    target: Problem
    f: Callable[[Any], Any]
    g: Callable[[Any, Any], Any]
    claimed_a: Fraction
    claimed_b: Fraction
    g_codes: Callable[[Any, np.ndarray], np.ndarray] | None = None
    identity: Callable[[Any, Any], Any] | None = None  # predicted OPT2 from (x, OPT1)

    def __post_init__(self):
        if self.claimed_a <= 0 or self.claimed_b <= 0:
            raise ValueError("claimed constants must be positive")


def _g_codes_3to2(x, codes):
    return codes >> np.uint64(x.num_clauses)


def _g_codes_2tonae(x, codes):
    n = x.num_vars
    flip = (codes & np.uint64(1)).astype(bool)
    codes = np.where(flip, codes ^ np.uint64((1 << (n + 1)) - 1), codes)
    return codes >> np.uint64(1)


def _g_codes_naetocut(x, codes):
    n = x.num_vars
    nv = 2 * n
    out = np.zeros(codes.shape, dtype=np.uint64)
    for i in range(1, n + 1):
        side = (codes >> np.uint64(nv - 1 - literal_vertex(i))) & np.uint64(1)
        out |= (side ^ np.uint64(1)) << np.uint64(n - i)
    return out


THREESAT_TO_TWOSAT = LReductionSpec(
    "3sat-to-2sat", MAXSAT, MAXSAT,
    lambda x: reduce_3sat_to_2sat(x).instance,
    lambda x, y: tuple(y[:x.num_vars]),
    Fraction(13), Fraction(1), _g_codes_3to2,
    lambda x, opt: 6 * x.num_clauses + opt,
)

TWOSAT_TO_NAE3SAT = LReductionSpec(
    "2sat-to-nae3sat", MAXSAT, MAXNAESAT,
    lambda x: reduce_2sat_to_nae3sat(x).instance,
    lambda x, y: reduce_2sat_to_nae3sat(x).pullback(y),
    Fraction(1), Fraction(1), _g_codes_2tonae,
    lambda x, opt: opt,
)

NAE3SAT_TO_MAXCUT = LReductionSpec(
    "nae3sat-to-maxcut", MAXNAESAT, MAXCUT,
    lambda x: reduce_nae3sat_to_maxcut(x).instance,
    lambda x, y: cut_to_assignment(x.num_vars, y),
    Fraction(8), Fraction(2), _g_codes_naetocut,
    lambda x, opt: 2 * x.num_literal_occurrences() + 2 * opt,
)

REDUCTIONS = {r.name: r for r in (THREESAT_TO_TWOSAT, TWOSAT_TO_NAE3SAT, NAE3SAT_TO_MAXCUT)}


# --------------------------------------------------------------------------
# PTAS composition
# --------------------------------------------------------------------------


class ComposedScheme:
    """x -> g(x, scheme(f(x), delta)) with delta = eps / (a * b)."""

    def __init__(self, red: LReductionSpec, scheme: Callable[[Any, Fraction], Any], eps):
        eps = Fraction(eps)
        if eps <= 0:
            raise ValueError("eps must be positive")
        self.red, self.scheme, self.eps = red, scheme, eps
        self.delta = eps / (Fraction(red.claimed_a) * Fraction(red.claimed_b))

    def __call__(self, x):
        y = self.scheme(self.red.f(x), self.delta)
        return self.red.g(x, y)


def compose_ptas(red: LReductionSpec, target_scheme, eps) -> ComposedScheme:
    return ComposedScheme(red, target_scheme, eps)


def exact_scheme(problem: Problem):
    """An 'approximation scheme' that ignores delta and returns an optimal witness."""
    return lambda instance, delta: problem.optimum(instance).witness


# --------------------------------------------------------------------------
# Verification
# --------------------------------------------------------------------------


@dataclass
class VerificationReport:
    reduction: str
    claimed_a: Fraction
    claimed_b: Fraction
    instances_checked: int = 0
    skipped: list = field(default_factory=list)
    condition3_max_ratio: Fraction = Fraction(0)
    condition4_max_ratio: Fraction = Fraction(0)
    identity_violations: list = field(default_factory=list)
    exhaustive: bool = True
    samples: int = 0  # target solutions examined, summed over instances
    worst_condition3: int | None = None
    worst_condition4: int | None = None

    @property
    def condition3_pass(self) -> bool:
        return self.condition3_max_ratio <= self.claimed_a

    @property
    def condition4_pass(self) -> bool:
        return self.condition4_max_ratio <= self.claimed_b

    def merge(self, other: "VerificationReport", offset: int) -> None:
        """Fold in a report built over a later slice of the corpus."""
        self.instances_checked += other.instances_checked
        self.skipped += [i + offset for i in other.skipped]
        self.identity_violations += [i + offset for i in other.identity_violations]
        if other.condition3_max_ratio > self.condition3_max_ratio:
            self.condition3_max_ratio = other.condition3_max_ratio
            self.worst_condition3 = other.worst_condition3 + offset
        if other.condition4_max_ratio > self.condition4_max_ratio:
            self.condition4_max_ratio = other.condition4_max_ratio
            self.worst_condition4 = other.worst_condition4 + offset
        self.exhaustive &= other.exhaustive
        self.samples += other.samples

    def to_dict(self) -> dict:
        return {
            "reduction": self.reduction,
            "claimed_a": float(self.claimed_a),
            "claimed_b": float(self.claimed_b),
            "instances_checked": self.instances_checked,
            "skipped": list(self.skipped),
            "condition3_max_ratio": float(self.condition3_max_ratio),
            "condition4_max_ratio": float(self.condition4_max_ratio),
            "condition3_pass": self.condition3_pass,
            "condition4_pass": self.condition4_pass,
            "identity_violations": list(self.identity_violations),
            "exhaustive": self.exhaustive,
            "samples": self.samples,
        }


def _condition4(red, x, fx, opt1, opt2, codes):
    """Max |OPT1 - VAL1(g(y))| / |OPT2 - VAL2(y)| over the given target codes."""
    if red.g_codes is not None:
        tv, tscale = red.target.values_all(fx)
        sv, sscale = red.source.values_all(x)
        t_vals = tv[codes.astype(np.int64)].astype(object)
        s_vals = sv[red.g_codes(x, codes).astype(np.int64)].astype(object)
        err2 = [abs(Fraction(opt2) - Fraction(int(v), tscale)) for v in t_vals]
        err1 = [abs(Fraction(opt1) - Fraction(int(v), sscale)) for v in s_vals]
    else:
        err1, err2 = [], []
        for code in codes:
            y = red.target.decode(fx, int(code))
            err2.append(abs(Fraction(opt2) - Fraction(red.target.evaluate(fx, y))))
            err1.append(abs(Fraction(opt1) - Fraction(red.source.evaluate(x, red.g(x, y)))))
    worst = Fraction(0)
    for e1, e2 in zip(err1, err2):
        if e2 == 0:
            if e1 != 0:
                return None  # nonzero source error with zero target error
            continue
        r = e1 / e2
        if r > worst:
            worst = r
    return worst


def verify_lreduction(red: LReductionSpec, corpus, samples: int = 4096,
                      seed: int = 0, vectorized: bool = True) -> VerificationReport:
    """Measure both L-reduction constants on ``corpus`` with exact oracles.

    A condition-4 failure where the target error is zero but the source error
    is not is recorded as an infinite ratio.
    """
    if not vectorized and red.g_codes is not None:
        red = LReductionSpec(red.name, red.source, red.target, red.f, red.g,
                             red.claimed_a, red.claimed_b, None, red.identity)
    report = VerificationReport(red.name, Fraction(red.claimed_a), Fraction(red.claimed_b))
    rng = np.random.Generator(np.random.PCG64(seed))
    for idx, x in enumerate(corpus):
        try:
            opt1 = red.source.optimum(x).value
            fx = red.f(x)
            opt2 = red.target.optimum(fx).value
        except OracleLimitError:
            report.skipped.append(idx)
            continue
        report.instances_checked += 1
        if red.identity is not None and red.identity(x, opt1) != opt2:
            report.identity_violations.append(idx)
        if opt1 == 0:
            r3 = Fraction(0) if opt2 == 0 else None
        else:
            r3 = Fraction(opt2) / Fraction(opt1)
        if r3 is None:
            report.condition3_max_ratio = Fraction(10**18)
            report.worst_condition3 = idx
        elif r3 > report.condition3_max_ratio:
            report.condition3_max_ratio, report.worst_condition3 = r3, idx
        bits = red.target.num_bits(fx)
        if bits <= EXHAUSTIVE_BITS:
            codes = np.arange(1 << bits, dtype=np.uint64)
        else:
            report.exhaustive = False
            codes = rng.integers(0, 1 << bits, size=samples, dtype=np.uint64)
        report.samples += len(codes)
        r4 = _condition4(red, x, fx, opt1, opt2, codes)
        if r4 is None:
            report.condition4_max_ratio = Fraction(10**18)
            report.worst_condition4 = idx
        elif r4 > report.condition4_max_ratio:
            report.condition4_max_ratio, report.worst_condition4 = r4, idx
    return report
