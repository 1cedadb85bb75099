"""Exact brute-force solvers used as ground truth.

Each oracle returns an :class:`OptResult` whose witness re-evaluates to the
reported value.  Ties between optimal witnesses go to the lexicographically
smallest bit-vector encoding (see :mod:`apxcert._kernels_py`).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np

from . import kernels
from .instances import (CnfFormula, FlowNetwork, MetricInstance, MultiGraph,
                        SetCoverInstance, path_edges)


class OracleLimitError(ValueError):
    """Instance is too large for exhaustive enumeration."""


@dataclass(frozen=True)
class OptResult:
    value: Any
    witness: Any


def encode_bits(bits) -> int:
    code = 0
    for b in bits:
        code = code << 1 | int(bool(b))
    return code


def decode_bits(code: int, nbits: int) -> tuple[bool, ...]:
    return tuple(bool(code >> (nbits - 1 - i) & 1) for i in range(nbits))


def sat_masks(formula: CnfFormula) -> tuple[list[int], list[int]]:
    """Per-clause (positive, negative) literal masks; variable v is bit n - v."""
    n = formula.num_vars
    pos, neg = [], []
    for clause in formula.clauses:
        p = q = 0
        for lit in clause:
            bit = 1 << (n - abs(lit))
            if lit > 0:
                p |= bit
            else:
                q |= bit
        pos.append(p)
        neg.append(q)
    return pos, neg


def _check_limit(size: int, limit: int, what: str) -> None:
    if size > limit:
        raise OracleLimitError(f"{what} = {size} exceeds the enumeration limit {limit}")


def opt_maxsat(formula: CnfFormula, limit: int = 24) -> OptResult:
    _check_limit(formula.num_vars, limit, "num_vars")
    pos, neg = sat_masks(formula)
    best, code = kernels.sat_best(pos, neg, formula.num_vars, False)
    return OptResult(best, decode_bits(code, formula.num_vars))


def opt_nae3sat(formula: CnfFormula, limit: int = 24) -> OptResult:
    _check_limit(formula.num_vars, limit, "num_vars")
    if any(len(c) < 2 for c in formula.clauses):
        raise ValueError("not-all-equal semantics needs clauses of width >= 2")
    pos, neg = sat_masks(formula)
    best, code = kernels.sat_best(pos, neg, formula.num_vars, True)
    return OptResult(best, decode_bits(code, formula.num_vars))


def scaled_edge_weights(g: MultiGraph) -> tuple[list[int], int]:
    """Integer edge masses and the common scale they were multiplied by."""
    scale = math.lcm(*(e.weight.denominator for e in g.edges)) if g.edges else 1
    return [int(e.multiplicity * e.weight * scale) for e in g.edges], scale


def opt_maxcut(g: MultiGraph, limit: int = 20) -> OptResult:
    """Maximum cut; vertex 0 is pinned to side 0 by complement symmetry."""
    _check_limit(g.num_vertices, limit, "num_vertices")
    n = g.num_vertices
    if n == 0:
        return OptResult(Fraction(0), ())
    ws, scale = scaled_edge_weights(g)
    best, code = kernels.cut_best([e.u for e in g.edges], [e.v for e in g.edges], ws, n)
    return OptResult(Fraction(best, scale), tuple(int(b) for b in decode_bits(code, n)))


def opt_vertexcover(g: MultiGraph, limit: int = 24) -> OptResult:
    _check_limit(g.num_vertices, limit, "num_vertices")
    n = g.num_vertices
    if not g.edges:
        return OptResult(0, ())
    size, code = kernels.vc_best([e.u for e in g.edges], [e.v for e in g.edges], n)
    bits = decode_bits(code, n)
    return OptResult(size, tuple(v for v in range(n) if bits[v]))


def opt_setcover(inst: SetCoverInstance, limit: int = 24) -> OptResult:
    k = len(inst.sets)
    _check_limit(k, limit, "number of sets")
    _check_limit(inst.universe_size, 64, "universe_size")
    masks = [sum(1 << (x - 1) for x in s) for s in inst.sets]
    scale = math.lcm(*(c.denominator for c in inst.costs))
    costs = [int(c * scale) for c in inst.costs]
    best, code = kernels.setcover_best(masks, costs, (1 << inst.universe_size) - 1)
    bits = decode_bits(code, k)
    return OptResult(Fraction(best, scale), tuple(j for j in range(k) if bits[j]))


def opt_tsp(metric: MetricInstance, limit: int = 15) -> OptResult:
    """Shortest closed tour (Held-Karp); the tour starts at point 0."""
    _check_limit(metric.num_points, limit, "num_points")
    _, tour = kernels.held_karp(metric.dist)
    return OptResult(metric.tour_length(tour), tuple(tour))


def opt_congestion(net: FlowNetwork, path_limit: int = 10**4,
                   product_limit: int = 10**6) -> OptResult:
    """Minimum congestion over all tuples of simple paths, one per commodity."""
    all_paths = []
    for s, t in net.commodities:
        try:
            all_paths.append(net.simple_paths(s, t, limit=path_limit))
        except OverflowError:
            raise OracleLimitError(f"commodity ({s}, {t}) has more than {path_limit} paths") from None
    if math.prod(len(p) for p in all_paths) > product_limit:
        raise OracleLimitError(f"path-tuple count exceeds {product_limit}")
    if not all_paths:
        return OptResult(Fraction(0), ())
    m = net.num_edges
    rows, offsets = [], [0]
    for paths in all_paths:
        for p in paths:
            row = np.zeros(m, dtype=np.int64)
            row[path_edges(net, p)] = 1
            rows.append(row)
        offsets.append(len(rows))
    scale = math.lcm(*(c for _, _, c in net.edges))
    weights = [scale // c for _, _, c in net.edges]
    best, choice = kernels.congestion_best(np.array(rows), offsets, weights)
    witness = tuple(all_paths[i][j] for i, j in enumerate(choice))
    return OptResult(Fraction(best, scale), witness)


def opt_lp_vertices(problem, tol: float = 1e-7) -> OptResult:
    """LP optimum by enumerating every vertex of the feasible region.

    Independent of the simplex code path: every choice of ``n`` linearly
    independent rows among the constraints and finite bounds is solved as a
    square system and kept if the point is feasible.  Assumes the feasible
    region is bounded; returns ``OptResult(None, None)`` when it is empty.
    """
    c = np.asarray(problem.objective, dtype=float)
    n = len(c)
    rows, rhs, sense = [], [], []
    for coeffs, rel, b in problem.constraints:
        rows.append(np.asarray(coeffs, dtype=float))
        rhs.append(float(b))
        sense.append({"<=": 1, ">=": -1, "=": 0}[rel])
    for j, (lo, hi) in enumerate(problem.bounds):
        unit = np.zeros(n)
        unit[j] = 1.0
        rows.append(unit)
        rhs.append(float(lo))
        sense.append(-1)
        if hi is not None and hi != math.inf:
            rows.append(unit)
            rhs.append(float(hi))
            sense.append(1)
    A_all, b_all, s_all = np.array(rows), np.array(rhs), np.array(sense)
    combos = np.array(list(itertools.combinations(range(len(rows)), n)), dtype=np.intp)
    A = A_all[combos]
    b = b_all[combos]
    ok = np.abs(np.linalg.det(A)) > 1e-10
    if not ok.any():
        return OptResult(None, None)
    X = np.linalg.solve(A[ok], b[ok][..., None])[..., 0]
    lhs = X @ A_all.T
    slack = lhs - b_all
    feasible = np.all(np.where(s_all == 1, slack <= tol,
                               np.where(s_all == -1, slack >= -tol, np.abs(slack) <= tol)), axis=1)
    if not feasible.any():
        return OptResult(None, None)
    vals = X[feasible] @ c
    i = int(np.argmin(vals))
    return OptResult(float(vals[i]), tuple(float(v) for v in X[feasible][i]))
