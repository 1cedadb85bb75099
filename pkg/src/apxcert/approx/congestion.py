"""Congestion minimisation by LP relaxation and randomized path rounding.

Pipeline: solve the fractional routing LP, convert each commodity's flow to
exact rationals, cancel flow cycles, decompose into a distribution over
paths, then sample one path per commodity.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..instances import (FlowNetwork, FractionalFlow, InstanceError, PathDistribution,
                         check_unit_flow, congestion)
from ..lp import LpProblem, solve_lp
from .base import ApproxOutcome, RoundingParams, trial_rng

MAX_DENOMINATOR = 10**6
PATH_ROUNDING = 2**20


class DecompositionError(ValueError):
    pass


def alpha(num_edges: int) -> float:
    """2 ln(2m) / ln ln(2m); infinite when ln ln(2m) <= 0 (m = 1)."""
    x = 2 * num_edges
    ll = math.log(math.log(x)) if x > 1 else -1.0
    return 2 * math.log(x) / ll if ll > 0 else math.inf


def build_congestion_lp(net: FlowNetwork) -> LpProblem:
    """Variables x[i*m + e] for commodity i on edge e, then r; minimise r.

    Conservation rows are written for every vertex except the sink (implied).
    """
    m, k = net.num_edges, len(net.commodities)
    nv = k * m + 1
    rows = []
    for i, (s, t) in enumerate(net.commodities):
        for v in range(net.num_vertices):
            if v == t:
                continue
            a = [0.0] * nv
            for e, (u, w, _) in enumerate(net.edges):
                if u == v:
                    a[i * m + e] += 1.0
                if w == v:
                    a[i * m + e] -= 1.0
            rows.append((a, "=", 1.0 if v == s else 0.0))
    for e, (_, _, c) in enumerate(net.edges):
        a = [0.0] * nv
        for i in range(k):
            a[i * m + e] = 1.0
        a[-1] = -float(c)
        rows.append((a, "<=", 0.0))
    objective = [0.0] * (k * m) + [1.0]
    return LpProblem(objective, rows, [(0.0, None)] * nv)


def split_lp_values(net: FlowNetwork, values: Sequence[float]) -> tuple[np.ndarray, float]:
    m, k = net.num_edges, len(net.commodities)
    x = np.asarray(values[: k * m], dtype=float).reshape(k, m)
    return x, float(values[k * m])


def _positive_succ(net, row):
    succ = [[] for _ in range(net.num_vertices)]
    for e, (u, v, _) in enumerate(net.edges):
        if row[e] > 0:
            succ[u].append((v, e))
    for lst in succ:
        lst.sort()
    return succ


def _find_cycle(net, row):
    """Edge indices of a directed cycle with positive flow, or None."""
    succ = _positive_succ(net, row)
    color = [0] * net.num_vertices  # 0 new, 1 on the DFS stack, 2 finished
    for root in range(net.num_vertices):
        if color[root]:
            continue
        stack, nxt, via, pos = [root], [0], [None], {root: 0}
        color[root] = 1
        while stack:
            v = stack[-1]
            if nxt[-1] < len(succ[v]):
                w, e = succ[v][nxt[-1]]
                nxt[-1] += 1
                if color[w] == 1:
                    return via[pos[w] + 1:] + [e]
                if color[w] == 0:
                    color[w] = 1
                    pos[w] = len(stack)
                    stack.append(w)
                    nxt.append(0)
                    via.append(e)
            else:
                color[v] = 2
                stack.pop()
                nxt.pop()
                via.pop()
                del pos[v]
    return None


def make_acyclic(flow: FractionalFlow, net: FlowNetwork) -> FractionalFlow:
    """Cancel positive-flow cycles: subtract the cycle minimum along each one."""
    out = flow
    for i in range(len(flow.values)):
        row = list(flow.commodity(i))
        changed = False
        while (cycle := _find_cycle(net, row)) is not None:
            delta = min(row[e] for e in cycle)
            for e in cycle:
                row[e] -= delta
            changed = True
        if changed:
            out = out.replace(i, row)
    return out


def _smallest_path(net, row, s, t):
    """Lexicographically smallest s-t vertex sequence over positive-flow edges."""
    succ = _positive_succ(net, row)
    dead = set()

    def dfs(v, path):
        if v == t:
            return path
        for w, _ in succ[v]:
            if w in dead or w in path:
                continue
            found = dfs(w, path + [w])
            if found:
                return found
        dead.add(v)
        return None

    return dfs(s, [s])


def path_decompose(net: FlowNetwork, flow: FractionalFlow, i: int) -> PathDistribution:
    """Decompose commodity i's acyclic unit flow into a path distribution.

    Repeatedly takes the lexicographically smallest positive-flow s-t path,
    gives it probability equal to its bottleneck flow and subtracts that
    amount along the path.  Arithmetic is exact, so probabilities sum to 1
    and every edge's path mass equals its flow.
    """
    s, t = net.commodities[i]
    row = list(flow.commodity(i))
    try:
        check_unit_flow(net, row, s, t)
    except InstanceError as exc:
        raise DecompositionError(f"commodity {i}: {exc}") from None
    if _find_cycle(net, row) is not None:
        raise DecompositionError(f"commodity {i}: flow has a positive cycle")
    index = net.edge_index()
    entries = []
    while (path := _smallest_path(net, row, s, t)) is not None:
        edges = [index[(a, b)] for a, b in zip(path, path[1:])]
        pi = min(row[e] for e in edges)
        for e in edges:
            row[e] -= pi
        entries.append((tuple(path), pi))
        if len(entries) > net.num_edges:
            raise DecompositionError("more paths than edges; flow is not acyclic")
    if any(x != 0 for x in row):
        raise DecompositionError("flow left over after decomposition")
    return PathDistribution(tuple(entries))


def _round_through_paths(net, xrow, s, t):
    """Exact unit flow close to ``xrow``: peel float paths, round their weights."""
    row = [float(v) if v > 1e-12 else 0.0 for v in xrow]
    index = net.edge_index()
    paths, weights = [], []
    while True:
        pos = [v if v > 1e-9 else 0.0 for v in row]
        path = _smallest_path(net, pos, s, t)
        if path is None:
            break
        edges = [index[(a, b)] for a, b in zip(path, path[1:])]
        w = min(row[e] for e in edges)
        for e in edges:
            row[e] -= w
        paths.append(edges)
        weights.append(w)
    total = sum(weights)
    ticks = [round(w / total * PATH_ROUNDING) for w in weights]
    ticks[-1] += PATH_ROUNDING - sum(ticks)
    exact = [Fraction(0)] * net.num_edges
    for edges, tk in zip(paths, ticks):
        for e in edges:
            exact[e] += Fraction(tk, PATH_ROUNDING)
    return exact


def rationalize_flow(net: FlowNetwork, x: np.ndarray) -> FractionalFlow:
    """Exact rational unit flows from the LP's floating-point flows.

    Values are first snapped to nearby fractions with bounded denominator; if
    that breaks exact conservation the flow is rebuilt from rounded path
    weights instead.
    """
    rows = []
    for i, (s, t) in enumerate(net.commodities):
        snapped = [Fraction(float(v)).limit_denominator(MAX_DENOMINATOR) if v > 1e-9 else Fraction(0)
                   for v in x[i]]
        try:
            check_unit_flow(net, snapped, s, t)
        except InstanceError:
            snapped = _round_through_paths(net, x[i], s, t)
            check_unit_flow(net, snapped, s, t)
        rows.append(tuple(snapped))
    return FractionalFlow(tuple(rows))


def solve_fractional_routing(net: FlowNetwork) -> tuple[FractionalFlow, float]:
    """LP optimum r and an exact, acyclic version of its flows."""
    sol = solve_lp(build_congestion_lp(net))
    if sol.status != "optimal":
        raise ArithmeticError(f"congestion LP returned {sol.status}")
    x, r = split_lp_values(net, sol.values)
    flow = make_acyclic(rationalize_flow(net, x), net)
    return flow, r


def sample_path(dist: PathDistribution, rng: np.random.Generator) -> tuple[int, ...]:
    u = rng.random()
    acc = 0.0
    for path, p in dist.entries:
        acc += float(p)
        if u < acc:
            return path
    return dist.entries[-1][0]


def congestion_round(net: FlowNetwork, params: RoundingParams = RoundingParams()) -> ApproxOutcome:
    """Full rounding pipeline; returns the least congested of ``params.trials`` samples."""
    flow, r = solve_fractional_routing(net)
    dists = [path_decompose(net, flow, i) for i in range(len(net.commodities))]
    a = alpha(net.num_edges)
    best, best_paths, trial_values = None, None, []
    for t in range(params.trials):
        rng = trial_rng(params.seed, t)
        paths = tuple(sample_path(d, rng) for d in dists)
        val = congestion(net, paths)
        trial_values.append(val)
        if best is None or val < best:
            best, best_paths = val, paths
    successes = sum(1 for v in trial_values if v <= a * r + 1e-9)
    return ApproxOutcome(best, best_paths, a, {
        "lp_bound": r,
        "alpha": a,
        "trial_congestions": trial_values,
        "success_fraction": successes / len(trial_values),
        "distributions": dists,
        "flow": flow,
    })
