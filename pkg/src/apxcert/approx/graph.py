"""Vertex cover and max-cut approximations on multigraphs."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..instances import MultiGraph, cut_weight
from ..oracles import scaled_edge_weights
from .base import ApproxOutcome, trial_rng


def vertexcover_matching(g: MultiGraph) -> ApproxOutcome:
    """Both endpoints of a maximal matching built greedily in edge order."""
    matched: set[int] = set()
    for e in g.edges:
        if e.u not in matched and e.v not in matched:
            matched.update((e.u, e.v))
    return ApproxOutcome(len(matched), tuple(sorted(matched)), 2)


def maxcut_random(g: MultiGraph, trials: int, seed: int = 0) -> ApproxOutcome:
    """Best of ``trials`` uniformly random partitions.

    ``details["trial_values"]`` holds every trial's cut weight; a single trial
    has expectation half the total edge mass.  The ratio 2 holds only in
    expectation, so no deterministic guarantee is declared.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    n = g.num_vertices
    ws, scale = scaled_edge_weights(g)
    us = np.array([e.u for e in g.edges], dtype=np.intp)
    vs = np.array([e.v for e in g.edges], dtype=np.intp)
    w = np.array(ws, dtype=np.int64)
    best, best_side, values = None, None, []
    for t in range(trials):
        side = trial_rng(seed, t).integers(0, 2, size=n)
        val = int(w[side[us] != side[vs]].sum()) if len(w) else 0
        values.append(Fraction(val, scale))
        if best is None or val > best:
            best, best_side = val, tuple(int(s) for s in side)
    return ApproxOutcome(Fraction(best, scale), best_side, None, {"trial_values": values})


def maxcut_derandomized(g: MultiGraph) -> ApproxOutcome:
    """Method of conditional expectations over vertices in index order.

    With the remaining vertices still uniformly random, each undecided edge
    contributes half its mass in expectation, so placing vertex v only has to
    compare the mass it would cut towards already placed neighbours.  Ties go
    to side S (0).
    """
    n = g.num_vertices
    adj: list[list[tuple[int, Fraction]]] = [[] for _ in range(n)]
    for e in g.edges:
        mass = e.multiplicity * e.weight
        adj[e.u].append((e.v, mass))
        adj[e.v].append((e.u, mass))
    side = [-1] * n
    for v in range(n):
        to_s = sum((m for u, m in adj[v] if side[u] == 0), Fraction(0))
        to_t = sum((m for u, m in adj[v] if side[u] == 1), Fraction(0))
        # joining T cuts the edges towards S and vice versa
        side[v] = 1 if to_s > to_t else 0
    p = tuple(side)
    return ApproxOutcome(cut_weight(g, p), p, 2)
