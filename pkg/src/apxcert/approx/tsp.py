"""Metric TSP: MST doubling and Christofides."""

from __future__ import annotations

from fractions import Fraction

from .. import kernels
from ..instances import MetricInstance
from .base import ApproxOutcome


def minimum_spanning_tree(metric: MetricInstance) -> list[tuple[int, int]]:
    """Kruskal with ties broken on the (i, j) edge encoding, i < j."""
    n = metric.num_points
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges = sorted((metric.dist[i][j], i, j) for i in range(n) for j in range(i + 1, n))
    tree = []
    for _, i, j in edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            tree.append((i, j))
            if len(tree) == n - 1:
                break
    return tree


def _shortcut(walk):
    seen, tour = set(), []
    for v in walk:
        if v not in seen:
            seen.add(v)
            tour.append(v)
    return tuple(tour)


def _check_size(metric):
    if metric.num_points < 3:
        raise ValueError("a tour needs at least 3 points")


def tsp_double_tree(metric: MetricInstance) -> ApproxOutcome:
    """Preorder walk of the MST from point 0, children in index order."""
    _check_size(metric)
    children = [[] for _ in range(metric.num_points)]
    for i, j in minimum_spanning_tree(metric):
        children[i].append(j)
        children[j].append(i)
    order, stack, seen = [], [0], set()
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        order.append(v)
        stack.extend(sorted((u for u in children[v] if u not in seen), reverse=True))
    tour = tuple(order)
    return ApproxOutcome(metric.tour_length(tour), tour, 2)


def euler_circuit(n: int, edges: list[tuple[int, int]], start: int = 0) -> list[int]:
    """Hierholzer on a connected multigraph with all degrees even."""
    adj = [[] for _ in range(n)]
    for k, (u, v) in enumerate(edges):
        adj[u].append((v, k))
        adj[v].append((u, k))
    for lst in adj:
        lst.sort(reverse=True)  # pop() then yields the smallest neighbour first
    used = [False] * len(edges)
    stack, circuit = [start], []
    while stack:
        v = stack[-1]
        while adj[v] and used[adj[v][-1][1]]:
            adj[v].pop()
        if adj[v]:
            u, k = adj[v].pop()
            used[k] = True
            stack.append(u)
        else:
            circuit.append(stack.pop())
    circuit.reverse()
    return circuit


def tsp_christofides(metric: MetricInstance, max_odd: int = 18) -> ApproxOutcome:
    """MST + exact minimum perfect matching on odd-degree vertices + Euler tour."""
    _check_size(metric)
    n = metric.num_points
    tree = minimum_spanning_tree(metric)
    degree = [0] * n
    for i, j in tree:
        degree[i] += 1
        degree[j] += 1
    odd = [v for v in range(n) if degree[v] % 2]
    if len(odd) > max_odd:
        raise ValueError(f"{len(odd)} odd-degree vertices exceed the matching limit {max_odd}")
    sub = [[metric.dist[a][b] for b in odd] for a in odd]
    _, pairs = kernels.min_matching(sub)
    matching = [(odd[a], odd[b]) for a, b in pairs]
    walk = euler_circuit(n, tree + matching, 0)
    tour = _shortcut(walk)
    return ApproxOutcome(metric.tour_length(tour), tour, Fraction(3, 2),
                         {"odd_vertices": tuple(odd), "matching": tuple(matching)})
