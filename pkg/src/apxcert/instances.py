"""Problem instances, evaluators and the plain-text instance formats.

Every instance type is an immutable value object validated on construction.
Variables are 1-indexed (DIMACS convention), vertices are 0-indexed.

Text formats (whitespace-delimited ASCII, ``c``/``#`` comment lines ignored)::

    p cnf <n> <m>               DIMACS CNF, clauses terminated by 0
    graph <V> <E>               then E lines ``u v multiplicity weight``
                                and optional ``label v <literal>`` lines
    setcover <n> <k>            then k lines ``cost <c>: e1 e2 ...``
    network <V> <E> <K>         then E lines ``u v capacity`` and
                                K lines ``commodity s t``
    metric <N>                  then N rows of N distances
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence, Union

Number = Union[int, Fraction, float]
Assignment = tuple  # tuple[bool, ...]; index i-1 holds variable i
Partition = tuple  # tuple[int, ...]; 0 = side S, 1 = side T


class InstanceError(ValueError):
    """Invalid instance data or malformed instance text."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def _as_rational(x) -> Fraction:
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**12) if not x.is_integer() else Fraction(int(x))
    return Fraction(x)


# --------------------------------------------------------------------------
# CNF formulas
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple
    max_clause_width: int | None = None

    def __post_init__(self):
        clauses = tuple(tuple(int(l) for l in c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        if self.num_vars < 1:
            raise InstanceError(f"num_vars must be positive, got {self.num_vars}")
        longest = max((len(c) for c in clauses), default=1)
        if self.max_clause_width is None:
            object.__setattr__(self, "max_clause_width", longest)
        elif self.max_clause_width < 1:
            raise InstanceError("max_clause_width must be positive")
        for j, clause in enumerate(clauses):
            check_clause(clause, self.num_vars, self.max_clause_width, where=f"clause {j}")

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def num_literal_occurrences(self) -> int:
        return sum(len(c) for c in self.clauses)

    def occurrences(self) -> list[int]:
        """Occurrence count per variable (index 0 unused)."""
        occ = [0] * (self.num_vars + 1)
        for clause in self.clauses:
            for lit in clause:
                occ[abs(lit)] += 1
        return occ


def check_clause(clause: Sequence[int], num_vars: int, width: int, where: str = "clause",
                 line: int | None = None) -> None:
    if not clause:
        raise InstanceError(f"{where} is empty", line)
    if len(clause) > width:
        raise InstanceError(f"{where} has width {len(clause)} > {width}", line)
    seen = set()
    for lit in clause:
        v = abs(lit)
        if lit == 0 or v > num_vars:
            raise InstanceError(f"{where} references variable {lit} outside [1, {num_vars}]", line)
        if v in seen:
            raise InstanceError(f"{where} contains duplicated variable {v}", line)
        seen.add(v)


def _literal_value(lit: int, a: Sequence[bool]) -> bool:
    val = bool(a[abs(lit) - 1])
    return val if lit > 0 else not val


def _check_assignment(formula: CnfFormula, a: Sequence[bool]) -> None:
    if len(a) != formula.num_vars:
        raise InstanceError(
            f"assignment has length {len(a)}, formula has {formula.num_vars} variables")


def count_satisfied(formula: CnfFormula, a: Sequence[bool]) -> int:
    _check_assignment(formula, a)
    return sum(1 for c in formula.clauses if any(_literal_value(l, a) for l in c))


def count_nae_satisfied(formula: CnfFormula, a: Sequence[bool]) -> int:
    """Clauses whose literals are not all equal under ``a``."""
    _check_assignment(formula, a)
    total = 0
    for c in formula.clauses:
        if len(c) < 2:
            raise InstanceError("not-all-equal semantics needs clauses of width >= 2")
        vals = {_literal_value(l, a) for l in c}
        total += len(vals) == 2
    return total


def complement(bits: Sequence) -> tuple:
    if bits and isinstance(bits[0], bool):
        return tuple(not b for b in bits)
    return tuple(1 - int(b) for b in bits)


# --------------------------------------------------------------------------
# Multigraphs
# --------------------------------------------------------------------------


class Edge(NamedTuple):
    u: int
    v: int
    multiplicity: int = 1
    weight: Fraction = Fraction(1)


@dataclass(frozen=True)
class MultiGraph:
    num_vertices: int
    edges: tuple = ()
    labels: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        edges = tuple(Edge(int(e[0]), int(e[1]),
                           int(e[2]) if len(e) > 2 else 1,
                           _as_rational(e[3]) if len(e) > 3 else Fraction(1))
                      for e in self.edges)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "labels", dict(self.labels))
        if self.num_vertices < 0:
            raise InstanceError("num_vertices must be nonnegative")
        for e in edges:
            _check_edge(e, self.num_vertices)
        for v in self.labels:
            if not 0 <= v < self.num_vertices:
                raise InstanceError(f"label on unknown vertex {v}")

    def total_mass(self) -> Fraction:
        """Sum of multiplicity x weight over all edges."""
        return sum((e.multiplicity * e.weight for e in self.edges), Fraction(0))


def _check_edge(e: Edge, n: int, line: int | None = None) -> None:
    if not (0 <= e.u < n and 0 <= e.v < n):
        raise InstanceError(f"edge ({e.u}, {e.v}) references a vertex outside [0, {n})", line)
    if e.u == e.v:
        raise InstanceError(f"self-loop at vertex {e.u}", line)
    if e.multiplicity < 1:
        raise InstanceError("edge multiplicity must be >= 1", line)
    if e.weight <= 0:
        raise InstanceError("edge weight must be positive", line)


def cut_weight(g: MultiGraph, p: Sequence[int]) -> Fraction:
    if len(p) != g.num_vertices:
        raise InstanceError(f"partition has length {len(p)}, graph has {g.num_vertices} vertices")
    return sum((e.multiplicity * e.weight for e in g.edges if p[e.u] != p[e.v]), Fraction(0))


def is_vertex_cover(g: MultiGraph, cover: Iterable[int]) -> bool:
    s = set(cover)
    return all(e.u in s or e.v in s for e in g.edges)


# --------------------------------------------------------------------------
# Set cover
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SetCoverInstance:
    universe_size: int
    sets: tuple
    costs: tuple

    def __post_init__(self):
        sets = tuple(frozenset(int(x) for x in s) for s in self.sets)
        costs = tuple(_as_rational(c) for c in self.costs)
        object.__setattr__(self, "sets", sets)
        object.__setattr__(self, "costs", costs)
        n = self.universe_size
        if n < 1:
            raise InstanceError("universe_size must be positive")
        if len(sets) != len(costs):
            raise InstanceError("one cost per set is required")
        for j, (s, c) in enumerate(zip(sets, costs)):
            if not s:
                raise InstanceError(f"set {j} is empty")
            if min(s) < 1 or max(s) > n:
                raise InstanceError(f"set {j} has elements outside [1, {n}]")
            if c <= 0:
                raise InstanceError(f"set {j} has non-positive cost")
        if frozenset().union(*sets) != frozenset(range(1, n + 1)):
            raise InstanceError("the sets do not cover the universe")

    def cost_of(self, chosen: Iterable[int]) -> Fraction:
        return sum((self.costs[j] for j in set(chosen)), Fraction(0))

    def covers(self, chosen: Iterable[int]) -> bool:
        covered = frozenset().union(*(self.sets[j] for j in chosen)) if chosen else frozenset()
        return len(covered) == self.universe_size


def harmonic(n: int) -> Fraction:
    return sum((Fraction(1, i) for i in range(1, n + 1)), Fraction(0))


# --------------------------------------------------------------------------
# Flow networks
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class FlowNetwork:
    """Directed network with integer capacities and (source, sink) commodities.

    Parallel directed edges are not allowed so a path is identified by its
    vertex sequence.
    """

    num_vertices: int
    edges: tuple
    commodities: tuple

    def __post_init__(self):
        edges = tuple((int(u), int(v), int(c)) for u, v, c in self.edges)
        commodities = tuple((int(s), int(t)) for s, t in self.commodities)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "commodities", commodities)
        n = self.num_vertices
        seen = set()
        for u, v, c in edges:
            _check_network_edge(u, v, c, n)
            if (u, v) in seen:
                raise InstanceError(f"parallel edge {u}->{v}")
            seen.add((u, v))
        for s, t in commodities:
            if not (0 <= s < n and 0 <= t < n) or s == t:
                raise InstanceError(f"invalid commodity ({s}, {t})")
            if not self.reachable(s, t):
                raise InstanceError(f"commodity ({s}, {t}) has no directed path")

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def out_edges(self) -> list[list[int]]:
        out = [[] for _ in range(self.num_vertices)]
        for idx, (u, _, _) in enumerate(self.edges):
            out[u].append(idx)
        return out

    def reachable(self, s: int, t: int) -> bool:
        out = self.out_edges()
        stack, seen = [s], {s}
        while stack:
            u = stack.pop()
            if u == t:
                return True
            for idx in out[u]:
                w = self.edges[idx][1]
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return False

    def edge_index(self) -> dict[tuple[int, int], int]:
        return {(u, v): i for i, (u, v, _) in enumerate(self.edges)}

    def simple_paths(self, s: int, t: int, limit: int | None = None) -> list[tuple[int, ...]]:
        """All simple directed s-t paths in lexicographic vertex order."""
        succ = [sorted(self.edges[i][1] for i in idxs) for idxs in self.out_edges()]
        paths: list[tuple[int, ...]] = []
        path, on_path = [s], {s}

        def dfs(u):
            if u == t:
                paths.append(tuple(path))
                if limit is not None and len(paths) > limit:
                    raise OverflowError
                return
            for w in succ[u]:
                if w not in on_path:
                    path.append(w)
                    on_path.add(w)
                    dfs(w)
                    on_path.discard(w)
                    path.pop()

        dfs(s)
        return paths


def _check_network_edge(u, v, c, n, line=None):
    if not (0 <= u < n and 0 <= v < n):
        raise InstanceError(f"edge {u}->{v} references a vertex outside [0, {n})", line)
    if u == v:
        raise InstanceError(f"self-loop at vertex {u}", line)
    if c < 1:
        raise InstanceError(f"capacity must be >= 1, got {c}", line)


def path_edges(net: FlowNetwork, path: Sequence[int]) -> list[int]:
    index = net.edge_index()
    return [index[(a, b)] for a, b in zip(path, path[1:])]


def congestion(net: FlowNetwork, paths: Sequence[Sequence[int]]) -> Fraction:
    """max over edges of load / capacity for one path per commodity."""
    load = [0] * net.num_edges
    for p in paths:
        for e in path_edges(net, p):
            load[e] += 1
    return max((Fraction(l, c) for l, (_, _, c) in zip(load, net.edges)), default=Fraction(0))


@dataclass(frozen=True)
class FractionalFlow:
    """Per-commodity edge flows; ``values[i][e]`` is the flow of commodity i on edge e."""

    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values",
                           tuple(tuple(Fraction(x) for x in row) for row in self.values))

    def commodity(self, i: int) -> tuple:
        return self.values[i]

    def replace(self, i: int, row: Sequence[Fraction]) -> "FractionalFlow":
        vals = list(self.values)
        vals[i] = tuple(row)
        return FractionalFlow(tuple(vals))


def net_outflow(net: FlowNetwork, row: Sequence[Fraction]) -> list[Fraction]:
    bal = [Fraction(0)] * net.num_vertices
    for (u, v, _), x in zip(net.edges, row):
        bal[u] += x
        bal[v] -= x
    return bal


def check_unit_flow(net: FlowNetwork, row: Sequence[Fraction], s: int, t: int) -> None:
    """Raise unless ``row`` is a nonnegative conserving flow of value exactly 1."""
    if len(row) != net.num_edges:
        raise InstanceError("flow vector length does not match the edge count")
    if any(x < 0 for x in row):
        raise InstanceError("negative flow value")
    bal = net_outflow(net, row)
    for v, b in enumerate(bal):
        want = 1 if v == s else -1 if v == t else 0
        if b != want:
            raise InstanceError(f"flow conservation violated at vertex {v}: net out-flow {b}")


@dataclass(frozen=True)
class PathDistribution:
    entries: tuple  # tuple[(path, probability)]

    def total_probability(self) -> Fraction:
        return sum((p for _, p in self.entries), Fraction(0))

    def edge_marginals(self, net: FlowNetwork) -> list[Fraction]:
        marg = [Fraction(0)] * net.num_edges
        for path, p in self.entries:
            for e in path_edges(net, path):
                marg[e] += p
        return marg


# --------------------------------------------------------------------------
# Metric instances
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class MetricInstance:
    num_points: int
    dist: tuple
    tol: float = 1e-9

    def __post_init__(self):
        d = tuple(tuple(x for x in row) for row in self.dist)
        object.__setattr__(self, "dist", d)
        n = self.num_points
        if len(d) != n or any(len(row) != n for row in d):
            raise InstanceError("distance matrix must be num_points x num_points")
        for i in range(n):
            if d[i][i] != 0:
                raise InstanceError(f"nonzero diagonal at {i}")
            for j in range(n):
                if d[i][j] < 0:
                    raise InstanceError(f"negative distance at ({i}, {j})")
                if d[i][j] != d[j][i]:
                    raise InstanceError(f"asymmetric distance at ({i}, {j})")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if d[i][k] > d[i][j] + d[j][k] + self.tol:
                        raise InstanceError(f"triangle inequality fails for ({i}, {j}, {k})")

    @classmethod
    def from_points(cls, points: Sequence[tuple[float, float]]) -> "MetricInstance":
        n = len(points)
        d = [[0.0 if i == j else math.dist(points[i], points[j]) for j in range(n)]
             for i in range(n)]
        return cls(n, d)

    def tour_length(self, tour: Sequence[int]):
        """Length of the closed tour visiting ``tour`` in order."""
        if sorted(tour) != list(range(self.num_points)):
            raise InstanceError("tour must visit every point exactly once")
        return sum(self.dist[tour[i - 1]][tour[i]] for i in range(len(tour)))


# --------------------------------------------------------------------------
# Text formats
# --------------------------------------------------------------------------


def _content_lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] in "c#%" and not line.startswith("cost") \
                and not line.startswith("commodity"):
            continue
        yield no, line.split()


def _int(tok: str, line: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise InstanceError(f"expected an integer, got {tok!r}", line) from None


def _number(tok: str, line: int) -> Number:
    try:
        if any(ch in tok for ch in ".eEn"):
            return float(tok)
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise InstanceError(f"expected a number, got {tok!r}", line) from None


def _fmt(x) -> str:
    if isinstance(x, float):
        return repr(x)
    return str(x)


def parse_dimacs_cnf(text: str) -> CnfFormula:
    header = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    current_line = None
    for no, toks in _content_lines(text):
        if toks[0] == "p":
            if header is not None:
                raise InstanceError("duplicate problem line", no)
            if len(toks) != 4 or toks[1] != "cnf":
                raise InstanceError("malformed header, expected 'p cnf <n> <m>'", no)
            n, m = _int(toks[2], no), _int(toks[3], no)
            if n < 1 or m < 0:
                raise InstanceError("malformed header counts", no)
            header = (n, m)
            continue
        if header is None:
            raise InstanceError("clause before 'p cnf' header", no)
        for tok in toks:
            lit = _int(tok, no)
            if current_line is None:
                current_line = no
            if lit == 0:
                if not current:
                    raise InstanceError("empty clause", no)
                check_clause(current, header[0], len(current), line=current_line)
                clauses.append(tuple(current))
                current, current_line = [], None
            else:
                if abs(lit) > header[0]:
                    raise InstanceError(f"literal {lit} exceeds declared variable count", no)
                current.append(lit)
    if header is None:
        raise InstanceError("missing 'p cnf' header")
    if current:
        raise InstanceError("last clause is not terminated by 0", current_line)
    if len(clauses) != header[1]:
        raise InstanceError(f"header declares {header[1]} clauses, found {len(clauses)}")
    return CnfFormula(header[0], tuple(clauses))


def serialize_dimacs_cnf(formula: CnfFormula) -> str:
    out = [f"p cnf {formula.num_vars} {formula.num_clauses}"]
    out += [" ".join(map(str, c)) + " 0" for c in formula.clauses]
    return "\n".join(out) + "\n"


def parse_multigraph(text: str) -> MultiGraph:
    lines = list(_content_lines(text))
    if not lines or lines[0][1][0] != "graph" or len(lines[0][1]) != 3:
        raise InstanceError("expected header 'graph <V> <E>'", lines[0][0] if lines else None)
    no, toks = lines[0]
    n, m = _int(toks[1], no), _int(toks[2], no)
    edges, labels = [], {}
    for no, toks in lines[1:]:
        if toks[0] == "label":
            if len(toks) != 3:
                raise InstanceError("expected 'label <v> <literal>'", no)
            v = _int(toks[1], no)
            if not 0 <= v < n:
                raise InstanceError(f"label on unknown vertex {v}", no)
            labels[v] = _int(toks[2], no)
            continue
        if len(toks) != 4:
            raise InstanceError("expected 'u v multiplicity weight'", no)
        e = Edge(_int(toks[0], no), _int(toks[1], no), _int(toks[2], no),
                 _as_rational(_number(toks[3], no)))
        _check_edge(e, n, no)
        edges.append(e)
    if len(edges) != m:
        raise InstanceError(f"header declares {m} edges, found {len(edges)}")
    return MultiGraph(n, tuple(edges), labels)


def serialize_multigraph(g: MultiGraph) -> str:
    out = [f"graph {g.num_vertices} {len(g.edges)}"]
    out += [f"{e.u} {e.v} {e.multiplicity} {e.weight}" for e in g.edges]
    out += [f"label {v} {lit}" for v, lit in sorted(g.labels.items())]
    return "\n".join(out) + "\n"


def parse_setcover(text: str) -> SetCoverInstance:
    lines = list(_content_lines(text))
    if not lines or lines[0][1][0] != "setcover" or len(lines[0][1]) != 3:
        raise InstanceError("expected header 'setcover <n> <k>'", lines[0][0] if lines else None)
    no, toks = lines[0]
    n, k = _int(toks[1], no), _int(toks[2], no)
    sets, costs = [], []
    for no, toks in lines[1:]:
        if toks[0] != "cost" or len(toks) < 3 or not toks[1].endswith(":"):
            raise InstanceError("expected 'cost <c>: e1 e2 ...'", no)
        c = _as_rational(_number(toks[1][:-1], no))
        elems = [_int(t, no) for t in toks[2:]]
        if c <= 0:
            raise InstanceError("cost must be positive", no)
        if any(not 1 <= x <= n for x in elems):
            raise InstanceError(f"element outside [1, {n}]", no)
        costs.append(c)
        sets.append(frozenset(elems))
    if len(sets) != k:
        raise InstanceError(f"header declares {k} sets, found {len(sets)}")
    return SetCoverInstance(n, tuple(sets), tuple(costs))


def serialize_setcover(inst: SetCoverInstance) -> str:
    out = [f"setcover {inst.universe_size} {len(inst.sets)}"]
    out += [f"cost {c}: " + " ".join(map(str, sorted(s))) for s, c in zip(inst.sets, inst.costs)]
    return "\n".join(out) + "\n"


def parse_network(text: str) -> FlowNetwork:
    lines = list(_content_lines(text))
    if not lines or lines[0][1][0] != "network" or len(lines[0][1]) != 4:
        raise InstanceError("expected header 'network <V> <E> <K>'",
                            lines[0][0] if lines else None)
    no, toks = lines[0]
    n, m, k = (_int(t, no) for t in toks[1:])
    edges, commodities = [], []
    for no, toks in lines[1:]:
        if toks[0] == "commodity":
            if len(toks) != 3:
                raise InstanceError("expected 'commodity s t'", no)
            commodities.append((_int(toks[1], no), _int(toks[2], no)))
            continue
        if len(toks) != 3:
            raise InstanceError("expected 'u v capacity'", no)
        u, v, c = (_int(t, no) for t in toks)
        _check_network_edge(u, v, c, n, no)
        edges.append((u, v, c))
    if len(edges) != m:
        raise InstanceError(f"header declares {m} edges, found {len(edges)}")
    if len(commodities) != k:
        raise InstanceError(f"header declares {k} commodities, found {len(commodities)}")
    return FlowNetwork(n, tuple(edges), tuple(commodities))


def serialize_network(net: FlowNetwork) -> str:
    out = [f"network {net.num_vertices} {net.num_edges} {len(net.commodities)}"]
    out += [f"{u} {v} {c}" for u, v, c in net.edges]
    out += [f"commodity {s} {t}" for s, t in net.commodities]
    return "\n".join(out) + "\n"


def parse_metric(text: str) -> MetricInstance:
    lines = list(_content_lines(text))
    if not lines or lines[0][1][0] != "metric" or len(lines[0][1]) != 2:
        raise InstanceError("expected header 'metric <N>'", lines[0][0] if lines else None)
    no, toks = lines[0]
    n = _int(toks[1], no)
    rows = []
    for no, toks in lines[1:]:
        if len(toks) != n:
            raise InstanceError(f"expected {n} distances", no)
        rows.append(tuple(_number(t, no) for t in toks))
    if len(rows) != n:
        raise InstanceError(f"header declares {n} rows, found {len(rows)}")
    return MetricInstance(n, tuple(rows))


def serialize_metric(metric: MetricInstance) -> str:
    out = [f"metric {metric.num_points}"]
    out += [" ".join(_fmt(x) for x in row) for row in metric.dist]
    return "\n".join(out) + "\n"


PARSERS = {
    "cnf": parse_dimacs_cnf,
    "graph": parse_multigraph,
    "setcover": parse_setcover,
    "network": parse_network,
    "metric": parse_metric,
}

SERIALIZERS = {
    CnfFormula: serialize_dimacs_cnf,
    MultiGraph: serialize_multigraph,
    SetCoverInstance: serialize_setcover,
    FlowNetwork: serialize_network,
    MetricInstance: serialize_metric,
}


def serialize(instance) -> str:
    return SERIALIZERS[type(instance)](instance)


def parse_any(text: str):
    """Parse an instance, dispatching on its header keyword."""
    for _, toks in _content_lines(text):
        key = "cnf" if toks[0] == "p" else toks[0]
        if key not in PARSERS:
            raise InstanceError(f"unknown instance header {toks[0]!r}")
        return PARSERS[key](text)
    raise InstanceError("empty instance text")
