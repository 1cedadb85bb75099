"""Shared strategies and deliberately naive reference solvers.

The reference solvers use itertools directly and share no code with the
kernels, so they serve as an independent check on the frozen values.
"""

import itertools
from fractions import Fraction

from hypothesis import strategies as st

from apxcert.instances import CnfFormula, MultiGraph, count_nae_satisfied, count_satisfied, cut_weight


def naive_maxsat(phi, nae=False):
    count = count_nae_satisfied if nae else count_satisfied
    return max(count(phi, a) for a in itertools.product((False, True), repeat=phi.num_vars))


def naive_maxcut(g):
    if g.num_vertices == 0:
        return Fraction(0)
    return max(cut_weight(g, p) for p in itertools.product((0, 1), repeat=g.num_vertices))


def naive_vertexcover(g):
    for size in range(g.num_vertices + 1):
        for s in itertools.combinations(range(g.num_vertices), size):
            if all(e.u in s or e.v in s for e in g.edges):
                return size


@st.composite
def cnf_formulas(draw, max_vars=6, max_clauses=8, widths=(1, 2, 3)):
    n = draw(st.integers(min(widths), max_vars))
    ws = [w for w in widths if w <= n]
    clauses = []
    for _ in range(draw(st.integers(0, max_clauses))):
        w = draw(st.sampled_from(ws))
        vs = draw(st.lists(st.integers(1, n), min_size=w, max_size=w, unique=True))
        signs = draw(st.lists(st.booleans(), min_size=w, max_size=w))
        clauses.append(tuple(v if s else -v for v, s in zip(vs, signs)))
    return CnfFormula(n, tuple(clauses))


@st.composite
def exact_width_cnf(draw, width, max_vars=6, max_clauses=6, min_clauses=1):
    n = draw(st.integers(width, max_vars))
    clauses = []
    for _ in range(draw(st.integers(min_clauses, max_clauses))):
        vs = draw(st.lists(st.integers(1, n), min_size=width, max_size=width, unique=True))
        signs = draw(st.lists(st.booleans(), min_size=width, max_size=width))
        clauses.append(tuple(v if s else -v for v, s in zip(vs, signs)))
    return CnfFormula(n, tuple(clauses), width)


@st.composite
def multigraphs(draw, max_vertices=7, max_edges=10, weighted=False):
    n = draw(st.integers(2, max_vertices))
    edges = []
    for _ in range(draw(st.integers(0, max_edges))):
        u, v = draw(st.lists(st.integers(0, n - 1), min_size=2, max_size=2, unique=True))
        mult = draw(st.integers(1, 3))
        w = Fraction(draw(st.integers(1, 6)), draw(st.integers(1, 3))) if weighted else Fraction(1)
        edges.append((u, v, mult, w))
    return MultiGraph(n, tuple(edges))


def random_lp(rng, max_vars=6, max_rows=8):
    """Small feasible LP with box bounds (so the region is bounded) and mixed row senses.

    Right-hand sides are built around a random integer point inside the box,
    so that point is always feasible.
    """
    from apxcert.lp import LpProblem

    n = int(rng.integers(1, max_vars + 1))
    k = int(rng.integers(1, max_rows + 1))
    upper = rng.integers(1, 5, size=n)
    x0 = rng.integers(0, upper + 1)
    rows = []
    for _ in range(k):
        a = rng.integers(-3, 4, size=n)
        rel = str(rng.choice(["<=", ">=", "="], p=[0.45, 0.45, 0.1]))
        slack = int(rng.integers(0, 3))
        b = int(a @ x0) + {"<=": slack, ">=": -slack, "=": 0}[rel]
        rows.append(([float(x) for x in a], rel, float(b)))
    c = [float(x) for x in rng.integers(-5, 6, size=n)]
    return LpProblem(c, rows, [(0.0, float(u)) for u in upper])
