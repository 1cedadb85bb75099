"""Deterministic random corpora.

Every generator draws from a single PCG64 stream seeded with ``spec.seed``, so
equal specs give equal corpora.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, fields, replace
from fractions import Fraction

import numpy as np

from ..instances import (CnfFormula, FlowNetwork, InstanceError, MetricInstance, MultiGraph,
                         SetCoverInstance)

PROBLEMS = ("cnf", "graph", "metric", "setcover", "network")
ALIASES = {"width": "k", "commodities": "k", "instances": "count"}


@dataclass(frozen=True)
class CorpusSpec:
    """Size parameters for a random corpus.

    The meaning of ``n``, ``m`` and ``k`` depends on the problem:

    ========  ===============  ==============  ===================
    problem   n                m               k
    ========  ===============  ==============  ===================
    cnf       variables        clauses         clause width
    graph     vertices         distinct edges  max multiplicity
    metric    points           (unused)        (unused)
    setcover  universe size    sets            max cost
    network   vertices         directed edges  commodities
    ========  ===============  ==============  ===================
    """

    problem: str = "cnf"
    n: int = 6
    m: int = 6
    k: int = 3
    count: int = 10
    seed: int = 0
    capacity: int = 1  # networks: capacities drawn from 1..capacity

    def __post_init__(self):
        if self.problem not in PROBLEMS:
            raise ValueError(f"unknown corpus problem {self.problem!r}; expected one of {PROBLEMS}")
        for name in ("n", "m", "k", "count", "capacity"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")

    @staticmethod
    def parse_items(text: str) -> dict:
        """Keys and values from ``problem=cnf,n=5,...`` or a JSON file path."""
        text = text.strip()
        if "=" in text or not text:
            items = {}
            for part in filter(None, (p.strip() for p in text.split(","))):
                key, _, value = part.partition("=")
                items[key.strip()] = value.strip()
        else:
            with open(text) as fh:
                items = json.load(fh)
        items = {ALIASES.get(k, k): v for k, v in items.items()}
        unknown = set(items) - {f.name for f in fields(CorpusSpec)}
        if unknown:
            raise ValueError(f"unknown corpus-spec keys: {sorted(unknown)}")
        return {k: (v if k == "problem" else int(v)) for k, v in items.items()}

    @classmethod
    def parse(cls, text: str, **defaults) -> "CorpusSpec":
        """Parse ``text``; keys it leaves out come from ``defaults``."""
        return cls(**{**defaults, **cls.parse_items(text)})

    def rng(self) -> np.random.Generator:
        return np.random.Generator(np.random.PCG64(self.seed))


def gen_random_cnf(spec: CorpusSpec) -> list[CnfFormula]:
    """Clauses of exactly ``spec.k`` distinct variables with random signs."""
    if spec.k > spec.n:
        raise ValueError(f"clause width {spec.k} exceeds the {spec.n} variables")
    rng = spec.rng()
    out = []
    for _ in range(spec.count):
        clauses = []
        for _ in range(spec.m):
            vs = np.sort(rng.choice(spec.n, size=spec.k, replace=False)) + 1
            signs = rng.integers(0, 2, size=spec.k)
            clauses.append(tuple(int(v) if s else -int(v) for v, s in zip(vs, signs)))
        out.append(CnfFormula(spec.n, tuple(clauses), spec.k))
    return out


def gen_random_graph(spec: CorpusSpec) -> list[MultiGraph]:
    """``m`` distinct vertex pairs, multiplicities uniform in 1..k, unit weights."""
    pairs = [(u, v) for u in range(spec.n) for v in range(u + 1, spec.n)]
    if spec.m > len(pairs):
        raise ValueError(f"{spec.m} edges requested but only {len(pairs)} vertex pairs exist")
    rng = spec.rng()
    out = []
    for _ in range(spec.count):
        idx = np.sort(rng.choice(len(pairs), size=spec.m, replace=False))
        mult = rng.integers(1, spec.k + 1, size=spec.m)
        out.append(MultiGraph(spec.n, tuple((*pairs[i], int(c)) for i, c in zip(idx, mult))))
    return out


def gen_random_metric(spec: CorpusSpec) -> list[MetricInstance]:
    """Euclidean distances between ``n`` uniform points in the unit square."""
    rng = spec.rng()
    return [MetricInstance.from_points([tuple(p) for p in rng.random((spec.n, 2)).tolist()])
            for _ in range(spec.count)]


def gen_random_setcover(spec: CorpusSpec) -> list[SetCoverInstance]:
    """Each element is planted in one random set (so the family covers), plus noise.

    Every other (element, set) incidence is added with probability 0.3 and
    integer costs are uniform in 1..k.
    """
    rng = spec.rng()
    n, m = spec.n, spec.m
    out = []
    for _ in range(spec.count):
        member = rng.random((m, n)) < 0.3
        member[rng.integers(0, m, size=n), np.arange(n)] = True
        for j in np.nonzero(~member.any(axis=1))[0]:
            member[j, rng.integers(0, n)] = True
        sets = tuple(frozenset(int(e) + 1 for e in np.nonzero(row)[0]) for row in member)
        costs = tuple(Fraction(int(c)) for c in rng.integers(1, spec.k + 1, size=m))
        out.append(SetCoverInstance(n, sets, costs))
    return out


def gen_random_network(spec: CorpusSpec, max_attempts: int = 1000) -> list[FlowNetwork]:
    """Random directed graphs; commodities are resampled until their sink is reachable."""
    n, m = spec.n, spec.m
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    if m > len(pairs):
        raise ValueError(f"{m} edges requested but only {len(pairs)} ordered pairs exist")
    if n < 2:
        raise ValueError("networks need at least 2 vertices")
    rng = spec.rng()
    out = []
    for _ in range(spec.count):
        for _ in range(max_attempts):
            idx = np.sort(rng.choice(len(pairs), size=m, replace=False))
            caps = rng.integers(1, spec.capacity + 1, size=m)
            edges = tuple((*pairs[i], int(c)) for i, c in zip(idx, caps))
            probe = FlowNetwork(n, edges, ())
            commodities = []
            for _ in range(max_attempts):
                s, t = (int(x) for x in rng.choice(n, size=2, replace=False))
                if probe.reachable(s, t):
                    commodities.append((s, t))
                    if len(commodities) == spec.k:
                        break
            if len(commodities) == spec.k:
                out.append(FlowNetwork(n, edges, tuple(commodities)))
                break
        else:
            raise InstanceError("could not generate a routable network; add edges")
    return out


GENERATORS = {
    "cnf": gen_random_cnf,
    "graph": gen_random_graph,
    "metric": gen_random_metric,
    "setcover": gen_random_setcover,
    "network": gen_random_network,
}


def generate(spec: CorpusSpec) -> list:
    return GENERATORS[spec.problem](spec)


def with_seed(spec: CorpusSpec, seed: int) -> CorpusSpec:
    return replace(spec, seed=seed)
