import math
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings

from apxcert.approx import (RoundingParams, max3sat_two_assignments, maxcut_derandomized,
                            maxcut_random, rounding_rounds, setcover_greedy,
                            setcover_lp_rounding, tsp_christofides, tsp_double_tree,
                            vertexcover_matching)
from apxcert.harness import CorpusSpec, generate
from apxcert.instances import (CnfFormula, MetricInstance, MultiGraph, SetCoverInstance,
                               count_satisfied, cut_weight, harmonic, is_vertex_cover)
from apxcert.oracles import opt_maxcut, opt_maxsat, opt_setcover, opt_tsp, opt_vertexcover

from conftest import cnf_formulas, multigraphs

TRIANGLE = MultiGraph(3, ((0, 1), (1, 2), (0, 2)))
SQUARE = MetricInstance.from_points([(0, 0), (1, 0), (1, 1), (0, 1)])
LINE = MetricInstance(3, ((0, 1, 2), (1, 0, 1), (2, 1, 0)))
THREE_SETS = SetCoverInstance(3, ({1, 2}, {2, 3}, {1, 3}), (1, 1, 1))


# max3sat_two_assignments

def test_two_assignments_unit_clause():
    out = max3sat_two_assignments(CnfFormula(1, ((1,),)))
    assert out.value == 1 and out.guarantee == 2


def test_two_assignments_tight_case():
    phi = CnfFormula(3, ((1, 2, 3), (-1, -2, -3)))
    out = max3sat_two_assignments(phi)
    assert out.value == 1 and opt_maxsat(phi).value == 2


@settings(max_examples=80)
@given(cnf_formulas(max_vars=6, max_clauses=30))
def test_two_assignments_half_bound(phi):
    out = max3sat_two_assignments(phi)
    ones, zeros = (True,) * phi.num_vars, (False,) * phi.num_vars
    assert count_satisfied(phi, ones) + count_satisfied(phi, zeros) >= phi.num_clauses
    assert out.value >= math.ceil(phi.num_clauses / 2)
    assert count_satisfied(phi, out.witness) == out.value


# vertex cover

@pytest.mark.parametrize("g, size, opt", [
    (MultiGraph(2, ((0, 1),)), 2, 1),
    (MultiGraph(3, ((0, 1), (1, 2))), 2, 1),
    (TRIANGLE, 2, 2),
])
def test_vertexcover_examples(g, size, opt):
    out = vertexcover_matching(g)
    assert out.value == size and opt_vertexcover(g).value == opt


@settings(max_examples=60)
@given(multigraphs(max_vertices=8))
def test_vertexcover_properties(g):
    out = vertexcover_matching(g)
    assert is_vertex_cover(g, out.witness)
    assert out.value % 2 == 0
    assert out.value <= 2 * opt_vertexcover(g).value


# max-cut

def test_maxcut_random_single_edge_mean():
    out = maxcut_random(MultiGraph(2, ((0, 1),)), trials=4000, seed=3)
    mean = sum(out.details["trial_values"]) / 4000
    assert abs(float(mean) - 0.5) < 0.05


def test_maxcut_random_triangle_expectation_by_enumeration():
    # every partition is equally likely; average over all 8 is exactly 3/2
    values = [cut_weight(TRIANGLE, p) for p in product((0, 1), repeat=3)]
    assert sum(values, Fraction(0)) / 8 == Fraction(3, 2)
    assert maxcut_random(TRIANGLE, trials=50, seed=0).value == 2


def test_maxcut_random_empty_graph_and_errors():
    assert maxcut_random(MultiGraph(3, ()), trials=3).value == 0
    with pytest.raises(ValueError):
        maxcut_random(TRIANGLE, trials=0)


def test_maxcut_random_is_seeded():
    g = generate(CorpusSpec("graph", n=8, m=12, count=1))[0]
    a = maxcut_random(g, 20, seed=5)
    b = maxcut_random(g, 20, seed=5)
    assert a.details["trial_values"] == b.details["trial_values"]


@pytest.mark.parametrize("g, value", [
    (MultiGraph(2, ((0, 1),)), 1),
    (TRIANGLE, 2),
    (MultiGraph(5, tuple((u, v) for u in range(2) for v in range(2, 5))), 6),
])
def test_maxcut_derandomized_examples(g, value):
    out = maxcut_derandomized(g)
    assert out.value == value == cut_weight(g, out.witness)


def test_maxcut_derandomized_triangle_trace():
    # vertex 0 -> S (tie), vertex 1 -> T, vertex 2 ties -> S
    assert maxcut_derandomized(TRIANGLE).witness == (0, 1, 0)


def test_maxcut_derandomized_bipartite_is_optimal():
    g = MultiGraph(5, tuple((u, v) for u in range(2) for v in range(2, 5)))
    assert maxcut_derandomized(g).value == opt_maxcut(g).value


@settings(max_examples=80)
@given(multigraphs(max_vertices=9, max_edges=16, weighted=True))
def test_maxcut_derandomized_half_mass(g):
    assert 2 * maxcut_derandomized(g).value >= g.total_mass()


# set cover

def test_greedy_examples():
    whole = SetCoverInstance(3, ({1, 2, 3}, {1}), (1, 1))
    assert setcover_greedy(whole).witness == (0,)
    assert setcover_greedy(THREE_SETS).value == 2 == opt_setcover(THREE_SETS).value
    halves = SetCoverInstance(4, ({1, 2, 3, 4}, {1, 2}, {3, 4}),
                              (Fraction(11, 10), Fraction(1, 2), Fraction(1, 2)))
    out = setcover_greedy(halves)
    assert out.value == 1 == opt_setcover(halves).value
    assert out.witness == (1, 2)


def test_greedy_harmonic_bound_on_corpus():
    for inst in generate(CorpusSpec("setcover", n=8, m=8, k=4, count=25, seed=4)):
        out = setcover_greedy(inst)
        assert inst.covers(out.witness)
        assert out.value <= harmonic(inst.universe_size) * opt_setcover(inst).value


def test_rounding_universe_set_needs_no_repair():
    inst = SetCoverInstance(3, ({1, 2, 3},), (2,))
    out = setcover_lp_rounding(inst, RoundingParams(d=2, trials=1, seed=0))
    assert out.witness == (0,) and not out.details["repaired"]
    assert out.details["probabilities"] == (1.0,)


def test_rounding_three_sets_lp_expectation():
    out = setcover_lp_rounding(THREE_SETS, RoundingParams(d=2, trials=5, seed=1))
    assert out.details["lp_value"] == pytest.approx(1.5)
    assert sum(out.details["probabilities"]) == pytest.approx(1.5)
    assert THREE_SETS.covers(out.witness)
    assert out.details["rounds"] == rounding_rounds(3, 2) == math.ceil(2 * math.log(4))


def test_rounding_degenerate_single_element():
    inst = SetCoverInstance(1, ({1},), (Fraction(7, 3),))
    assert setcover_lp_rounding(inst).value == Fraction(7, 3)


def test_rounding_always_covers():
    for inst in generate(CorpusSpec("setcover", n=7, m=6, k=3, count=20, seed=9)):
        out = setcover_lp_rounding(inst, RoundingParams(d=1, trials=3, seed=2))
        assert inst.covers(out.witness)
        assert out.value == inst.cost_of(out.witness)
        assert out.value >= opt_setcover(inst).value


def test_rounding_params_validation():
    with pytest.raises(ValueError):
        RoundingParams(d=0)
    with pytest.raises(ValueError):
        RoundingParams(trials=0)
    with pytest.raises(ValueError):
        RoundingParams(seed=-1)


# TSP

@pytest.mark.parametrize("algo", [tsp_double_tree, tsp_christofides])
def test_tsp_small_examples(algo):
    tri = MetricInstance.from_points([(0, 0), (3, 0), (0, 4)])
    assert algo(tri).value == pytest.approx(12)
    assert algo(SQUARE).value == pytest.approx(4)
    assert algo(LINE).value == 4


@pytest.mark.parametrize("algo", [tsp_double_tree, tsp_christofides])
def test_tsp_needs_three_points(algo):
    with pytest.raises(ValueError):
        algo(MetricInstance(2, ((0, 1), (1, 0))))


def test_tsp_bounds_on_random_points():
    for metric in generate(CorpusSpec("metric", n=10, count=10, seed=11)):
        opt = opt_tsp(metric).value
        dt, ch = tsp_double_tree(metric), tsp_christofides(metric)
        assert sorted(dt.witness) == sorted(ch.witness) == list(range(10))
        assert dt.value <= 2 * opt + 1e-9
        assert ch.value <= 1.5 * opt + 1e-9
        assert len(ch.details["odd_vertices"]) % 2 == 0


def test_christofides_odd_limit():
    metric = generate(CorpusSpec("metric", n=12, count=1, seed=0))[0]
    with pytest.raises(ValueError):
        tsp_christofides(metric, max_odd=0)
