import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from apxcert.instances import (CnfFormula, FlowNetwork, MetricInstance, MultiGraph,
                               SetCoverInstance, congestion, count_nae_satisfied,
                               count_satisfied, cut_weight, is_vertex_cover)
from apxcert.oracles import (OracleLimitError, decode_bits, encode_bits, opt_congestion,
                             opt_maxcut, opt_maxsat, opt_nae3sat, opt_setcover, opt_tsp,
                             opt_vertexcover)
from apxcert.reductions import reduce_nae3sat_to_maxcut

from conftest import cnf_formulas, multigraphs, naive_maxcut, naive_maxsat, naive_vertexcover

TRIANGLE = MultiGraph(3, ((0, 1), (1, 2), (0, 2)))
DIAMOND = FlowNetwork(4, ((0, 1, 1), (0, 2, 1), (1, 3, 1), (2, 3, 1)), ((0, 3), (0, 3)))


def test_bits_round_trip():
    assert encode_bits((True, False, True)) == 0b101
    assert decode_bits(0b101, 3) == (True, False, True)


@pytest.mark.parametrize("clauses, nvars, expected", [
    (((1,),), 1, 1),
    (((1, 2, 3), (-1, -2, -3)), 3, 2),
    (((1,), (-1,)), 1, 1),
])
def test_opt_maxsat_examples(clauses, nvars, expected):
    phi = CnfFormula(nvars, clauses)
    res = opt_maxsat(phi)
    assert res.value == expected == naive_maxsat(phi)
    assert count_satisfied(phi, res.witness) == res.value


@pytest.mark.parametrize("clauses, nvars, expected", [
    (((1, 2, 3),), 3, 1),
    (((1, 2), (-1, -2)), 2, 2),
    (((1, 2, 3), (-1, -2, -3)), 3, 2),
])
def test_opt_nae_examples(clauses, nvars, expected):
    phi = CnfFormula(nvars, clauses)
    res = opt_nae3sat(phi)
    assert res.value == expected == naive_maxsat(phi, nae=True)
    assert count_nae_satisfied(phi, res.witness) == res.value


def test_opt_maxsat_lexicographic_witness():
    # all-false is the smallest encoding; it satisfies the single negative clause
    assert opt_maxsat(CnfFormula(2, ((-1, -2),))).witness == (False, False)


def test_opt_maxcut_examples():
    assert opt_maxcut(MultiGraph(2, ((0, 1),))).value == 1
    assert opt_maxcut(TRIANGLE).value == 2
    fig = reduce_nae3sat_to_maxcut(CnfFormula(4, ((1, 2, 3), (-1, 2, 4)))).instance
    res = opt_maxcut(fig)
    assert res.value == 16 == naive_maxcut(fig)
    assert res.witness[0] == 0 and cut_weight(fig, res.witness) == 16


def test_opt_setcover_examples():
    assert opt_setcover(SetCoverInstance(3, ({1, 2, 3},), (5,))).value == 5
    assert opt_setcover(SetCoverInstance(3, ({1, 2}, {2, 3}, {1, 3}), (1, 1, 1))).value == 2
    res = opt_setcover(SetCoverInstance(2, ({1}, {2}, {1, 2}), (1, 1, Fraction(3, 2))))
    assert res.value == Fraction(3, 2) and res.witness == (2,)


def test_opt_vertexcover_examples():
    assert opt_vertexcover(MultiGraph(2, ((0, 1),))).value == 1
    assert opt_vertexcover(TRIANGLE).value == 2
    res = opt_vertexcover(MultiGraph(3, ((0, 1), (1, 2))))
    assert res.value == 1 and res.witness == (1,)


def test_opt_tsp_examples():
    tri = MetricInstance.from_points([(0, 0), (3, 0), (0, 4)])
    assert opt_tsp(tri).value == pytest.approx(12)
    square = MetricInstance.from_points([(0, 0), (1, 0), (1, 1), (0, 1)])
    assert opt_tsp(square).value == pytest.approx(4)
    line = MetricInstance(3, ((0, 1, 2), (1, 0, 1), (2, 1, 0)))
    assert opt_tsp(line).value == 4


def test_opt_congestion_examples():
    one = FlowNetwork(3, ((0, 1, 1), (1, 2, 1)), ((0, 2),))
    assert opt_congestion(one).value == 1
    shared = FlowNetwork(2, ((0, 1, 1),), ((0, 1), (0, 1)))
    assert opt_congestion(shared).value == 2
    res = opt_congestion(DIAMOND)
    assert res.value == 1 and congestion(DIAMOND, res.witness) == 1


def test_limits_raise():
    with pytest.raises(OracleLimitError):
        opt_maxsat(CnfFormula(30, ((1,),)))
    with pytest.raises(OracleLimitError):
        opt_maxcut(MultiGraph(21, ((0, 1),)))
    with pytest.raises(OracleLimitError):
        opt_tsp(MetricInstance.from_points([(i, 0) for i in range(16)]))


@settings(max_examples=60)
@given(cnf_formulas(max_vars=7))
def test_maxsat_matches_naive_and_half_bound(phi):
    res = opt_maxsat(phi)
    assert res.value == naive_maxsat(phi)
    assert count_satisfied(phi, res.witness) == res.value
    assert res.value >= math.ceil(phi.num_clauses / 2)


@settings(max_examples=60)
@given(multigraphs(weighted=True))
def test_maxcut_matches_naive(g):
    res = opt_maxcut(g)
    assert res.value == naive_maxcut(g)
    assert cut_weight(g, res.witness) == res.value


@settings(max_examples=40)
@given(multigraphs(), st.integers(0, 6), st.integers(0, 6))
def test_maxcut_monotone_under_added_edge(g, u, v):
    u, v = u % g.num_vertices, v % g.num_vertices
    if u == v:
        return
    bigger = MultiGraph(g.num_vertices, g.edges + ((u, v),))
    assert opt_maxcut(bigger).value >= opt_maxcut(g).value


@settings(max_examples=60)
@given(multigraphs())
def test_vertexcover_matches_naive(g):
    res = opt_vertexcover(g)
    assert res.value == naive_vertexcover(g)
    assert is_vertex_cover(g, res.witness) and len(res.witness) == res.value


def test_unique_path_congestion_is_load_over_capacity():
    net = FlowNetwork(4, ((0, 1, 2), (1, 2, 1), (2, 3, 3)), ((0, 3), (1, 3), (0, 2)))
    # loads: e0 2/2, e1 3/1, e2 2/3
    assert opt_congestion(net).value == 3
