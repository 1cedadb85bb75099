"""Acceptance criteria, one test each.  Every test prints a single PASS/FAIL line."""

import math
import subprocess
import sys
import time
from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from apxcert.approx import (RoundingParams, congestion_round, max3sat_two_assignments,
                            maxcut_derandomized, maxcut_random, path_decompose,
                            setcover_greedy, solve_fractional_routing, tsp_christofides,
                            tsp_double_tree, vertexcover_matching)
from apxcert.harness import CorpusSpec, generate
from apxcert.instances import CnfFormula, count_nae_satisfied, count_satisfied, harmonic
from apxcert.lp import certificate, solve_lp
from apxcert.oracles import (opt_maxcut, opt_maxsat, opt_nae3sat, opt_setcover, opt_tsp,
                             opt_vertexcover, opt_lp_vertices)
from apxcert.reductions import (MAXCUT, MAXNAESAT, MAXSAT, NAE3SAT_TO_MAXCUT,
                                THREESAT_TO_TWOSAT, TWOSAT_TO_NAE3SAT, compose_ptas,
                                exact_scheme, gadget_clauses, reduce_2sat_to_nae3sat,
                                reduce_3sat_to_2sat, reduce_nae3sat_to_maxcut,
                                verify_lreduction)

from conftest import random_lp


@pytest.fixture
def verdict(capsys):
    def emit(name, ok, detail=""):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'}  {name}: {detail}")
        assert ok, detail
    return emit


def _all_clauses(vars_, width):
    return [tuple(s * v for s, v in zip(signs, vars_)) for signs in product((1, -1), repeat=width)]


def test_gadget_truth_table(verdict):
    start = time.perf_counter()
    gadget = CnfFormula(4, tuple(gadget_clauses(1, 2, 3, 4)))
    ok = True
    for a in product((False, True), repeat=3):
        best = max(count_satisfied(gadget, a + (v,)) for v in (False, True))
        ok &= best == (7 if any(a) else 6)
    elapsed = time.perf_counter() - start
    verdict("gadget truth table", ok and elapsed < 1.0,
            f"8 assignments x 2 values of v, max = 6 + [clause satisfied]; {elapsed:.3f}s")


def test_reduction_identities(verdict):
    start = time.perf_counter()
    c3 = generate(CorpusSpec("cnf", n=6, m=6, k=3, count=200, seed=101))
    c2 = generate(CorpusSpec("cnf", n=8, m=12, k=2, count=200, seed=102))
    cn = generate(CorpusSpec("cnf", n=6, m=6, k=3, count=200, seed=103))
    bad = [0, 0, 0]
    for phi in c3:
        bad[0] += opt_maxsat(reduce_3sat_to_2sat(phi).instance).value != \
            6 * phi.num_clauses + opt_maxsat(phi).value
    for phi in c2:
        bad[1] += opt_nae3sat(reduce_2sat_to_nae3sat(phi).instance).value != opt_maxsat(phi).value
    for phi in cn:
        bad[2] += opt_maxcut(reduce_nae3sat_to_maxcut(phi).instance).value != \
            2 * phi.num_literal_occurrences() + 2 * opt_nae3sat(phi).value
    elapsed = time.perf_counter() - start
    verdict("exact reduction identities", bad == [0, 0, 0] and elapsed < 60,
            f"mismatches (3sat->2sat, 2sat->nae, nae->cut) = {bad} over 3 x 200; {elapsed:.1f}s")


def _small_3cnf_corpus():
    singles = [CnfFormula(3, (c,)) for c in _all_clauses((1, 2, 3), 3)]
    pairs = [CnfFormula(4, (c, d)) for c in _all_clauses((1, 2, 3), 3)
             for d in _all_clauses((2, 3, 4), 3)]
    randoms = generate(CorpusSpec("cnf", n=6, m=8, k=3, count=40, seed=7))
    return singles + pairs + randoms


def _small_2cnf_corpus():
    clauses = [c for vs in ((1, 2), (1, 3), (2, 3)) for c in _all_clauses(vs, 2)]
    pairs = [CnfFormula(3, (c, d)) for c in clauses for d in clauses]
    randoms = generate(CorpusSpec("cnf", n=6, m=8, k=2, count=40, seed=8))
    return pairs + randoms


def test_lreduction_verifier(verdict):
    r32 = verify_lreduction(THREESAT_TO_TWOSAT, _small_3cnf_corpus())
    r2n = verify_lreduction(TWOSAT_TO_NAE3SAT, _small_2cnf_corpus())
    nae = _small_3cnf_corpus()[:72] + generate(CorpusSpec("cnf", n=6, m=6, k=3, count=40, seed=9))
    rnc = verify_lreduction(NAE3SAT_TO_MAXCUT, nae)
    ok = (r32.condition3_pass and r32.condition4_pass and r32.exhaustive and
          r2n.condition3_pass and r2n.condition4_pass and r2n.exhaustive and
          not rnc.identity_violations and not r32.identity_violations and
          not r2n.identity_violations and not (r32.skipped or r2n.skipped or rnc.skipped))
    verdict("L-reduction verifier", ok,
            f"3sat->2sat a={float(r32.condition3_max_ratio):.4g}<=13 b={float(r32.condition4_max_ratio):.4g}<=1; "
            f"2sat->nae a={float(r2n.condition3_max_ratio):.4g}<=1 b={float(r2n.condition4_max_ratio):.4g}<=1; "
            f"nae->cut measured a={float(rnc.condition3_max_ratio):.4g} (claimed 8, "
            f"{'holds' if rnc.condition3_pass else 'exceeded'}) "
            f"b={float(rnc.condition4_max_ratio):.4g} (claimed 2), identity violations "
            f"{len(rnc.identity_violations)}")


def test_guarantee_suite(verdict):
    start = time.perf_counter()
    v = {}
    cnf = generate(CorpusSpec("cnf", n=8, m=20, k=3, count=200, seed=201))
    v["two-assignment"] = sum(opt_maxsat(x).value > 2 * max3sat_two_assignments(x).value for x in cnf)
    graphs = [g for seed, n in ((202, 8), (203, 12)) for g in
              generate(CorpusSpec("graph", n=n, m=2 * n, k=2, count=100, seed=seed))]
    v["vertex-cover"] = sum(vertexcover_matching(g).value > 2 * opt_vertexcover(g).value for g in graphs)
    v["derandomized-cut"] = sum(2 * maxcut_derandomized(g).value < g.total_mass() for g in graphs)
    sc = [x for seed, n in ((204, 6), (205, 10)) for x in
          generate(CorpusSpec("setcover", n=n, m=10, k=5, count=100, seed=seed))]
    v["greedy-setcover"] = sum(setcover_greedy(x).value > harmonic(x.universe_size) * opt_setcover(x).value
                               for x in sc)
    metrics = [x for seed, n in ((206, 7), (207, 12)) for x in
               generate(CorpusSpec("metric", n=n, count=100, seed=seed))]
    opts = [opt_tsp(x).value for x in metrics]
    v["double-tree"] = sum(tsp_double_tree(x).value > 2 * o * (1 + 1e-9) for x, o in zip(metrics, opts))
    v["christofides"] = sum(tsp_christofides(x).value > 1.5 * o * (1 + 1e-9) for x, o in zip(metrics, opts))
    elapsed = time.perf_counter() - start
    verdict("guarantee suite", not any(v.values()) and elapsed < 300,
            f"violations {v} over 200 instances each; {elapsed:.1f}s")


def test_random_maxcut_expectation(verdict):
    trials = 10_000
    worst = 0.0
    for i, g in enumerate(generate(CorpusSpec("graph", n=10, m=20, k=3, count=10, seed=301))):
        vals = np.array([float(x) for x in maxcut_random(g, trials, seed=1000 * i).details["trial_values"]])
        se = vals.std(ddof=1) / math.sqrt(trials)
        worst = max(worst, abs(vals.mean() - float(g.total_mass()) / 2) / se)
    verdict("randomized max-cut expectation", worst <= 3,
            f"largest |mean - mass/2| = {worst:.2f} standard errors over 10 graphs x {trials} trials")


def test_path_decomposition_exact(verdict):
    flows = bad = 0
    max_paths_ok = True
    seed = 400
    while flows < 100:
        for net in generate(CorpusSpec("network", n=10, m=24, k=6, count=5, seed=seed)):
            flow, _ = solve_fractional_routing(net)
            for i in range(len(net.commodities)):
                d = path_decompose(net, flow, i)
                bad += d.total_probability() != 1
                bad += tuple(d.edge_marginals(net)) != flow.commodity(i)
                max_paths_ok &= len(d.entries) <= net.num_edges
                flows += 1
        seed += 1
    verdict("path decomposition exactness", bad == 0 and max_paths_ok,
            f"{flows} LP-derived flows, {bad} exactness failures, path count <= m: {max_paths_ok}")


def test_congestion_pipeline(verdict):
    start = time.perf_counter()
    corpus = []
    for seed, (n, m, k) in enumerate([(10, 25, 4), (15, 40, 6), (20, 50, 8), (25, 60, 9), (30, 70, 10)]):
        corpus += generate(CorpusSpec("network", n=n, m=m, k=k, count=10, seed=500 + seed, capacity=2))
    below = ok = total = 0
    for idx, net in enumerate(corpus):
        out = congestion_round(net, RoundingParams(trials=100, seed=idx))
        r = out.details["lp_bound"]
        cs = out.details["trial_congestions"]
        below += sum(float(c) < r - 1e-6 for c in cs)
        ok += sum(float(c) <= out.details["alpha"] * r + 1e-9 for c in cs)
        total += len(cs)
    elapsed = time.perf_counter() - start
    frac = ok / total
    verdict("congestion pipeline", below == 0 and frac >= 0.5 and elapsed < 300,
            f"{len(corpus)} networks x 100 trials: {below} trials below r_LP, "
            f"pooled success fraction {frac:.4f}; {elapsed:.1f}s")


def test_lp_solver(verdict):
    worst_gap = worst_err = 0.0
    failures = 0
    for seed in range(100):
        p = random_lp(np.random.default_rng(7000 + seed))
        sol = solve_lp(p)
        ref = opt_lp_vertices(p)
        if sol.status != "optimal" or ref.value is None:
            failures += 1
            continue
        worst_err = max(worst_err, abs(sol.objective_value - ref.value))
        worst_gap = max(worst_gap, certificate(p, sol)["duality_gap"])
    verdict("LP solver", failures == 0 and worst_err <= 1e-6 and worst_gap <= 1e-6,
            f"100 LPs: {failures} failures, max |obj - enumeration| = {worst_err:.2e}, "
            f"max duality gap = {worst_gap:.2e}")


def test_ptas_composition(verdict):
    cases = [
        (THREESAT_TO_TWOSAT, MAXSAT, _small_3cnf_corpus(), count_satisfied, opt_maxsat),
        (TWOSAT_TO_NAE3SAT, MAXNAESAT, _small_2cnf_corpus(), count_satisfied, opt_maxsat),
        (NAE3SAT_TO_MAXCUT, MAXCUT, _small_3cnf_corpus()[:72], count_nae_satisfied, opt_nae3sat),
    ]
    mismatches = 0
    for red, target, corpus, value, oracle in cases:
        scheme = compose_ptas(red, exact_scheme(target), Fraction(1, 2))
        mismatches += sum(value(x, scheme(x)) != oracle(x).value for x in corpus)
    delta = compose_ptas(THREESAT_TO_TWOSAT, exact_scheme(MAXSAT), Fraction(13, 100)).delta
    verdict("PTAS composition", mismatches == 0 and delta == Fraction(1, 100),
            f"{mismatches} non-optimal results; delta(13, 1, 0.13) = {delta}")


CLI_RUNS = [
    ["bench", "maxcut-random", "--corpus-spec", "problem=graph,n=8,m=12,count=5", "--trials", "7"],
    ["bench", "setcover-lp-rounding", "--corpus-spec", "n=6,m=6,count=5", "--d", "3"],
    ["verify", "nae3sat-to-maxcut", "--corpus-spec", "n=9,m=4,count=2"],
    ["congestion-experiment", "--corpus-spec", "n=10,m=22,k=4,count=3", "--format", "csv"],
]


def test_cli_determinism(verdict):
    mismatched = []
    for argv in CLI_RUNS:
        cmd = [sys.executable, "-m", "apxcert.harness.cli", "--seed", "12345", *argv]
        a = subprocess.run(cmd, capture_output=True)
        b = subprocess.run(cmd, capture_output=True)
        if a.stdout != b.stdout or a.returncode != b.returncode or not a.stdout:
            mismatched.append(argv[0])
    verdict("CLI determinism", not mismatched,
            f"{len(CLI_RUNS)} invocations run twice; differing: {mismatched or 'none'}")
