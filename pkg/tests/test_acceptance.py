"""Acceptance criteria, one test (or parametrized group) per criterion.

A PASS/FAIL line per criterion is printed in the terminal summary by
``conftest.py``.
"""

from __future__ import annotations

import time

import numpy as np
import pytest

from comaximal import oracles
from comaximal.arithmetic import euler_phi, factor_squarefree, from_primes, next_prime, squarefree_composites
from comaximal.cli import main
from comaximal.cut_experiments import (
    demonstrate_separator,
    evaluate_deletion,
    robustness_trials,
    separator_subset_trials,
)
from comaximal.explicit_graph import build_graph
from comaximal.reports import AnalysisReport, analyze, verify
from comaximal.support_model import (
    SupportSet,
    algorithm_kappa,
    cut_support,
    diameter,
    kappa,
    kappa_append_prime,
    layer_distance,
    min_degree,
    prior_upper_bound,
)

SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@pytest.mark.criterion(1, "layer sizes and divisors for n=30 (exact, < 1 s)")
def test_layer_table_n30(capsys):
    start = time.perf_counter()
    assert main(["analyze", "30", "--json"]) == 0
    report = AnalysisReport.from_json(capsys.readouterr().out)
    elapsed = time.perf_counter() - start
    assert [r.support for r in report.layers] == ["{1}", "{2}", "{3}", "{1,2}", "{1,3}", "{2,3}"]
    assert [r.size for r in report.layers] == [8, 4, 2, 4, 2, 1]
    assert [r.divisor for r in report.layers] == [2, 3, 5, 6, 10, 15]
    assert elapsed < 1.0


@pytest.mark.criterion(2, "representative degrees and sizes for n=210 (exact)")
def test_degree_table_n210():
    report = analyze(210)
    rows = {r.support: r for r in report.layers}
    listed = ["{1}", "{2}", "{3}", "{4}", "{1,2}", "{1,2,3}", "{1,2,4}"]
    assert [rows[s].degree for s in listed] == [57, 92, 120, 132, 22, 8, 12]
    assert [rows[s].size for s in listed] == [48, 24, 12, 8, 24, 6, 4]
    # the residue graph agrees vertex by vertex
    graph = build_graph(factor_squarefree(210))
    for s in listed:
        support = SupportSet.parse(s, 4)
        assert {graph.degree(x) for x in graph.layer_residues(support)} == {rows[s].degree}


CONNECTIVITY_ROWS = [
    # n, kappa, phi, diameter
    (6, 1, 2, 2),
    (30, 2, 8, 3),
    (42, 2, 12, 3),
    (70, 4, 24, 3),
    (210, 8, 48, 3),
    (2310, 48, 480, 3),
]


@pytest.mark.criterion(3, "kappa, delta, phi, prior bound and diameter for six moduli (exact)")
@pytest.mark.parametrize("n,k,phi,diam", CONNECTIVITY_ROWS)
def test_connectivity_rows(n, k, phi, diam):
    mod = factor_squarefree(n)
    assert kappa(mod) == k
    assert algorithm_kappa(mod.primes) == k
    assert min_degree(mod)[0] == k
    assert euler_phi(mod) == phi
    assert prior_upper_bound(mod) == k
    assert diameter(mod) == diam
    report = analyze(n)
    assert (report.kappa, report.delta, report.lambda_, report.phi) == (k, k, k, phi)


DISTANCE_ROWS = [
    ("1", "2", 1),
    ("1+2", "4", 1),
    ("1+2", "2+4", 2),
    ("1", "1+3", 2),
    ("1+2", "2+3+4", 3),
    ("1+3", "2+3+4", 3),
]


@pytest.mark.criterion(4, "six support-pair distances for n=210, confirmed by BFS")
def test_distance_rows_n210():
    graph = build_graph(factor_squarefree(210))
    dist = oracles.all_pairs_distances(graph.adjacency)
    observed = []
    for a, b, expected in DISTANCE_ROWS:
        s, t = SupportSet.parse(a, 4), SupportSet.parse(b, 4)
        formula = layer_distance(s, t)
        xs = [graph.index_of(x) for x in graph.layer_residues(s)]
        ys = [graph.index_of(y) for y in graph.layer_residues(t)]
        bfs = set(dist[np.ix_(xs, ys)].ravel().tolist())
        assert bfs == {formula}
        observed.append(formula)
    assert observed == [row[2] for row in DISTANCE_ROWS] == [1, 1, 2, 2, 3, 3]


@pytest.mark.criterion(5, "oracle equivalence for every squarefree composite n <= 300 (< 5 min)")
def test_oracle_equivalence_sweep():
    start = time.perf_counter()
    moduli = list(squarefree_composites(300, start=6))
    assert moduli[:6] == [6, 10, 14, 15, 21, 22]
    failures = []
    for n in moduli:
        report = verify(n, graph_cap=300, flow_cap=300)
        names = [c.name for c in report.checks]
        assert names == ["vertex_count", "blowup", "degrees", "kappa", "lambda", "delta", "distances", "metric"]
        if not report.passed:
            failures.append(report.render())
        # kappa check ran (not skipped) and compares against phi(n) / (p_m - 1)
        mod = factor_squarefree(n)
        assert report.get("kappa").status == "PASS"
        assert kappa(mod) == euler_phi(mod) // (mod.primes[-1] - 1)
    elapsed = time.perf_counter() - start
    assert not failures, "\n".join(failures)
    assert elapsed < 300


@pytest.mark.criterion(6, "n=2310: 1829 vertices, oracle kappa 48, diameter 3 (< 10 min)")
def test_large_spot_check():
    start = time.perf_counter()
    graph = build_graph(factor_squarefree(2310))
    assert len(graph) == 1829
    k, cert = oracles.vertex_connectivity_oracle(graph)
    assert k == 48
    assert cert.size == 48
    profile = oracles.eccentricity_profile(graph)
    assert profile.diameter == 3
    assert time.perf_counter() - start < 600


@pytest.mark.criterion(7, "the cut layer separates; its sampled proper subsets do not")
@pytest.mark.parametrize("n", [30, 210, 2310])
def test_separator_sharpness(n, request):
    mod = factor_squarefree(n)
    graph = request.getfixturevalue("graph_2310") if n == 2310 else build_graph(mod)
    cert = demonstrate_separator(mod, graph)
    assert cert.size == kappa(mod)
    whole = evaluate_deletion(graph, graph.layer_residues(cut_support(mod.m)))
    assert not whole.connected_after
    samples = separator_subset_trials(mod, 50, seed=7, graph=graph)
    assert len(samples) == 50
    assert all(t.deleted_size < kappa(mod) for t in samples)
    assert all(t.connected_after for t in samples)


@pytest.mark.criterion(8, "200 seeded deletions of kappa-1 vertices keep the graph connected")
@pytest.mark.parametrize("n", [30, 42, 70, 210])
def test_robustness_suite(n):
    mod = factor_squarefree(n)
    trials = robustness_trials(mod, 200, seed=2024, controls=False)
    assert len(trials) == 200
    assert all(t.deleted_size == kappa(mod) - 1 for t in trials)
    assert all(t.connected_after for t in trials)
    assert all(t.anchor_found and 0 <= t.anchor_reach <= 2 for t in trials)
    assert all(0 < t.max_pair_distance_after <= 4 for t in trials)


@pytest.mark.criterion(9, "append-prime recurrence on 20 seeded (modulus, next prime) pairs")
def test_append_prime_recurrence():
    rng = np.random.default_rng(9)
    checked = 0
    for _ in range(20):
        m = int(rng.integers(2, 6))
        picks = sorted(rng.choice(len(SMALL_PRIMES), size=m, replace=False).tolist())
        mod = from_primes(tuple(SMALL_PRIMES[i] for i in picks))
        q = next_prime(mod.primes[-1])
        extended = factor_squarefree(mod.n * q)
        value = kappa_append_prime(mod, q)
        assert value == kappa(extended)
        assert value == algorithm_kappa(extended.primes)
        if extended.n <= 2500:
            assert value == oracles.vertex_connectivity_oracle(build_graph(extended))[0]
        checked += 1
    assert checked == 20


@pytest.mark.criterion(10, "kappa of 2*3*5*q is 8 for q in 7, 11, 13, 101")
@pytest.mark.parametrize("q", [7, 11, 13, 101])
def test_largest_prime_invariance(q):
    mod = factor_squarefree(30 * q)
    assert kappa(mod) == 8
    assert algorithm_kappa(mod.primes) == 8
    if mod.n <= 2500:
        assert oracles.vertex_connectivity_oracle(build_graph(mod))[0] == 8
