"""Acceptance criteria, one test each. Each prints a PASS/FAIL line that is
also repeated in the terminal summary."""

import time

import networkx as nx
import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES, to_nx
from measiso import experiments
from measiso.generators import complete_graph, random_three_connected

pytestmark = pytest.mark.acceptance


def record(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} -- {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def _failed(report) -> list[str]:
    return [c.pair_id for c in report.cases if not c.agree]


def test_criterion_1_whitney_crosscheck():
    t0 = time.perf_counter()
    report = experiments.whitney_crosscheck(max_edges=7, n_random=200, random_max_edges=10, random_max_vertices=8)
    elapsed = time.perf_counter() - t0
    exh = [c for c in report.cases if c.pair_id.startswith("exh-")]
    rnd = [c for c in report.cases if c.pair_id.startswith("rnd-")]
    positives = sum(c.verdicts["2iso-cycle"] == "true" for c in report.cases)
    witnesses_ok = all(
        c.evidence.get("sigma_verified", True) and c.evidence.get("search_witness_verified", True)
        for c in report.cases
    )
    ok = report.ok and len(rnd) >= 200 and witnesses_ok and elapsed < 300
    record(
        1,
        "cycle route and orbit route agree",
        ok,
        f"{len(exh)} exhaustive + {len(rnd)} random pairs, {positives} 2-isomorphic, "
        f"{report.n_unknown} unknown, {len(_failed(report))} disagreements, {elapsed:.0f}s",
    )
    assert ok, _failed(report)[:10]


def test_criterion_2_main_theorem_forward():
    report = experiments.main_theorem_forward(n_pairs=200, n_points=20, dims=(1, 2, 3), tol=1e-8, reflect_tol=1e-9)
    worst = max(
        (v for c in report.cases for k, v in c.evidence.items() if k.startswith("worst_residual")), default=0.0
    )
    gaps = [c.evidence["reflection_gap"] for c in report.cases if "reflection_gap" in c.evidence]
    ok = report.ok and len(report.cases) >= 200 and worst <= 1e-8 and max(gaps, default=0.0) <= 1e-9
    record(
        2,
        "sampled points of G are realizable for H under sigma",
        ok,
        f"{len(report.cases)} pairs x 20 points x d in (1,2,3), worst residual {worst:.1e}, "
        f"{len(gaps)} reflections, worst gap {max(gaps, default=0.0):.1e}",
    )
    assert ok, _failed(report)[:10]


def test_criterion_3_main_theorem_reverse():
    report = experiments.main_theorem_reverse(n_pairs=100, n_sigmas=3, dims=(1, 2, 3), tol=1e-8)
    witnesses = sum(len(c.evidence["witnesses"]) for c in report.cases)
    universal = sum(1 for c in report.cases if "all" in c.verdicts)
    ok = report.ok and len(report.cases) >= 100
    record(
        3,
        "non cycle-isomorphic pairs get a separating point for every d",
        ok,
        f"{len(report.cases)} pairs, {witnesses} witnesses checked at d in (1,2,3), "
        f"{universal} pairs with a witness covering all bijections",
    )
    assert ok, _failed(report)[:10]


def test_criterion_4_lemma_cycles():
    report = experiments.lemma_cycles(ks=(3, 4, 5, 6), dims=(1, 2, 3, 4), n_forests=5)
    ok = report.ok and len(report.cases) == 4
    record(4, "(0,...,0,1) infeasible on C_k, realizable on k-edge forests", ok, "k in 3..6, d in 1..4, 5 forests per k")
    assert ok, _failed(report)


def test_criterion_5_forest_octant():
    report = experiments.forest_octant(n=500, max_edges=10, d=1, tol=1e-8)
    worst = max(c.evidence["residual"] for c in report.cases)
    ok = report.ok and len(report.cases) == 500 and worst <= 1e-8
    record(5, "random forest targets realizable at d=1", ok, f"500 targets, worst residual {worst:.1e}")
    assert ok, _failed(report)[:10]


def test_criterion_6_nesting_and_stabilization():
    report = experiments.nesting(dims=(1, 2), n=100, tol=1e-8)
    worst = max((c.evidence.get("worst_residual", 0.0) for c in report.cases), default=0.0)
    ok = report.ok
    record(
        6,
        "zero padding is exact, d=v-1 and d=v realize each other",
        ok,
        f"{sum(c.pair_id.endswith('-pad') for c in report.cases)} padding cases, "
        f"{sum(c.pair_id.endswith('-stabilize') for c in report.cases)} stabilization cases x 100 points, "
        f"worst residual {worst:.1e}",
    )
    assert ok, _failed(report)


def test_criterion_7_three_connected():
    rng = np.random.default_rng(0)
    randoms = [random_three_connected(rng, int(rng.integers(5, 9))) for _ in range(10)]
    graphs = [complete_graph(4), complete_graph(5)] + randoms
    # networkx is the independent oracle for 3-connectivity here
    all_three_connected = all(
        nx.node_connectivity(nx.Graph(to_nx(g))) >= 3 and max(g.multiplicity.values()) == 1 for g in graphs
    )
    report = experiments.three_connected(graphs)
    ok = report.ok and all_three_connected
    iso_pairs = sum(c.verdicts["iso"] == "true" for c in report.cases)
    record(
        7,
        "2-isomorphic iff isomorphic on 3-connected graphs",
        ok,
        f"K4, K5 + 10 random 3-connected graphs, {len(report.cases)} same-size pairs, {iso_pairs} isomorphic",
    )
    assert ok, _failed(report)


def test_criterion_8_numerical_hygiene():
    grad = experiments.gradient_check(n=100, step=1e-6, rtol=1e-5)
    inv = experiments.involution_check(n=100)
    worst = max(c.evidence["rel_error"] for c in grad.cases)
    ok = grad.ok and inv.ok and len(grad.cases) == 100 and len(inv.cases) == 100
    record(
        8,
        "gradient matches central differences, reversal is an involution",
        ok,
        f"100 gradients (worst relative error {worst:.1e}), 100 involutions",
    )
    assert ok, (_failed(grad), _failed(inv))
