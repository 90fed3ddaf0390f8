"""Experiment suites: each returns a JSON-ready report with per-case verdicts.

Agreement flags are always derived from the stored verdicts, never stored
alongside them.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .cycles import verify_cycle_bijection
from .generators import (
    complete_graph,
    connected_multigraphs,
    cycle_graph,
    random_connected_graph,
    random_forest,
    random_three_connected,
    scramble,
    shuffled_copy,
)
from .graph import Graph, graph_isomorphic, verify_vertex_bijection
from .measurement import (
    Configuration,
    EdgeAxisMap,
    MeasurementPoint,
    NoCommonWitness,
    SolverOptions,
    distinguish_witness,
    is_member,
    lengths_squared,
    realization_objective,
    realize_detail,
    reflect_across_cut_pair,
    residual_of,
    sample_configuration,
    sample_measurement_set,
    verify_certificate,
    verify_witness,
)
from .whitney import (
    enumerate_two_separations,
    reversal,
    two_isomorphic,
    two_isomorphic_search,
    verify_search_witness,
)


@dataclass
class CaseResult:
    pair_id: str
    verdicts: dict
    evidence: dict = field(default_factory=dict)
    rule: Callable[[dict], bool] | None = None

    @property
    def agree(self) -> bool:
        return bool(self.rule(self.verdicts)) if self.rule else True

    def to_dict(self) -> dict:
        return {"pair_id": self.pair_id, "verdicts": self.verdicts, "evidence": self.evidence, "agree": self.agree}


@dataclass
class ExperimentReport:
    suite: str
    params: dict
    cases: list[CaseResult] = field(default_factory=list)

    @property
    def n_unknown(self) -> int:
        return sum(1 for c in self.cases for v in c.verdicts.values() if v == "unknown")

    @property
    def ok(self) -> bool:
        return bool(self.cases) and all(c.agree for c in self.cases) and self.n_unknown == 0

    def to_dict(self) -> dict:
        cases = sorted(self.cases, key=lambda c: c.pair_id)
        return {
            "suite": self.suite,
            "params": self.params,
            "summary": {
                "cases": len(cases),
                "agreeing": sum(c.agree for c in cases),
                "unknown": self.n_unknown,
                "ok": self.ok,
            },
            "cases": [c.to_dict() for c in cases],
        }


def _random_multigraph_max_edges(rng: np.random.Generator, max_edges: int, vmin: int, vmax: int) -> Graph:
    while True:
        g = random_connected_graph(rng, int(rng.integers(vmin, vmax + 1)), float(rng.uniform(0.3, 0.7)), multigraph=True)
        if g.n_edges <= max_edges:
            return g


def _rewire_one_edge(g: Graph, rng: np.random.Generator) -> Graph:
    """Move one random edge onto a random vertex pair (edge count unchanged)."""
    k = int(rng.integers(g.n_edges))
    a, b = rng.choice(len(g.vertices), size=2, replace=False)
    edges = list(g.edges)
    edges[k] = (edges[k][0], g.vertices[int(a)], g.vertices[int(b)])
    return Graph(g.vertices, tuple(edges))


def _two_iso_verdicts(g: Graph, h: Graph, max_depth: int | None, orbit_cap: int) -> tuple[dict, dict]:
    sigma = two_isomorphic(g, h)
    search = two_isomorphic_search(g, h, max_depth=max_depth, orbit_cap=orbit_cap)
    verdicts = {
        "2iso-cycle": "true" if sigma is not None else "false",
        "2iso-search": search.status,
    }
    evidence = {"orbit_size": search.orbit_size, "depth": search.depth}
    if sigma is not None:
        evidence["sigma_verified"] = verify_cycle_bijection(g, h, sigma)
    if search.status == "true":
        evidence["search_witness_verified"] = verify_search_witness(g, h, search)
    return verdicts, evidence


def _crosscheck_rule(v: dict) -> bool:
    return v["2iso-search"] != "unknown" and v["2iso-cycle"] == v["2iso-search"]


def whitney_crosscheck(
    max_edges: int = 7,
    n_random: int = 200,
    random_max_edges: int = 10,
    random_max_vertices: int = 8,
    seed: int = 0,
    max_depth: int | None = None,
    orbit_cap: int = 10**5,
) -> ExperimentReport:
    """Cycle route vs orbit route on every same-size pair, then on random pairs."""
    report = ExperimentReport(
        "whitney-crosscheck",
        {"max_edges": max_edges, "n_random": n_random, "random_max_edges": random_max_edges, "seed": seed},
    )
    for e in range(1, max_edges + 1):
        graphs = connected_multigraphs(e)
        for i, j in itertools.combinations_with_replacement(range(len(graphs)), 2):
            v, ev = _two_iso_verdicts(graphs[i], graphs[j], max_depth, orbit_cap)
            report.cases.append(CaseResult(f"exh-e{e}-{i:04d}-{j:04d}", v, ev, _crosscheck_rule))

    rng = np.random.default_rng(seed)
    for k in range(n_random):
        g = _random_multigraph_max_edges(rng, random_max_edges, 4, random_max_vertices)
        mode = k % 3
        if mode == 0:
            h, _ = scramble(g, rng, int(rng.integers(1, 4)))
            h = shuffled_copy(h, rng)
        elif mode == 1:
            h = shuffled_copy(_rewire_one_edge(g, rng), rng)
        else:
            while True:
                h = _random_multigraph_max_edges(rng, random_max_edges, 4, random_max_vertices)
                if h.n_edges == g.n_edges:
                    break
        v, ev = _two_iso_verdicts(g, h, max_depth, orbit_cap)
        ev["mode"] = ["scrambled", "rewired", "independent"][mode]
        report.cases.append(CaseResult(f"rnd-{k:04d}", v, ev, _crosscheck_rule))
    return report


def constructed_pairs(n: int, seed: int, vmin: int = 4, vmax: int = 7) -> list[tuple[Graph, Graph]]:
    """2-isomorphic pairs: random graph vs a scrambled, relabeled copy."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        g = random_connected_graph(rng, int(rng.integers(vmin, vmax + 1)), float(rng.uniform(0.35, 0.7)), multigraph=True)
        h, ops = scramble(g, rng, int(rng.integers(1, 4)))
        if not ops:
            continue
        out.append((g, shuffled_copy(h, rng)))
    return out


def main_theorem_forward(
    n_pairs: int = 200,
    n_points: int = 20,
    dims: tuple[int, ...] = (1, 2, 3),
    tol: float = 1e-8,
    reflect_tol: float = 1e-9,
    seed: int = 0,
    restarts: int = 32,
) -> ExperimentReport:
    """Sampled points of Gamma are realizable for Delta under the cycle certificate."""
    report = ExperimentReport(
        "main-theorem-forward",
        {"n_pairs": n_pairs, "n_points": n_points, "dims": list(dims), "tol": tol, "seed": seed},
    )
    rng = np.random.default_rng(seed + 1)
    for k, (g, h) in enumerate(constructed_pairs(n_pairs, seed)):
        sigma = two_isomorphic(g, h)
        verdicts: dict = {"2iso": "true" if sigma is not None else "false"}
        evidence: dict = {"e": g.n_edges, "v_g": g.n_vertices, "v_h": h.n_vertices}
        if sigma is not None:
            for d in dims:
                pts = sample_measurement_set(g, d, n_points, seed=seed * 1000003 + k * 10 + d)
                worst, found = 0.0, 0
                for i, pt in enumerate(pts):
                    opts = SolverOptions(tol=tol, restarts=restarts, seed=k * 100 + i)
                    conf, res, _ = realize_detail(h, pt.relabel(sigma), d, opts=opts)
                    found += conf is not None
                    worst = max(worst, res)
                verdicts[f"realizable-d{d}"] = "true" if found == len(pts) else "false"
                evidence[f"worst_residual_d{d}"] = worst
            seps = enumerate_two_separations(g)
            if seps:
                sep = seps[int(rng.integers(len(seps)))]
                d = dims[int(rng.integers(len(dims)))]
                p = sample_configuration(g, d, rng)
                gap = _reflection_gap(g, sep, p)
                verdicts["reflection"] = "true" if gap <= reflect_tol else "false"
                evidence["reflection_gap"] = gap
        report.cases.append(
            CaseResult(f"fwd-{k:04d}", verdicts, evidence, lambda v: all(x == "true" for x in v.values()))
        )
    return report


def _reflection_gap(g: Graph, sep, p: Configuration) -> float:
    g2 = reversal(g, sep)
    p2 = reflect_across_cut_pair(g, sep, p)
    ax = EdgeAxisMap.of(g)
    a = lengths_squared(g, p, ax).coords
    b = lengths_squared(g2, p2, ax).coords
    return float(np.max(np.abs(a - b), initial=0.0))


def non_cycle_isomorphic_pairs(n: int, seed: int, vmin: int = 4, vmax: int = 7, max_edges: int = 9) -> list[tuple[Graph, Graph]]:
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        g = _random_multigraph_max_edges(rng, max_edges, vmin, vmax)
        if len(out) % 2:
            h = shuffled_copy(_rewire_one_edge(g, rng), rng)
        else:
            h = _random_multigraph_max_edges(rng, max_edges, vmin, vmax)
            if h.n_edges != g.n_edges:
                continue
            h = shuffled_copy(h, rng)
        if two_isomorphic(g, h) is None:
            out.append((g, h))
    return out


def _random_bijection(g: Graph, h: Graph, rng: np.random.Generator) -> dict[str, str]:
    hs = list(h.edge_ids)
    perm = rng.permutation(len(hs))
    return {e: hs[int(perm[i])] for i, e in enumerate(g.edge_ids)}


def main_theorem_reverse(
    n_pairs: int = 100,
    n_sigmas: int = 3,
    dims: tuple[int, ...] = (1, 2, 3),
    tol: float = 1e-8,
    seed: int = 0,
) -> ExperimentReport:
    """Non cycle-isomorphic pairs get a separating point, whatever d is."""
    report = ExperimentReport(
        "main-theorem-reverse", {"n_pairs": n_pairs, "n_sigmas": n_sigmas, "dims": list(dims), "tol": tol, "seed": seed}
    )
    rng = np.random.default_rng(seed + 7)
    opts = SolverOptions(tol=tol)

    def check(g, h, w, sigma, d) -> tuple[bool, float]:
        own, other = verify_witness(g, h, w, d, sigma=sigma, opts=opts)
        own_g, other_g = (g, h) if w.side == "g" else (h, g)
        own_ok = own.kind == "infeasible" and verify_certificate(own_g.subgraph(w.cycle), w.point, own.certificate)
        other_ok = other.kind == "realizable" and other.residual <= tol
        return own_ok and other_ok, other.residual

    for k, (g, h) in enumerate(non_cycle_isomorphic_pairs(n_pairs, seed)):
        verdicts: dict = {}
        evidence: dict = {"e": g.n_edges, "witnesses": []}
        families: list[tuple[str, list | None]] = [("all", None)]
        families += [(f"sigma{i}", [_random_bijection(g, h, rng)]) for i in range(n_sigmas)]
        for name, fam in families:
            try:
                w = distinguish_witness(g, h, fam)
            except NoCommonWitness:
                continue  # no single point covers every bijection (equal girths)
            if w is None:
                verdicts[name] = "false"
                continue
            ok_all = True
            worst = 0.0
            for d in dims:
                ok, res = check(g, h, w, fam[0] if fam else None, d)
                ok_all &= ok
                worst = max(worst, res)
            verdicts[name] = "true" if ok_all else "false"
            evidence["witnesses"].append({"family": name, "witness": w.to_dict(), "worst_realizable_residual": worst})
        report.cases.append(
            CaseResult(f"rev-{k:04d}", verdicts, evidence, lambda v: bool(v) and all(x == "true" for x in v.values()))
        )
    return report


def lemma_cycles(ks=(3, 4, 5, 6), dims=(1, 2, 3, 4), n_forests: int = 5, seed: int = 0, tol: float = 1e-8) -> ExperimentReport:
    """(0,...,0,1) is infeasible on C_k in every dimension, realizable on k-edge forests."""
    report = ExperimentReport("lemma", {"ks": list(ks), "dims": list(dims), "n_forests": n_forests})
    rng = np.random.default_rng(seed)
    for k in ks:
        c = cycle_graph(k)
        target = MeasurementPoint(c.edge_ids, [0.0] * (k - 1) + [1.0])
        verdicts = {}
        for d in dims:
            v = is_member(c, target, d)
            ok = v.kind == "infeasible" and verify_certificate(c, target, v.certificate)
            verdicts[f"cycle-d{d}"] = "true" if ok else "false"
        for i in range(n_forests):
            f = random_forest(rng, k)
            t = MeasurementPoint(f.edge_ids, [0.0] * (k - 1) + [1.0])
            for d in dims:
                v = is_member(f, t, d)
                ok = v.kind == "realizable" and residual_of(f, v.witness, t) <= tol
                verdicts[f"forest{i}-d{d}"] = "true" if ok else "false"
        report.cases.append(CaseResult(f"C{k}", verdicts, rule=lambda v: all(x == "true" for x in v.values())))
    return report


def forest_octant(n: int = 500, max_edges: int = 10, d: int = 1, tol: float = 1e-8, seed: int = 0) -> ExperimentReport:
    """Random nonnegative targets on random forests are all realizable."""
    report = ExperimentReport("forest-octant", {"n": n, "max_edges": max_edges, "d": d, "tol": tol})
    rng = np.random.default_rng(seed)
    for k in range(n):
        f = random_forest(rng, int(rng.integers(1, max_edges + 1)))
        vals = rng.exponential(float(rng.uniform(0.1, 10.0)), f.n_edges)
        vals[rng.random(f.n_edges) < 0.2] = 0.0
        t = MeasurementPoint(f.edge_ids, vals)
        v = is_member(f, t, d)
        res = residual_of(f, v.witness, t) if v.witness is not None else math.inf
        verdicts = {"realizable": "true" if v.kind == "realizable" and res <= tol else "false"}
        report.cases.append(
            CaseResult(f"forest-{k:04d}", verdicts, {"e": f.n_edges, "residual": res}, lambda x: x["realizable"] == "true")
        )
    return report


def nesting(
    graphs: list[Graph] | None = None,
    dims: tuple[int, ...] = (1, 2),
    n: int = 100,
    tol: float = 1e-8,
    seed: int = 0,
    restarts: int = 32,
) -> ExperimentReport:
    """M_d inside M_{d+1} by zero padding; M_{v-1} and M_v realize each other."""
    if graphs is None:
        graphs = [complete_graph(4), cycle_graph(5), complete_graph(5)]
        rng0 = np.random.default_rng(seed)
        graphs.append(random_connected_graph(rng0, 5, 0.6, multigraph=True))
    report = ExperimentReport("nesting", {"dims": list(dims), "n": n, "tol": tol, "seed": seed})
    for gi, g in enumerate(graphs):
        for d in dims:
            pts, confs = sample_measurement_set(g, d, n, seed=seed + 31 * gi + d, return_configurations=True)
            exact = sum(residual_of(g, p.padded(d + 1), pt) == 0.0 for pt, p in zip(pts, confs))
            verdicts = {"padded": "true" if exact == n else "false"}
            report.cases.append(
                CaseResult(f"g{gi}-d{d}-pad", verdicts, {"exact": exact}, lambda x: x["padded"] == "true")
            )
        v = g.n_vertices
        lo, hi = v - 1, v
        up_pts, up_confs = sample_measurement_set(g, lo, n, seed=seed + 97 * gi, return_configurations=True)
        up_ok = sum(residual_of(g, p.padded(hi), pt) <= tol for pt, p in zip(up_pts, up_confs))
        down_pts = sample_measurement_set(g, hi, n, seed=seed + 89 * gi + 1)
        worst = 0.0
        down_ok = 0
        for i, pt in enumerate(down_pts):
            conf, res, _ = realize_detail(g, pt, lo, opts=SolverOptions(tol=tol, restarts=restarts, seed=i))
            down_ok += conf is not None
            worst = max(worst, res)
        verdicts = {"up": "true" if up_ok == n else "false", "down": "true" if down_ok == n else "false"}
        report.cases.append(
            CaseResult(
                f"g{gi}-stabilize",
                verdicts,
                {"v": v, "down_found": down_ok, "worst_residual": worst},
                lambda x: x["up"] == "true" and x["down"] == "true",
            )
        )
    return report


def three_connected(graphs: list[Graph] | None = None, n_random: int = 10, seed: int = 0) -> ExperimentReport:
    """On 3-connected simple graphs, 2-isomorphism and isomorphism coincide."""
    rng = np.random.default_rng(seed)
    if graphs is None:
        graphs = [complete_graph(4), complete_graph(5)]
        graphs += [random_three_connected(rng, int(rng.integers(5, 8))) for _ in range(n_random)]
    pool = list(graphs) + [shuffled_copy(g, rng) for g in graphs]
    report = ExperimentReport("three-connected", {"n_graphs": len(graphs), "seed": seed})
    for (i, g), (j, h) in itertools.combinations_with_replacement(enumerate(pool), 2):
        if g.n_edges != h.n_edges:
            continue
        sigma = two_isomorphic(g, h)
        rho = graph_isomorphic(g, h)
        verdicts = {"2iso": "true" if sigma is not None else "false", "iso": "true" if rho is not None else "false"}
        evidence = {"rho_verified": rho is not None and verify_vertex_bijection(g, h, rho)}
        report.cases.append(CaseResult(f"p{i:02d}-{j:02d}", verdicts, evidence, lambda v: v["2iso"] == v["iso"]))
    return report


def gradient_check(n: int = 100, step: float = 1e-6, rtol: float = 1e-5, seed: int = 0) -> ExperimentReport:
    """Analytic gradient of the realization objective vs central differences."""
    report = ExperimentReport("gradient-check", {"n": n, "step": step, "rtol": rtol})
    rng = np.random.default_rng(seed)
    for k in range(n):
        g = random_connected_graph(rng, int(rng.integers(3, 7)), 0.6, multigraph=True)
        d = int(rng.integers(1, 4))
        target = MeasurementPoint(g.edge_ids, rng.exponential(1.0, g.n_edges))
        f, grad = realization_objective(g, target, d)
        x = rng.standard_normal(g.n_vertices * d)
        analytic = grad(x)
        numeric = np.empty_like(x)
        for i in range(len(x)):
            dx = np.zeros_like(x)
            dx[i] = step
            numeric[i] = (f(x + dx) - f(x - dx)) / (2 * step)
        err = float(np.linalg.norm(analytic - numeric) / max(np.linalg.norm(analytic), 1e-12))
        report.cases.append(
            CaseResult(f"grad-{k:03d}", {"match": "true" if err <= rtol else "false"}, {"rel_error": err}, lambda v: v["match"] == "true")
        )
    return report


def involution_check(n: int = 100, seed: int = 0) -> ExperimentReport:
    report = ExperimentReport("involution", {"n": n})
    rng = np.random.default_rng(seed)
    done = 0
    while done < n:
        g = random_connected_graph(rng, int(rng.integers(4, 8)), float(rng.uniform(0.3, 0.7)), multigraph=True)
        seps = enumerate_two_separations(g)
        if not seps:
            continue
        sep = seps[int(rng.integers(len(seps)))]
        back = reversal(reversal(g, sep), sep)
        same = back == g
        report.cases.append(CaseResult(f"inv-{done:03d}", {"identity": "true" if same else "false"}, rule=lambda v: v["identity"] == "true"))
        done += 1
    return report

