"""Squared edge-length maps, measurement sets and membership verdicts.

A configuration places every vertex in R^d; its measurement point lists the
squared edge lengths in a fixed axis order. Membership of a target point is
three-valued: exact certificates give ``realizable``/``infeasible``, the
numerical solver can only add ``realizable`` or fall back to ``unknown``.
"""

from __future__ import annotations

import itertools
import math
from bisect import bisect_left
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .cycles import cycle_isomorphic, enumerate_cycles, is_cycle_subset, verify_cycle_bijection
from .graph import Graph, GraphError, connected_components, is_forest
from .whitney import TwoSeparation, make_separation

POLYGON_RTOL = 1e-12
SUBSET_SUM_MAX_K = 30


@dataclass(frozen=True)
class EdgeAxisMap:
    order: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(set(self.order)) != len(self.order):
            raise ValueError("axis order repeats an edge id")

    @classmethod
    def of(cls, g: Graph) -> EdgeAxisMap:
        return cls(g.edge_ids)

    def index(self, eid: str) -> int:
        return self.order.index(eid)

    def check_covers(self, g: Graph) -> None:
        if set(self.order) != set(g.edge_ids):
            raise GraphError("axis map does not match the graph's edges")


@dataclass
class Configuration:
    d: int
    points: dict[str, np.ndarray]

    def __post_init__(self) -> None:
        self.points = {k: np.asarray(v, dtype=float).reshape(self.d) for k, v in self.points.items()}
        for k, v in self.points.items():
            if not np.all(np.isfinite(v)):
                raise ValueError(f"non-finite coordinates for {k!r}")

    @classmethod
    def from_array(cls, vertices: Sequence[str], x: np.ndarray) -> Configuration:
        x = np.asarray(x, dtype=float)
        return cls(x.shape[1], {v: x[i].copy() for i, v in enumerate(vertices)})

    def array(self, vertices: Sequence[str]) -> np.ndarray:
        return np.array([self.points[v] for v in vertices], dtype=float).reshape(len(vertices), self.d)

    def padded(self, d: int) -> Configuration:
        """Embed into R^d (d >= self.d) by appending zero coordinates."""
        if d < self.d:
            raise ValueError("cannot pad to a smaller dimension")
        return Configuration(d, {k: np.concatenate([v, np.zeros(d - self.d)]) for k, v in self.points.items()})

    def to_dict(self) -> dict:
        return {"d": self.d, "points": {k: v.tolist() for k, v in sorted(self.points.items())}}

    @classmethod
    def from_dict(cls, data: Mapping) -> Configuration:
        return cls(int(data["d"]), {k: np.asarray(v, dtype=float) for k, v in data["points"].items()})


@dataclass
class MeasurementPoint:
    axes: tuple[str, ...]
    coords: np.ndarray

    def __post_init__(self) -> None:
        self.axes = tuple(self.axes)
        self.coords = np.asarray(self.coords, dtype=float).reshape(len(self.axes))
        if np.any(self.coords < 0) or not np.all(np.isfinite(self.coords)):
            raise ValueError("measurement coordinates must be finite and nonnegative")

    def value(self, eid: str) -> float:
        return float(self.coords[self.axes.index(eid)])

    def as_dict(self) -> dict[str, float]:
        return dict(zip(self.axes, self.coords.tolist()))

    def relabel(self, edge_map: Mapping[str, str]) -> MeasurementPoint:
        return MeasurementPoint(tuple(edge_map[a] for a in self.axes), self.coords.copy())

    def to_dict(self) -> dict:
        return {"axes": list(self.axes), "coords": self.coords.tolist()}

    @classmethod
    def from_dict(cls, data: Mapping) -> MeasurementPoint:
        return cls(tuple(data["axes"]), np.asarray(data["coords"], dtype=float))


def _axes(g: Graph, ax: EdgeAxisMap | None) -> EdgeAxisMap:
    ax = EdgeAxisMap.of(g) if ax is None else ax
    ax.check_covers(g)
    return ax


def lengths_squared(g: Graph, p: Configuration, ax: EdgeAxisMap | None = None) -> MeasurementPoint:
    ax = _axes(g, ax)
    missing = set(g.vertices) - set(p.points)
    if missing:
        raise GraphError(f"configuration misses vertices {sorted(missing)}")
    coords = []
    for eid in ax.order:
        u, w = g.endpoints[eid]
        diff = p.points[u] - p.points[w]
        coords.append(float(diff @ diff))
    return MeasurementPoint(ax.order, np.array(coords))


def sample_configuration(g: Graph, d: int, rng: np.random.Generator, spread: float = 1.0) -> Configuration:
    x = rng.standard_normal((g.n_vertices, d)) * spread
    return Configuration.from_array(g.vertices, x)


def sample_measurement_set(
    g: Graph,
    d: int,
    n: int,
    seed: int = 0,
    spread: float = 1.0,
    ax: EdgeAxisMap | None = None,
    return_configurations: bool = False,
):
    """n points of M_d(g) from i.i.d. Gaussian configurations."""
    if n < 1:
        raise ValueError("n must be at least 1")
    ax = _axes(g, ax)
    rng = np.random.default_rng(seed)
    configs = [sample_configuration(g, d, rng, spread) for _ in range(n)]
    points = [lengths_squared(g, p, ax) for p in configs]
    return (points, configs) if return_configurations else points


# --- numerical realization -------------------------------------------------


@dataclass
class SolverOptions:
    tol: float = 1e-8
    restarts: int = 32
    max_iter: int = 500
    spread: float | None = None
    seed: int = 0


class _Problem:
    """Residuals r_e = |x_u - x_w|^2 - y_e over flattened coordinates."""

    def __init__(self, g: Graph, target: MeasurementPoint, ax: EdgeAxisMap, d: int) -> None:
        self.vertices = g.vertices
        vidx = {v: i for i, v in enumerate(g.vertices)}
        y = target.as_dict()
        self.u = np.array([vidx[g.endpoints[e][0]] for e in ax.order], dtype=int)
        self.w = np.array([vidx[g.endpoints[e][1]] for e in ax.order], dtype=int)
        self.y = np.array([y[e] for e in ax.order], dtype=float)
        self.n = g.n_vertices
        self.d = d
        rows = np.arange(len(ax.order))[:, None]
        cols = np.arange(d)[None, :]
        self._ju = (rows, self.u[:, None] * d + cols)
        self._jw = (rows, self.w[:, None] * d + cols)

    def residual(self, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        x = x.reshape(self.n, self.d)
        diff = x[self.u] - x[self.w]
        return np.einsum("ij,ij->i", diff, diff) - self.y, diff

    def jacobian(self, diff: np.ndarray) -> np.ndarray:
        jac = np.zeros((len(self.y), self.n * self.d))
        jac[self._ju] = 2.0 * diff
        jac[self._jw] = -2.0 * diff
        return jac

    def objective(self, x: np.ndarray) -> float:
        r, _ = self.residual(x)
        return float(r @ r)

    def gradient(self, x: np.ndarray) -> np.ndarray:
        r, diff = self.residual(x)
        return 2.0 * self.jacobian(diff).T @ r


class _LiftedProblem:
    """Same residuals in a higher dimension, plus rows sqrt(lam) * (extra coordinates)."""

    def __init__(self, base: _Problem, dim: int, lam: float) -> None:
        self.base = base
        self.dim = dim
        self.lam = lam
        n, d = base.n, base.d
        rows = np.arange(len(base.y))[:, None]
        cols = np.arange(dim)[None, :]
        self._ju = (rows, base.u[:, None] * dim + cols)
        self._jw = (rows, base.w[:, None] * dim + cols)
        self._extra = (np.arange(n)[:, None] * dim + np.arange(d, dim)[None, :]).ravel()

    def residual(self, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        xs = x.reshape(self.base.n, self.dim)
        diff = xs[self.base.u] - xs[self.base.w]
        r = np.einsum("ij,ij->i", diff, diff) - self.base.y
        return np.concatenate([r, math.sqrt(self.lam) * x[self._extra]]), diff

    def jacobian(self, diff: np.ndarray) -> np.ndarray:
        e = len(self.base.y)
        jac = np.zeros((e + len(self._extra), self.base.n * self.dim))
        jac[self._ju] = 2.0 * diff
        jac[self._jw] = -2.0 * diff
        jac[e + np.arange(len(self._extra)), self._extra] = math.sqrt(self.lam)
        return jac


# penalty schedule that squeezes a higher-dimensional solution back down
_LIFT_SCHEDULE = (0.0, 1e-4, 1e-3, 1e-2, 1e-1, 1.0, 10.0, 100.0, 1e4)
_LIFT_EXTRA_DIMS = 2


def _lifted_start(prob: _Problem, rng: np.random.Generator, spread: float) -> np.ndarray:
    dim = prob.d + _LIFT_EXTRA_DIMS
    x = rng.standard_normal(prob.n * dim) * spread
    for lam in _LIFT_SCHEDULE:
        x, _ = _levenberg_marquardt(_LiftedProblem(prob, dim, lam), x, 0.0, 100)
    return x.reshape(prob.n, dim)[:, : prob.d].ravel()


def realization_objective(
    g: Graph, target: MeasurementPoint, d: int, ax: EdgeAxisMap | None = None
) -> tuple[Callable[[np.ndarray], float], Callable[[np.ndarray], np.ndarray]]:
    """Sum of squared residuals and its analytic gradient, over flat coordinates."""
    prob = _Problem(g, target, _axes(g, ax), d)
    return prob.objective, prob.gradient


def _levenberg_marquardt(prob, x0: np.ndarray, tol: float, max_iter: int) -> tuple[np.ndarray, float]:
    x = x0.ravel().copy()
    r, diff = prob.residual(x)
    cost = 0.5 * float(r @ r)
    mu = None
    nu = 2.0
    for _ in range(max_iter):
        if np.max(np.abs(r), initial=0.0) <= tol:
            break
        jac = prob.jacobian(diff)
        a = jac.T @ jac
        grad = jac.T @ r
        if not np.any(grad):
            break
        if mu is None:
            mu = 1e-3 * max(float(np.max(np.diag(a))), 1e-12)
        try:
            step = np.linalg.solve(a + mu * np.eye(len(x)), -grad)
        except np.linalg.LinAlgError:
            mu *= nu
            nu *= 2.0
            continue
        x_new = x + step
        r_new, diff_new = prob.residual(x_new)
        cost_new = 0.5 * float(r_new @ r_new)
        predicted = 0.5 * float(step @ (mu * step - grad))
        if cost_new < cost and predicted > 0:
            gain = (cost - cost_new) / predicted
            x, r, diff, cost = x_new, r_new, diff_new, cost_new
            mu *= max(1.0 / 3.0, 1.0 - (2.0 * gain - 1.0) ** 3)
            nu = 2.0
        else:
            mu *= nu
            nu *= 2.0
            if mu > 1e30:
                break
    return x, float(np.max(np.abs(r), initial=0.0))


def realize_detail(
    g: Graph,
    target: MeasurementPoint,
    d: int,
    ax: EdgeAxisMap | None = None,
    opts: SolverOptions | None = None,
    initial: Iterable[Configuration] = (),
) -> tuple[Configuration | None, float, Configuration]:
    """Multi-start least squares; returns (witness or None, best residual, best config)."""
    opts = opts or SolverOptions()
    ax = _axes(g, ax)
    if not set(target.axes) >= set(ax.order):
        raise GraphError("target point does not cover every edge")
    prob = _Problem(g, target, ax, d)
    spread = opts.spread
    if spread is None:
        spread = math.sqrt(float(np.max(prob.y, initial=0.0)) + 1.0)
    starts = [p.array(g.vertices).ravel() for p in initial]
    best_x, best_res = None, math.inf
    for k in range(len(starts) + opts.restarts):
        if k < len(starts):
            x0 = starts[k]
        else:
            j = k - len(starts)
            rng = np.random.default_rng([opts.seed, j])
            # alternate plain random starts with starts relaxed from d + 2 dimensions
            if j % 2 == 0:
                x0 = rng.standard_normal(prob.n * d) * spread
            else:
                x0 = _lifted_start(prob, rng, spread)
        x, res = _levenberg_marquardt(prob, x0, opts.tol, opts.max_iter)
        if res < best_res:
            best_x, best_res = x, res
        if res <= opts.tol:
            break
    if best_x is None:
        best_x = np.zeros(prob.n * d)
        best_res = float(np.max(np.abs(prob.y), initial=0.0))
    conf = Configuration.from_array(g.vertices, best_x.reshape(prob.n, d)) if prob.n else Configuration(d, {})
    return (conf if best_res <= opts.tol else None), best_res, conf


def realize(
    g: Graph,
    target: MeasurementPoint,
    d: int,
    ax: EdgeAxisMap | None = None,
    opts: SolverOptions | None = None,
) -> Configuration | None:
    return realize_detail(g, target, d, ax, opts)[0]


# --- exact rules ---------------------------------------------------------


def polygon_inequality_holds(lengths_sq: Sequence[float]) -> bool:
    """max sqrt(y) <= sum of the other sqrt(y), with a relative slack."""
    r = np.sqrt(np.asarray(lengths_sq, dtype=float))
    total = float(r.sum())
    longest = float(r.max(initial=0.0))
    return longest <= (total - longest) + POLYGON_RTOL * total


def _signed_sum_zero(roots: Sequence[float]) -> bool:
    """Is there a choice of signs making sum(+-r_i) vanish? (meet in the middle)"""
    total = float(sum(roots))
    if total == 0.0:
        return True
    slack = POLYGON_RTOL * total
    half = len(roots) // 2
    left, right = roots[:half], roots[half:]

    def sums(vals: Sequence[float]) -> list[float]:
        out = [0.0]
        for r in vals:
            out = [s + r for s in out] + [s - r for s in out]
        return out

    rs = sorted(sums(right))
    for s in sums(left):
        i = bisect_left(rs, -s - slack)
        if i < len(rs) and abs(rs[i] + s) <= slack:
            return True
    return False


def cycle_realizable_exact(lengths_sq: Sequence[float], d: int) -> bool:
    """Can a closed k-gon have these squared side lengths in R^d?"""
    y = [float(v) for v in lengths_sq]
    if len(y) < 2:
        raise ValueError("a cycle has at least two edges")
    if any(v < 0 for v in y):
        raise ValueError("squared lengths must be nonnegative")
    if d >= 2:
        return polygon_inequality_holds(y)
    if len(y) > SUBSET_SUM_MAX_K:
        raise NotImplementedError(f"d=1 exact rule supports at most {SUBSET_SUM_MAX_K} edges")
    return _signed_sum_zero([math.sqrt(v) for v in y])


@dataclass
class MembershipVerdict:
    kind: str  # "realizable" | "infeasible" | "unknown"
    witness: Configuration | None = None
    certificate: dict | None = None
    residual: float = math.nan

    def to_dict(self) -> dict:
        res = self.residual if math.isfinite(self.residual) else None
        out: dict = {"kind": self.kind, "residual": res}
        if self.witness is not None:
            out["witness"] = self.witness.to_dict()
        if self.certificate is not None:
            out["certificate"] = self.certificate
        return out


def forest_realization(g: Graph, target: MeasurementPoint, d: int) -> Configuration:
    """Lay each tree out along the first axis; any nonnegative lengths work."""
    if not is_forest(g):
        raise GraphError("graph is not a forest")
    y = target.as_dict()
    pos = {}
    for comp in connected_components(g):
        root = min(comp)
        pos[root] = 0.0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for eid in g.incidence[x]:
                u, v = g.endpoints[eid]
                nxt = v if u == x else u
                if nxt not in pos:
                    pos[nxt] = pos[x] + math.sqrt(y[eid])
                    queue.append(nxt)
    return Configuration(d, {v: np.eye(1, d, 0)[0] * pos[v] for v in g.vertices})


def residual_of(g: Graph, p: Configuration, target: MeasurementPoint) -> float:
    """Max-norm gap between the configuration's lengths and the target."""
    y = target.as_dict()
    got = lengths_squared(g, p)
    return max((abs(v - y[a]) for a, v in zip(got.axes, got.coords)), default=0.0)


def polygon_certificate(g: Graph, target: MeasurementPoint) -> dict | None:
    """First cycle (by length, then ids) whose longest side beats the rest."""
    y = target.as_dict()
    for cyc in sorted(enumerate_cycles(g), key=lambda c: (len(c), sorted(c))):
        ids = sorted(cyc)
        if not polygon_inequality_holds([y[e] for e in ids]):
            return {"rule": "polygon-inequality", "cycle": ids}
    return None


def verify_certificate(g: Graph, target: MeasurementPoint, cert: Mapping) -> bool:
    if cert.get("rule") != "polygon-inequality":
        return False
    ids = list(cert["cycle"])
    if not is_cycle_subset(g, ids):
        return False
    y = target.as_dict()
    return not polygon_inequality_holds([y[e] for e in ids])


def is_member(
    g: Graph,
    target: MeasurementPoint,
    d: int,
    ax: EdgeAxisMap | None = None,
    opts: SolverOptions | None = None,
    extra_rules: Sequence[Callable[[Graph, MeasurementPoint, int], dict | None]] = (),
) -> MembershipVerdict:
    """Decide membership of target in M_d(g) where an exact rule applies.

    Order: forest construction, the polygon rule on every cycle, any
    ``extra_rules`` (each returns a certificate dict or None), then the
    numerical solver.
    """
    opts = opts or SolverOptions()
    ax = _axes(g, ax)
    if is_forest(g):
        p = forest_realization(g, target, d)
        return MembershipVerdict("realizable", witness=p, residual=residual_of(g, p, target))
    cert = polygon_certificate(g, target)
    if cert is None:
        for rule in extra_rules:
            cert = rule(g, target, d)
            if cert is not None:
                break
    if cert is not None:
        return MembershipVerdict("infeasible", certificate=cert, residual=math.inf)
    witness, res, _ = realize_detail(g, target, d, ax, opts)
    if witness is not None:
        return MembershipVerdict("realizable", witness=witness, residual=res)
    return MembershipVerdict("unknown", residual=res)


def project_point(pt: MeasurementPoint, keep: Iterable[str]) -> MeasurementPoint:
    """Restrict to the kept axes, preserving their relative order."""
    keep = set(keep)
    unknown = keep - set(pt.axes)
    if unknown:
        raise GraphError(f"unknown edge ids: {sorted(unknown)}")
    idx = [i for i, a in enumerate(pt.axes) if a in keep]
    return MeasurementPoint(tuple(pt.axes[i] for i in idx), pt.coords[idx])


def reflect_across_cut_pair(g: Graph, sep: TwoSeparation, p: Configuration) -> Configuration:
    """Mirror the interior vertices of the S side across the bisector of xy."""
    sep = make_separation(g, sep.s)
    x, y = sep.cut_pair
    px, py = p.points[x], p.points[y]
    axis = py - px
    norm2 = float(axis @ axis)
    if norm2 == 0.0:
        return Configuration(p.d, {k: v.copy() for k, v in p.points.items()})
    mid = 0.5 * (px + py)
    inner = {v for e in sep.s for v in g.endpoints[e]} - {x, y}
    out = {}
    for k, v in p.points.items():
        if k in inner:
            v = v - 2.0 * float((v - mid) @ axis) / norm2 * axis
        out[k] = v.copy()
    return Configuration(p.d, out)


# --- distinguishing witnesses ------------------------------------------------


class NoCommonWitness(ValueError):
    """No single (cycle, point) pair separates the graphs under every candidate."""


@dataclass
class Witness:
    side: str  # "g" or "h": the graph owning the cycle
    cycle: tuple[str, ...]
    point: MeasurementPoint  # axes = cycle edges of `side`
    unit_edge: str
    universal: bool = False  # valid for every edge bijection
    images: list[tuple[str, ...]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "side": self.side,
            "cycle": list(self.cycle),
            "unit_edge": self.unit_edge,
            "point": self.point.to_dict(),
            "universal": self.universal,
            "images": [list(i) for i in self.images],
        }


def _unit_point(cycle: Sequence[str], unit: str) -> MeasurementPoint:
    return MeasurementPoint(tuple(cycle), np.array([1.0 if e == unit else 0.0 for e in cycle]))


def _on_cycle_within(g: Graph, edges: Iterable[str], target: str) -> bool:
    """Does ``target`` lie on a cycle of the subgraph spanned by ``edges``?"""
    edges = set(edges)
    u, v = g.endpoints[target]
    adj: dict[str, list[str]] = {}
    for e in edges - {target}:
        a, b = g.endpoints[e]
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    seen = {u}
    stack = [u]
    while stack:
        x = stack.pop()
        if x == v:
            return True
        for y in adj.get(x, ()):
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return False


def _girth_cycle(cycles: Iterable[frozenset[str]]) -> tuple[str, ...] | None:
    ordered = sorted(cycles, key=lambda c: (len(c), sorted(c)))
    return tuple(sorted(ordered[0])) if ordered else None


def distinguish_witness(
    g: Graph,
    h: Graph,
    sigma_candidates: Iterable[Mapping[str, str]] | None = None,
) -> Witness | None:
    """A point separating the measurement sets of g and h under every candidate.

    The witness is a cycle on one side and the point with 1 on one of its
    edges and 0 on the rest: outside that cycle's measurement set, but inside
    the measurement set of the cycle's image on the other side.

    With ``sigma_candidates=None`` every edge bijection is a candidate; a single
    witness then exists exactly when the two girths differ. Returns None when
    the graphs are cycle isomorphic (or some candidate is a cycle
    isomorphism); raises NoCommonWitness when they are not, yet no single
    witness covers the whole family.
    """
    if g.n_edges != h.n_edges:
        raise GraphError("graphs need the same number of edges")
    gc, hc = enumerate_cycles(g), enumerate_cycles(h)

    if sigma_candidates is None:
        cg, ch = _girth_cycle(gc), _girth_cycle(hc)
        lg = len(cg) if cg else math.inf
        lh = len(ch) if ch else math.inf
        if lg == lh:
            if cycle_isomorphic(g, h) is not None:
                return None
            raise NoCommonWitness("girths agree; pass explicit edge bijections")
        side, cyc = ("g", cg) if lg < lh else ("h", ch)
        return Witness(side, cyc, _unit_point(cyc, cyc[0]), cyc[0], universal=True)

    sigmas = [dict(s) for s in sigma_candidates]
    for s in sigmas:
        if set(s) != set(g.edge_ids) or sorted(s.values()) != sorted(h.edge_ids):
            raise GraphError("candidate is not an edge bijection")
        if verify_cycle_bijection(g, h, s, gc, hc):
            return None
    inverses = [{b: a for a, b in s.items()} for s in sigmas]

    sides = [("g", g, gc, h, sigmas), ("h", h, hc, g, inverses)]
    # prefer witnesses whose images are forests (exact realization on the other side)
    for need_forest in (True, False):
        for name, own, own_cycles, other, maps in sides:
            for cyc in sorted(own_cycles, key=lambda c: (len(c), sorted(c))):
                ids = tuple(sorted(cyc))
                for unit in ids:
                    images = []
                    for m in maps:
                        img = [m[e] for e in ids]
                        if need_forest:
                            ok = is_forest(other.subgraph(img))
                        else:
                            ok = not _on_cycle_within(other, img, m[unit])
                        if not ok:
                            break
                        images.append(tuple(img))
                    else:
                        return Witness(name, ids, _unit_point(ids, unit), unit, images=images)
    raise NoCommonWitness("no single witness covers every candidate bijection")


def verify_witness(
    g: Graph,
    h: Graph,
    w: Witness,
    d: int,
    sigma: Mapping[str, str] | None = None,
    opts: SolverOptions | None = None,
) -> tuple[MembershipVerdict, MembershipVerdict]:
    """Membership of the witness point on the cycle and on its image under sigma.

    For universal witnesses without an explicit sigma, the image is the
    lexicographic pairing of edge ids (any bijection works).
    """
    own, other = (g, h) if w.side == "g" else (h, g)
    if sigma is None:
        m = dict(zip(sorted(own.edge_ids), sorted(other.edge_ids)))
    else:
        m = dict(sigma) if w.side == "g" else {b: a for a, b in sigma.items()}
    own_sub = own.subgraph(w.cycle)
    img = [m[e] for e in w.cycle]
    other_sub = other.subgraph(img)
    v_own = is_member(own_sub, w.point, d, opts=opts)
    v_other = is_member(other_sub, w.point.relabel(m), d, opts=opts)
    return v_own, v_other


def all_edge_bijections(g: Graph, h: Graph):
    hs = sorted(h.edge_ids)
    for perm in itertools.permutations(hs):
        yield dict(zip(sorted(g.edge_ids), perm))
