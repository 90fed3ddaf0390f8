"""Splits, reversals (Whitney flips), and the 1-/2-isomorphism deciders.

Two routes decide 2-isomorphism:

* :func:`two_isomorphic` goes through cycle isomorphism (Whitney's theorem),
* :func:`two_isomorphic_search` walks the reversal orbit breadth-first and
  tests 1-isomorphism at every node.

They share no code beyond the graph primitives, so they can cross-check
each other.
"""

from __future__ import annotations

import itertools
import threading
from collections import Counter, OrderedDict
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .cycles import DEFAULT_CYCLE_CAP, cycle_isomorphic
from .graph import (
    Graph,
    GraphError,
    IsoClassIndex,
    adjacency,
    block_decomposition,
    graph_isomorphic,
    invariant_key,
    verify_vertex_bijection,
)

DEFAULT_MAX_DEPTH = 8
DEFAULT_ORBIT_CAP = 10**5


class InvalidOperation(GraphError):
    pass


@dataclass(frozen=True)
class TwoSeparation:
    s: frozenset[str]
    t: frozenset[str]
    cut_pair: tuple[str, str]

    def to_op(self) -> dict:
        return {"op": "reversal", "s": sorted(self.s), "cut_pair": list(self.cut_pair)}


@dataclass(frozen=True)
class SplitSpec:
    cut_vertex: str
    side: frozenset[str]


def _span(g: Graph, edge_ids: Iterable[str]) -> set[str]:
    return {x for e in edge_ids for x in g.endpoints[e]}


def make_separation(g: Graph, s: Iterable[str]) -> TwoSeparation:
    """Build and validate the 2-separation whose S side is ``s``."""
    s = frozenset(s)
    unknown = s - set(g.edge_ids)
    if unknown:
        raise InvalidOperation(f"unknown edge ids: {sorted(unknown)}")
    t = frozenset(g.edge_ids) - s
    if len(s) < 2 or len(t) < 2:
        raise InvalidOperation("both sides of a 2-separation need at least two edges")
    shared = _span(g, s) & _span(g, t)
    if len(shared) != 2:
        raise InvalidOperation(f"sides share {len(shared)} vertices, expected 2")
    x, y = sorted(shared)
    return TwoSeparation(s, t, (x, y))


def _classes_at_pair(g: Graph, x: str, y: str) -> list[frozenset[str]]:
    """Edge classes relative to {x, y}: one per component of g - {x, y}, one per x-y edge."""
    pair = {x, y}
    classes: list[frozenset[str]] = []
    owner: dict[str, int] = {}
    for start in g.vertices:
        if start in pair or start in owner or not g.incidence[start]:
            continue
        k = len(classes)
        owner[start] = k
        stack = [start]
        edges: set[str] = set()
        while stack:
            a = stack.pop()
            for eid in g.incidence[a]:
                edges.add(eid)
                u, v = g.endpoints[eid]
                b = v if u == a else u
                if b not in pair and b not in owner:
                    owner[b] = k
                    stack.append(b)
        classes.append(frozenset(edges))
    classes += [frozenset([eid]) for eid, u, v in g.edges if {u, v} == pair]
    return classes


def enumerate_two_separations(g: Graph) -> list[TwoSeparation]:
    """Every 2-separation once; S holds the least edge id.

    The shared pair {x, y} of a 2-separation splits no edge class hanging
    off {x, y}, so S ranges over unions of those classes.
    """
    if g.n_edges < 4:
        return []
    all_edges = frozenset(g.edge_ids)
    least = min(g.edge_ids)
    seen: set[frozenset[str]] = set()
    out = []
    for x, y in itertools.combinations(g.vertices, 2):
        if not g.incidence[x] or not g.incidence[y]:
            continue
        classes = _classes_at_pair(g, x, y)
        if len(classes) < 2:
            continue
        # the class holding the least edge always sits on the S side
        first = next(i for i, c in enumerate(classes) if least in c)
        others = [c for i, c in enumerate(classes) if i != first]
        for r in range(len(others)):
            for combo in itertools.combinations(others, r):
                s = classes[first].union(*combo)
                t = all_edges - s
                if len(s) < 2 or len(t) < 2 or s in seen:
                    continue
                if _span(g, s) & _span(g, t) == {x, y}:
                    seen.add(s)
                    out.append(TwoSeparation(s, t, (x, y)))
    out.sort(key=lambda sep: (sorted(sep.s), sep.cut_pair))
    return out


def reversal(g: Graph, sep: TwoSeparation) -> Graph:
    """Swap, on the S side, which of the cut pair each edge attaches to."""
    check = make_separation(g, sep.s)
    if check.cut_pair != tuple(sorted(sep.cut_pair)):
        raise InvalidOperation("cut pair does not match the separation")
    x, y = check.cut_pair
    swap = {x: y, y: x}
    edges = []
    for eid, u, v in g.edges:
        if eid in sep.s:
            u, v = swap.get(u, u), swap.get(v, v)
        edges.append((eid, u, v))
    return Graph(g.vertices, tuple(edges))


def _excess_parallel(g: Graph) -> int:
    return sum(m - 1 for m in g.multiplicity.values())


def creates_parallel_edges(g: Graph, sep: TwoSeparation) -> bool:
    return _excess_parallel(reversal(g, sep)) > _excess_parallel(g)


def _branches(g: Graph, c: str) -> list[frozenset[str]]:
    """Edge sets of the pieces hanging off vertex c."""
    adj = adjacency(g)
    seen = {c}
    out = []
    for start in sorted(adj[c]):
        if start in seen:
            continue
        comp = {start}
        seen.add(start)
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.add(y)
                    stack.append(y)
        out.append(frozenset(e for e, u, v in g.edges if u in comp or v in comp))
    return out


def _fresh_vertex(g: Graph, base: str) -> str:
    name = base + "'"
    while name in g.vertices:
        name += "'"
    return name


def split(g: Graph, spec: SplitSpec) -> tuple[Graph, str]:
    """Detach ``spec.side`` from the cut vertex onto a fresh copy of it.

    ``side`` may list any edges of the branches to move; each branch it
    touches moves whole. Returns the new graph and the fresh vertex id.
    """
    c = spec.cut_vertex
    if c not in g.vertices:
        raise InvalidOperation(f"unknown vertex {c!r}")
    unknown = set(spec.side) - set(g.edge_ids)
    if unknown:
        raise InvalidOperation(f"unknown edge ids: {sorted(unknown)}")
    branches = _branches(g, c)
    if len(branches) < 2:
        raise InvalidOperation(f"{c!r} is not a cut vertex")
    moved = frozenset().union(*(b for b in branches if b & spec.side))
    if not moved or all(b <= moved for b in branches):
        raise InvalidOperation("split side must be a nonempty proper set of branches")
    new = _fresh_vertex(g, c)
    edges = []
    for eid, u, v in g.edges:
        if eid in moved:
            u, v = (new if u == c else u), (new if v == c else v)
        edges.append((eid, u, v))
    return Graph(g.vertices + (new,), tuple(edges)), new


def split_into_blocks(g: Graph) -> tuple[Graph, list[dict]]:
    """Split every cut vertex until components are blocks; returns ops too."""
    ops: list[dict] = []
    cur = g
    while True:
        cuts = sorted(block_decomposition(cur).cut_vertices)
        if not cuts:
            return cur, ops
        c = cuts[0]
        branch = _branches(cur, c)[-1]
        cur, new = split(cur, SplitSpec(c, branch))
        ops.append({"op": "split", "cut_vertex": c, "side": sorted(branch), "new_vertex": new})


def apply_ops(g: Graph, ops: Iterable[Mapping]) -> Graph:
    """Replay a JSON operation sequence."""
    cur = g
    for op in ops:
        kind = op.get("op")
        if kind == "reversal":
            sep = make_separation(cur, op["s"])
            if "cut_pair" in op and tuple(sorted(op["cut_pair"])) != sep.cut_pair:
                raise InvalidOperation("cut pair does not match the separation")
            cur = reversal(cur, sep)
        elif kind == "split":
            cur, new = split(cur, SplitSpec(op["cut_vertex"], frozenset(op["side"])))
            if "new_vertex" in op and op["new_vertex"] != new:
                cur = cur.relabel({new: op["new_vertex"]})
        else:
            raise InvalidOperation(f"unknown op {kind!r}")
    return cur


def _blocks(g: Graph) -> list[Graph]:
    return list(block_decomposition(g).blocks)


def _match_blocks(gb: list[Graph], hb: list[Graph]) -> bool:
    if len(gb) != len(hb):
        return False
    if Counter(map(invariant_key, gb)) != Counter(map(invariant_key, hb)):
        return False
    index = IsoClassIndex()
    counts: Counter = Counter()
    for b in gb:
        hit = index.find(b)
        rep = hit[0] if hit else b
        if hit is None:
            index.add(b)
        counts[rep] += 1
    for b in hb:
        hit = index.find(b)
        if hit is None or counts[hit[0]] == 0:
            return False
        counts[hit[0]] -= 1
    return True


def one_isomorphic(g: Graph, h: Graph) -> bool:
    """Same multiset of blocks up to isomorphism (isolated vertices ignored)."""
    return _match_blocks(_blocks(g), _blocks(h))


@dataclass
class SearchResult:
    status: str  # "true" | "false" | "unknown"
    ops: list[dict] = field(default_factory=list)
    h_ops: list[dict] = field(default_factory=list)
    vertex_map: dict[str, str] | None = None
    depth: int | None = None
    orbit_size: int = 0
    reason: str = ""

    def __bool__(self) -> bool:
        return self.status == "true"

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "ops": self.ops,
            "h_ops": self.h_ops,
            "vertex_map": self.vertex_map,
            "depth": self.depth,
            "orbit_size": self.orbit_size,
            "reason": self.reason,
        }


class _Orbit:
    """Lazily expanded BFS over the reversal orbit of one labeled graph."""

    def __init__(self, g: Graph, simple_only: bool) -> None:
        self.simple_only = simple_only
        self.nodes: list[tuple[Graph, tuple[TwoSeparation, ...], list[Graph]]] = []
        self.index = IsoClassIndex()
        self.expanded = 0
        self.lock = threading.Lock()
        self._add(g, ())

    def _add(self, g: Graph, path: tuple[TwoSeparation, ...]) -> bool:
        if not self.index.add(g):
            return False
        self.nodes.append((g, path, _blocks(g)))
        return True

    def node(self, i: int, max_depth: int | None, cap: int):
        """Node i in BFS order, or a status string when unavailable."""
        with self.lock:
            while i >= len(self.nodes):
                if self.expanded >= len(self.nodes):
                    return "exhausted"
                g, path, _ = self.nodes[self.expanded]
                if max_depth is not None and len(path) >= max_depth:
                    return "depth"
                for sep in enumerate_two_separations(g):
                    if self.simple_only and creates_parallel_edges(g, sep):
                        continue
                    self._add(reversal(g, sep), path + (sep,))
                    if len(self.nodes) > cap:
                        return "cap"
                self.expanded += 1
            # the orbit is shared between calls, so it may already hold deeper nodes
            if max_depth is not None and len(self.nodes[i][1]) > max_depth:
                return "depth"
            if i >= cap:
                return "cap"
            return self.nodes[i]


_ORBIT_CACHE: OrderedDict = OrderedDict()
_ORBIT_CACHE_SIZE = 512
_CACHE_LOCK = threading.Lock()


def _orbit_for(g: Graph, simple_only: bool) -> _Orbit:
    key = (g, simple_only)
    with _CACHE_LOCK:
        orbit = _ORBIT_CACHE.get(key)
        if orbit is None:
            orbit = _Orbit(g, simple_only)
            _ORBIT_CACHE[key] = orbit
            if len(_ORBIT_CACHE) > _ORBIT_CACHE_SIZE:
                _ORBIT_CACHE.popitem(last=False)
        else:
            _ORBIT_CACHE.move_to_end(key)
    return orbit


def two_isomorphic_search(
    g: Graph,
    h: Graph,
    max_depth: int | None = DEFAULT_MAX_DEPTH,
    orbit_cap: int = DEFAULT_ORBIT_CAP,
    simple_only: bool = False,
) -> SearchResult:
    """Breadth-first search of g's reversal orbit for a graph 1-isomorphic to h.

    ``max_depth=None`` explores until the orbit is exhausted (or the cap hits).
    """
    if g.n_edges != h.n_edges:
        return SearchResult("false", reason="edge counts differ")
    hb = _blocks(h)
    orbit = _orbit_for(g, simple_only)
    i = 0
    while True:
        item = orbit.node(i, max_depth, orbit_cap)
        if item == "exhausted":
            return SearchResult("false", orbit_size=len(orbit.nodes), reason="orbit exhausted")
        if item == "depth":
            return SearchResult(
                "unknown", orbit_size=len(orbit.nodes), reason=f"depth cap {max_depth} reached"
            )
        if item == "cap":
            return SearchResult(
                "unknown", orbit_size=len(orbit.nodes), reason=f"orbit cap {orbit_cap} exceeded"
            )
        node, path, blocks = item
        if _match_blocks(blocks, hb):
            return _witness(g, h, node, path, len(orbit.nodes))
        i += 1


def _witness(
    g: Graph, h: Graph, node: Graph, path: tuple[TwoSeparation, ...], orbit_size: int
) -> SearchResult:
    ops = [sep.to_op() for sep in path]
    g_split, g_ops = split_into_blocks(node)
    h_split, h_ops = split_into_blocks(h)
    rho = graph_isomorphic(g_split.without_isolated(), h_split.without_isolated())
    return SearchResult(
        "true",
        ops=ops + g_ops,
        h_ops=h_ops,
        vertex_map=rho,
        depth=len(path),
        orbit_size=orbit_size,
        reason="found",
    )


def verify_search_witness(g: Graph, h: Graph, result: SearchResult) -> bool:
    """Replay a positive search result and check the final isomorphism."""
    if result.status != "true" or result.vertex_map is None:
        return False
    a = apply_ops(g, result.ops).without_isolated()
    b = apply_ops(h, result.h_ops).without_isolated()
    return verify_vertex_bijection(a, b, result.vertex_map)


def two_isomorphic(g: Graph, h: Graph, cap: int = DEFAULT_CYCLE_CAP) -> dict[str, str] | None:
    """2-isomorphism certificate: a cycle-preserving edge bijection, or None."""
    return cycle_isomorphic(g, h, cap=cap)
