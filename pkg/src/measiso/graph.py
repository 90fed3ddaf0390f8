"""Labeled multigraphs: parsing, blocks, edge deletion and isomorphism.

Vertices and edges carry opaque string ids. Parallel edges are allowed,
self-loops are not.
"""

from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping


class GraphError(ValueError):
    """Raised for malformed graphs or graph text."""


@dataclass(frozen=True)
class Graph:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, str], ...]  # (edge-id, u, v) with u < v

    def __post_init__(self) -> None:
        verts = tuple(sorted(set(self.vertices)))
        vset = set(verts)
        seen = set()
        norm = []
        for eid, u, v in self.edges:
            if eid in seen:
                raise GraphError(f"duplicate edge id {eid!r}")
            seen.add(eid)
            if u == v:
                raise GraphError(f"self-loop at {u!r} (edge {eid!r})")
            if u not in vset or v not in vset:
                raise GraphError(f"edge {eid!r} uses an undeclared vertex")
            norm.append((eid, *sorted((u, v))))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", tuple(norm))

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[tuple[str, str] | tuple[str, str, str]],
        vertices: Iterable[str] = (),
    ) -> Graph:
        """Build a graph from ``(u, v)`` or ``(id, u, v)`` tuples.

        Unnamed edges get ids ``e0, e1, ...`` by position.
        """
        out = []
        verts = set(vertices)
        for i, item in enumerate(edges):
            if len(item) == 2:
                eid, (u, v) = f"e{i}", item
            else:
                eid, u, v = item
            out.append((str(eid), str(u), str(v)))
            verts.update((str(u), str(v)))
        return cls(tuple(verts), tuple(out))

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(eid for eid, _, _ in self.edges)

    @cached_property
    def endpoints(self) -> dict[str, tuple[str, str]]:
        return {eid: (u, v) for eid, u, v in self.edges}

    @cached_property
    def incidence(self) -> dict[str, list[str]]:
        """Vertex -> ids of incident edges."""
        inc: dict[str, list[str]] = {x: [] for x in self.vertices}
        for eid, u, v in self.edges:
            inc[u].append(eid)
            inc[v].append(eid)
        return inc

    @cached_property
    def multiplicity(self) -> Counter:
        """Unordered vertex pair -> number of parallel edges."""
        return Counter((u, v) for _, u, v in self.edges)

    def degree(self, x: str) -> int:
        return len(self.incidence[x])

    def non_isolated(self) -> tuple[str, ...]:
        return tuple(x for x in self.vertices if self.incidence[x])

    def subgraph(self, edge_ids: Iterable[str]) -> Graph:
        """Graph induced by an edge subset (vertices = endpoints only)."""
        keep = set(edge_ids)
        unknown = keep - set(self.edge_ids)
        if unknown:
            raise GraphError(f"unknown edge ids: {sorted(unknown)}")
        edges = tuple(e for e in self.edges if e[0] in keep)
        verts = {x for _, u, v in edges for x in (u, v)}
        return Graph(tuple(verts), edges)

    def without_isolated(self) -> Graph:
        return Graph(self.non_isolated(), self.edges)

    def relabel(
        self,
        vertex_map: Mapping[str, str] | None = None,
        edge_map: Mapping[str, str] | None = None,
    ) -> Graph:
        vm = vertex_map or {}
        em = edge_map or {}
        return Graph(
            tuple(vm.get(x, x) for x in self.vertices),
            tuple((em.get(e, e), vm.get(u, u), vm.get(v, v)) for e, u, v in self.edges),
        )

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [{"id": e, "u": u, "v": v} for e, u, v in self.edges],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> Graph:
        try:
            edges = tuple((str(d["id"]), str(d["u"]), str(d["v"])) for d in data["edges"])
            verts = {str(x) for x in data.get("vertices", ())}
        except (KeyError, TypeError) as exc:
            raise GraphError(f"bad graph JSON: {exc}") from None
        verts.update(x for _, u, v in edges for x in (u, v))
        return cls(tuple(verts), edges)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_text(self) -> str:
        lines = [f"{e}: {u} {v}" for e, u, v in self.edges]
        lines += [x for x in self.vertices if not self.incidence[x]]
        return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    """Parse edge-list text.

    Each non-blank line is ``u v`` or ``<id>: u v``; ``#`` starts a comment.
    A line with a single token declares an isolated vertex.
    """
    named: list[tuple[str | None, str, str]] = []
    verts: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        eid = None
        if ":" in line:
            head, line = line.split(":", 1)
            eid = head.strip()
            if not eid:
                raise GraphError(f"line {lineno}: empty edge id")
        toks = line.split()
        if len(toks) == 1 and eid is None:
            verts.add(toks[0])
            continue
        if len(toks) != 2:
            raise GraphError(f"line {lineno}: expected 'u v', got {raw!r}")
        u, v = toks
        if u == v:
            raise GraphError(f"line {lineno}: self-loop at {u!r}")
        named.append((eid, u, v))

    used = {e for e, _, _ in named if e is not None}
    if len(used) != sum(e is not None for e, _, _ in named):
        dup = [e for e, c in Counter(e for e, _, _ in named if e).items() if c > 1]
        raise GraphError(f"duplicate edge id {dup[0]!r}")
    edges = []
    for i, (eid, u, v) in enumerate(named):
        if eid is None:
            eid = f"e{i}"
            if eid in used:
                raise GraphError(f"auto-assigned id {eid!r} collides with a named edge")
        edges.append((eid, u, v))
        verts.update((u, v))
    return Graph(tuple(verts), tuple(edges))


def load_graph(path: str) -> Graph:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        try:
            return Graph.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise GraphError(f"{path}: {exc}") from None
    return parse_graph(text)


def _components(vertices: Iterable[str], adj: Mapping[str, Iterable[str]]) -> list[set[str]]:
    seen: set[str] = set()
    comps = []
    for s in vertices:
        if s in seen:
            continue
        comp = {s}
        stack = [s]
        seen.add(s)
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.add(y)
                    stack.append(y)
        comps.append(comp)
    return comps


def adjacency(g: Graph) -> dict[str, list[str]]:
    adj: dict[str, list[str]] = {x: [] for x in g.vertices}
    for _, u, v in g.edges:
        adj[u].append(v)
        adj[v].append(u)
    return adj


def connected_components(g: Graph) -> list[set[str]]:
    return _components(g.vertices, adjacency(g))


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) <= 1


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[Graph, ...]
    cut_vertices: frozenset[str] = field(default_factory=frozenset)


def _biconnected_edge_sets(g: Graph) -> tuple[list[list[str]], set[str]]:
    """Hopcroft-Tarjan over edge ids, so parallel edges land in one block."""
    disc: dict[str, int] = {}
    low: dict[str, int] = {}
    blocks: list[list[str]] = []
    cuts: set[str] = set()
    counter = 0
    for root in g.vertices:
        if root in disc or not g.incidence[root]:
            continue
        disc[root] = low[root] = counter
        counter += 1
        root_children = 0
        edge_stack: list[str] = []
        # frames: (vertex, edge used to enter, iterator over incident edges)
        stack = [(root, None, iter(g.incidence[root]))]
        while stack:
            x, via, it = stack[-1]
            advanced = False
            for eid in it:
                if eid == via:
                    continue
                u, v = g.endpoints[eid]
                y = v if u == x else u
                if y not in disc:
                    edge_stack.append(eid)
                    disc[y] = low[y] = counter
                    counter += 1
                    stack.append((y, eid, iter(g.incidence[y])))
                    advanced = True
                    break
                if disc[y] < disc[x]:
                    edge_stack.append(eid)
                    low[x] = min(low[x], disc[y])
            if advanced:
                continue
            stack.pop()
            if not stack:
                continue
            parent = stack[-1][0]
            low[parent] = min(low[parent], low[x])
            if low[x] >= disc[parent]:
                if parent == root:
                    root_children += 1
                else:
                    cuts.add(parent)
                block = []
                while True:
                    eid = edge_stack.pop()
                    block.append(eid)
                    if eid == via:
                        break
                blocks.append(block)
        if root_children >= 2:
            cuts.add(root)
    return blocks, cuts


def block_decomposition(g: Graph) -> BlockDecomposition:
    edge_sets, cuts = _biconnected_edge_sets(g)
    order = {eid: i for i, eid in enumerate(g.edge_ids)}
    edge_sets.sort(key=lambda b: min(order[e] for e in b))
    return BlockDecomposition(tuple(g.subgraph(b) for b in edge_sets), frozenset(cuts))


def cut_vertices(g: Graph) -> set[str]:
    return set(_biconnected_edge_sets(g)[1])


def is_forest(g: Graph) -> bool:
    # a graph is a forest iff e = v - (#components)
    return g.n_edges == g.n_vertices - len(connected_components(g))


def delete_edges(g: Graph, remove: Iterable[str]) -> Graph:
    drop = set(remove)
    unknown = drop - set(g.edge_ids)
    if unknown:
        raise GraphError(f"unknown edge ids: {sorted(unknown)}")
    return Graph(g.vertices, tuple(e for e in g.edges if e[0] not in drop))


def _refine_colors(g: Graph, rounds: int | None = None) -> dict[str, int]:
    """Colour refinement seeded by degree; colours are isomorphism-invariant ints."""
    colors = {x: g.degree(x) for x in g.vertices}
    mult = g.multiplicity
    nbrs: dict[str, list[tuple[str, int]]] = defaultdict(list)
    for (u, v), m in mult.items():
        nbrs[u].append((v, m))
        nbrs[v].append((u, m))
    n_classes = len(set(colors.values()))
    for _ in range(rounds if rounds is not None else len(g.vertices)):
        sigs = {
            x: (colors[x], tuple(sorted((colors[y], m) for y, m in nbrs[x])))
            for x in g.vertices
        }
        palette = {s: i for i, s in enumerate(sorted(set(sigs.values())))}
        new = {x: palette[sigs[x]] for x in g.vertices}
        # colours must stay comparable across graphs, so keep the signature order
        colors = new
        if len(palette) == n_classes:
            break
        n_classes = len(palette)
    return colors


def invariant_key(g: Graph) -> tuple:
    """Cheap isomorphism invariant (equal for isomorphic graphs)."""
    degs = tuple(sorted(g.degree(x) for x in g.vertices))
    pair_mults = tuple(
        sorted(
            (min(g.degree(u), g.degree(v)), max(g.degree(u), g.degree(v)), m)
            for (u, v), m in g.multiplicity.items()
        )
    )
    return (g.n_vertices, g.n_edges, degs, pair_mults)


def graph_isomorphic(g: Graph, h: Graph) -> dict[str, str] | None:
    """Return a vertex bijection g -> h preserving edge multiplicities, or None."""
    if invariant_key(g) != invariant_key(h):
        return None
    if g.n_vertices == 0:
        return {}
    gm, hm = g.multiplicity, h.multiplicity

    def mult(m: Counter, a: str, b: str) -> int:
        return m.get((a, b) if a < b else (b, a), 0)

    g_adj: dict[str, set[str]] = defaultdict(set)
    for u, v in gm:
        g_adj[u].add(v)
        g_adj[v].add(u)
    h_adj: dict[str, set[str]] = defaultdict(set)
    for u, v in hm:
        h_adj[u].add(v)
        h_adj[v].add(u)

    # joint colour refinement over the disjoint union keeps colours comparable
    union = Graph(
        tuple(f"g:{x}" for x in g.vertices) + tuple(f"h:{x}" for x in h.vertices),
        tuple((f"g:{e}", f"g:{u}", f"g:{v}") for e, u, v in g.edges)
        + tuple((f"h:{e}", f"h:{u}", f"h:{v}") for e, u, v in h.edges),
    )
    colors = _refine_colors(union)
    gc = {x: colors[f"g:{x}"] for x in g.vertices}
    hc = {x: colors[f"h:{x}"] for x in h.vertices}
    if Counter(gc.values()) != Counter(hc.values()):
        return None

    # order: rarest colour first, then prefer vertices adjacent to already-ordered ones
    class_size = Counter(gc.values())
    order: list[str] = []
    remaining = set(g.vertices)
    while remaining:
        placed = set(order)
        best = min(
            remaining,
            key=lambda x: (-len(g_adj[x] & placed), class_size[gc[x]], -g.degree(x), x),
        )
        order.append(best)
        remaining.remove(best)

    by_color: dict[int, list[str]] = defaultdict(list)
    for y in sorted(h.vertices):
        by_color[hc[y]].append(y)

    fwd: dict[str, str] = {}
    used: set[str] = set()

    def feasible(x: str, y: str) -> bool:
        for xp, yp in fwd.items():
            if mult(gm, x, xp) != mult(hm, y, yp):
                return False
        return True

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        x = order[i]
        for y in by_color[gc[x]]:
            if y in used or not feasible(x, y):
                continue
            fwd[x] = y
            used.add(y)
            if extend(i + 1):
                return True
            del fwd[x]
            used.discard(y)
        return False

    return dict(fwd) if extend(0) else None


def verify_vertex_bijection(g: Graph, h: Graph, rho: Mapping[str, str]) -> bool:
    if set(rho) != set(g.vertices) or sorted(rho.values()) != sorted(h.vertices):
        return False
    mapped = Counter(tuple(sorted((rho[u], rho[v]))) for _, u, v in g.edges)
    return mapped == h.multiplicity


def edge_map_from_vertex_map(g: Graph, h: Graph, rho: Mapping[str, str]) -> dict[str, str]:
    """Pair up edges of g and h consistently with a vertex isomorphism."""
    pool: dict[tuple[str, str], list[str]] = defaultdict(list)
    for eid, u, v in h.edges:
        pool[(u, v)].append(eid)
    out = {}
    for eid, u, v in g.edges:
        a, b = sorted((rho[u], rho[v]))
        out[eid] = pool[(a, b)].pop(0)
    return out


class IsoClassIndex:
    """Buckets graphs by invariant key; dedups up to isomorphism."""

    def __init__(self) -> None:
        self._buckets: dict[tuple, list[tuple[Graph, object]]] = defaultdict(list)

    def __len__(self) -> int:
        return sum(len(b) for b in self._buckets.values())

    def find(self, g: Graph):
        for rep, payload in self._buckets[invariant_key(g)]:
            if graph_isomorphic(g, rep) is not None:
                return rep, payload
        return None

    def add(self, g: Graph, payload: object = None) -> bool:
        """Insert g unless an isomorphic graph is present; True if inserted."""
        if self.find(g) is not None:
            return False
        self._buckets[invariant_key(g)].append((g, payload))
        return True

    def items(self):
        for bucket in self._buckets.values():
            yield from bucket
