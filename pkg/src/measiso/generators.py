"""Graph families for experiments: exhaustive small multigraphs and random draws."""

from __future__ import annotations

import itertools

import numpy as np

from .graph import Graph, IsoClassIndex, cut_vertices, is_connected
from .whitney import SplitSpec, _branches, enumerate_two_separations, reversal, split


def connected_multigraphs(n_edges: int) -> list[Graph]:
    """All connected loopless multigraphs with exactly n_edges edges, up to isomorphism.

    Grown one edge at a time: every such graph arises from a smaller one by
    adding an edge between existing vertices or a pendant edge.
    """
    if n_edges < 1:
        return []
    level = [Graph.from_edges([("0", "1")])]
    for k in range(1, n_edges):
        index = IsoClassIndex()
        for g in level:
            verts = list(g.vertices)
            fresh = str(len(verts))
            cands = [(a, b) for a, b in itertools.combinations(verts, 2)]
            cands += [(a, fresh) for a in verts]
            for a, b in cands:
                index.add(Graph.from_edges(list(g.edges) + [(f"e{k}", a, b)]))
        level = [rep for rep, _ in index.items()]
    return sorted(level, key=lambda g: (g.n_vertices, g.to_text()))


def random_connected_graph(
    rng: np.random.Generator, n_vertices: int, p: float, multigraph: bool = False, max_tries: int = 1000
) -> Graph:
    """Erdos-Renyi G(n, p) conditioned on connectivity.

    With ``multigraph`` each present pair gets an extra parallel edge with
    probability p/2.
    """
    for _ in range(max_tries):
        edges = []
        for a, b in itertools.combinations(range(n_vertices), 2):
            if rng.random() < p:
                edges.append((f"v{a}", f"v{b}"))
                if multigraph and rng.random() < p / 2:
                    edges.append((f"v{a}", f"v{b}"))
        g = Graph.from_edges(edges, vertices=[f"v{i}" for i in range(n_vertices)])
        if g.n_edges and is_connected(g):
            return g
    raise RuntimeError("could not draw a connected graph")


def random_forest(rng: np.random.Generator, n_edges: int) -> Graph:
    """Random forest with n_edges edges (between one and three trees)."""
    n_trees = int(rng.integers(1, 4))
    n_vertices = n_edges + n_trees
    roots = {0} | set(rng.choice(np.arange(1, n_vertices), size=n_trees - 1, replace=False).tolist())
    edges = [(f"v{int(rng.integers(v))}", f"v{v}") for v in range(1, n_vertices) if v not in roots]
    return Graph.from_edges(edges, vertices=[f"v{i}" for i in range(n_vertices)])


def shuffled_copy(g: Graph, rng: np.random.Generator, vprefix: str = "w", eprefix: str = "f") -> Graph:
    """Isomorphic copy with fresh, randomly assigned vertex and edge ids."""
    vperm = rng.permutation(g.n_vertices)
    eperm = rng.permutation(g.n_edges)
    vm = {v: f"{vprefix}{int(vperm[i])}" for i, v in enumerate(g.vertices)}
    em = {e: f"{eprefix}{int(eperm[i])}" for i, e in enumerate(g.edge_ids)}
    return g.relabel(vm, em)


def scramble(
    g: Graph, rng: np.random.Generator, n_ops: int, with_splits: bool = True
) -> tuple[Graph, list[dict]]:
    """Apply random reversals (and splits) to g; edge ids are preserved."""
    ops: list[dict] = []
    cur = g
    for _ in range(n_ops):
        seps = enumerate_two_separations(cur)
        cuts = sorted(cut_vertices(cur)) if with_splits else []
        choices = [("r", s) for s in seps] + [("s", c) for c in cuts]
        if not choices:
            break
        kind, item = choices[int(rng.integers(len(choices)))]
        if kind == "r":
            cur = reversal(cur, item)
            ops.append(item.to_op())
        else:
            branches = _branches(cur, item)
            side = branches[int(rng.integers(len(branches)))]
            cur, new = split(cur, SplitSpec(item, side))
            ops.append({"op": "split", "cut_vertex": item, "side": sorted(side), "new_vertex": new})
    return cur, ops


def is_three_connected(g: Graph) -> bool:
    """Simple graph, at least 4 vertices, connected after removing any two vertices."""
    if g.n_vertices < 4 or any(m > 1 for m in g.multiplicity.values()):
        return False
    for pair in itertools.combinations(g.vertices, 2):
        rest = [v for v in g.vertices if v not in pair]
        sub = Graph(tuple(rest), tuple(e for e in g.edges if e[1] not in pair and e[2] not in pair))
        if not is_connected(sub):
            return False
    return is_connected(g)


def random_three_connected(rng: np.random.Generator, n_vertices: int, p: float = 0.6) -> Graph:
    for _ in range(10000):
        g = random_connected_graph(rng, n_vertices, p)
        if is_three_connected(g):
            return g
    raise RuntimeError("could not draw a 3-connected graph")


def complete_graph(n: int) -> Graph:
    return Graph.from_edges([(f"v{a}", f"v{b}") for a, b in itertools.combinations(range(n), 2)])


def cycle_graph(k: int) -> Graph:
    return Graph.from_edges([(f"v{i}", f"v{(i + 1) % k}") for i in range(k)])
