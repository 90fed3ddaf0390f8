import itertools

import networkx as nx
import pytest
from hypothesis import strategies as st

from measiso.graph import Graph

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def G(text: str) -> Graph:
    """Whitespace-separated 'uv' pairs, e.g. G('ab bc ca')."""
    return Graph.from_edges([(tok[0], tok[1]) for tok in text.split()])


@pytest.fixture
def triangle():
    return G("ab ac bc")


@pytest.fixture
def path3():
    return G("ab bc cd")


@pytest.fixture
def k4():
    return G("ab ac ad bc bd cd")


@pytest.fixture
def bowtie():
    return G("ab bm ma mc cd dm")


def to_nx(g: Graph) -> nx.MultiGraph:
    m = nx.MultiGraph()
    m.add_nodes_from(g.vertices)
    for eid, u, v in g.edges:
        m.add_edge(u, v, key=eid)
    return m


def brute_cycles_via_subdivision(g: Graph) -> set[frozenset[str]]:
    """Cycles of a multigraph as edge sets, via networkx on the subdivided simple graph."""
    s = nx.Graph()
    s.add_nodes_from(g.vertices)
    for eid, u, v in g.edges:
        mid = ("mid", eid)
        s.add_edge(u, mid)
        s.add_edge(mid, v)
    out = set()
    for cyc in nx.simple_cycles(s):
        out.add(frozenset(n[1] for n in cyc if isinstance(n, tuple) and n[0] == "mid"))
    return out


def brute_components_without(g: Graph, drop: set[str]) -> int:
    h = nx.Graph()
    h.add_nodes_from(v for v in g.vertices if v not in drop)
    h.add_edges_from((u, v) for _, u, v in g.edges if u not in drop and v not in drop)
    return nx.number_connected_components(h)


def brute_cycle_isomorphic(g: Graph, h: Graph) -> bool:
    """Exhaustive over all e! edge bijections."""
    if g.n_edges != h.n_edges:
        return False
    gc = brute_cycles_via_subdivision(g)
    hc = brute_cycles_via_subdivision(h)
    if len(gc) != len(hc):
        return False
    hs = list(h.edge_ids)
    gs = list(g.edge_ids)
    for perm in itertools.permutations(hs):
        m = dict(zip(gs, perm))
        if all(frozenset(m[e] for e in c) in hc for c in gc):
            return True
    return False


@st.composite
def multigraphs(draw, min_vertices=2, max_vertices=6, max_edges=9, connected=False):
    n = draw(st.integers(min_vertices, max_vertices))
    verts = [f"v{i}" for i in range(n)]
    pairs = list(itertools.combinations(verts, 2))
    chosen = draw(st.lists(st.sampled_from(pairs), min_size=0, max_size=max_edges))
    if connected:
        # a spanning path keeps it connected
        chosen = [(verts[i], verts[i + 1]) for i in range(n - 1)] + chosen[: max(0, max_edges - (n - 1))]
    return Graph.from_edges(chosen, vertices=verts)
