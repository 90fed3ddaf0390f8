"""Circuits of a multigraph and cycle isomorphism.

A cycle is stored as a frozenset of edge ids. Two parallel edges form a
cycle of length 2.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from typing import Iterable, Mapping

from .graph import Graph, GraphError

DEFAULT_CYCLE_CAP = 10**6


class CycleCapExceeded(RuntimeError):
    """More cycles than the configured cap; enumeration refused."""


def is_cycle_subset(g: Graph, s: Iterable[str]) -> bool:
    s = set(s)
    unknown = s - set(g.edge_ids)
    if unknown:
        raise GraphError(f"unknown edge ids: {sorted(unknown)}")
    if len(s) < 2:
        return False
    deg: Counter = Counter()
    adj: dict[str, set[str]] = defaultdict(set)
    for eid in s:
        u, v = g.endpoints[eid]
        deg[u] += 1
        deg[v] += 1
        adj[u].add(v)
        adj[v].add(u)
    if any(d != 2 for d in deg.values()):
        return False
    # connected + all degrees 2 <=> single cycle
    start = next(iter(adj))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x] - seen:
            seen.add(y)
            stack.append(y)
    return len(seen) == len(deg)


def enumerate_cycles(g: Graph, cap: int = DEFAULT_CYCLE_CAP) -> frozenset[frozenset[str]]:
    """All circuits of g as edge-id sets.

    Each circuit is generated once, from its lowest-indexed edge {u, v}, as a
    simple u -> v path over strictly higher-indexed edges.
    """
    index = {eid: i for i, eid in enumerate(g.edge_ids)}
    inc = g.incidence
    found: list[frozenset[str]] = []

    for i, (eid0, u, v) in enumerate(g.edges):
        path_edges = [eid0]
        on_path = {u}

        # iterative DFS from u to v over edges with index > i
        stack = [(u, iter(inc[u]))]
        while stack:
            x, it = stack[-1]
            moved = False
            for eid in it:
                if index[eid] <= i:
                    continue
                a, b = g.endpoints[eid]
                y = b if a == x else a
                if y == v:
                    found.append(frozenset(path_edges[1:] + [eid, eid0]))
                    if len(found) > cap:
                        raise CycleCapExceeded(f"more than {cap} cycles")
                    continue
                if y in on_path:
                    continue
                on_path.add(y)
                path_edges.append(eid)
                stack.append((y, iter(inc[y])))
                moved = True
                break
            if not moved:
                stack.pop()
                if len(path_edges) > 1 and stack:
                    path_edges.pop()
                    on_path.discard(x)
    return frozenset(found)


def edge_cycle_signature(g: Graph, cycles: Iterable[frozenset[str]]) -> dict[str, tuple[int, ...]]:
    """Edge id -> sorted lengths of the cycles through it."""
    lens: dict[str, list[int]] = {eid: [] for eid in g.edge_ids}
    for c in cycles:
        for eid in c:
            lens[eid].append(len(c))
    return {eid: tuple(sorted(ls)) for eid, ls in lens.items()}


def verify_cycle_bijection(
    g: Graph,
    h: Graph,
    sigma: Mapping[str, str],
    g_cycles: frozenset[frozenset[str]] | None = None,
    h_cycles: frozenset[frozenset[str]] | None = None,
) -> bool:
    """Check sigma is a bijection E(g) -> E(h) mapping cycles onto cycles."""
    if set(sigma) != set(g.edge_ids) or sorted(sigma.values()) != sorted(h.edge_ids):
        return False
    gc = enumerate_cycles(g) if g_cycles is None else g_cycles
    hc = enumerate_cycles(h) if h_cycles is None else h_cycles
    image = {frozenset(sigma[e] for e in c) for c in gc}
    return image == set(hc)


def cycle_isomorphic(
    g: Graph, h: Graph, cap: int = DEFAULT_CYCLE_CAP
) -> dict[str, str] | None:
    """Find an edge bijection g -> h preserving cycles in both directions."""
    if g.n_edges != h.n_edges:
        return None
    gc = enumerate_cycles(g, cap)
    hc = enumerate_cycles(h, cap)
    if len(gc) != len(hc):
        return None
    if Counter(map(len, gc)) != Counter(map(len, hc)):
        return None
    gsig = edge_cycle_signature(g, gc)
    hsig = edge_cycle_signature(h, hc)
    if Counter(gsig.values()) != Counter(hsig.values()):
        return None

    g_through: dict[str, list[frozenset[str]]] = defaultdict(list)
    for c in gc:
        for eid in c:
            g_through[eid].append(c)
    h_through: dict[str, list[frozenset[str]]] = defaultdict(list)
    for c in hc:
        for eid in c:
            h_through[eid].append(c)

    # most constrained edges first; then keep cycle-mates close together
    base = sorted(g.edge_ids, key=lambda e: (-len(gsig[e]), min(gsig[e], default=0), e))
    order: list[str] = []
    remaining = list(base)
    while remaining:
        placed = set(order)

        def closeness(e: str) -> int:
            return sum(len(c & placed) for c in g_through[e])

        best = max(remaining, key=lambda e: (closeness(e), -remaining.index(e)))
        order.append(best)
        remaining.remove(best)

    candidates: dict[tuple[int, ...], list[str]] = defaultdict(list)
    for eid in sorted(h.edge_ids):
        candidates[hsig[eid]].append(eid)

    fwd: dict[str, str] = {}
    bwd: dict[str, str] = {}

    def consistent(x: str, y: str) -> bool:
        for c in g_through[x]:
            if all(e in fwd for e in c):
                if frozenset(fwd[e] for e in c) not in hc:
                    return False
        for c in h_through[y]:
            if all(e in bwd for e in c):
                if frozenset(bwd[e] for e in c) not in gc:
                    return False
        return True

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        x = order[i]
        for y in candidates[gsig[x]]:
            if y in bwd:
                continue
            fwd[x] = y
            bwd[y] = x
            if consistent(x, y) and extend(i + 1):
                return True
            del fwd[x]
            del bwd[y]
        return False

    return dict(fwd) if extend(0) else None
