"""Desk-scale certificates that a graph has no ``K_t`` minor.

``t <= 4`` use exact polynomial reductions (forests, series-parallel
reduction). Larger ``t`` accept planarity as a certificate for ``t >= 5`` and
otherwise run an exhaustive contraction search limited to ``cap`` vertices.
"""

from __future__ import annotations

from lidcolor.errors import CapacityError
from lidcolor.graph import Graph, components, iter_bits

MINOR_CAP = 12


def _is_forest(g: Graph) -> bool:
    return g.m == g.n - len(components(g))


def _series_parallel_reducible(g: Graph) -> bool:
    adj = {v: set(g.neighbors(v)) for v in range(g.n)}
    queue = [v for v in adj if len(adj[v]) <= 2]
    while queue:
        v = queue.pop()
        if v not in adj or len(adj[v]) > 2:
            continue
        nbrs = adj.pop(v)
        for w in nbrs:
            adj[w].discard(v)
        if len(nbrs) == 2:
            a, b = nbrs
            adj[a].add(b)
            adj[b].add(a)
        queue += [w for w in nbrs if len(adj[w]) <= 2]
    return not adj


def _has_clique(masks: dict[int, int], t: int) -> bool:
    def grow(cand: int, need: int) -> bool:
        if need == 0:
            return True
        if cand.bit_count() < need:
            return False
        for v in iter_bits(cand):
            if grow(cand & masks[v] & ~((1 << v + 1) - 1), need - 1):
                return True
        return False

    return grow(sum(1 << v for v in masks), t)


def _exhaustive(g: Graph, t: int) -> bool:
    need_edges = t * (t - 1) // 2
    seen: set[frozenset[tuple[int, int]]] = set()

    def search(masks: dict[int, int]) -> bool:
        # leaves and degree-2 vertices never matter for t >= 4
        changed = True
        while changed:
            changed = False
            for v in list(masks):
                d = masks[v].bit_count()
                if d <= 1 or (d == 2 and t >= 4):
                    nb = list(iter_bits(masks.pop(v)))
                    for w in nb:
                        masks[w] &= ~(1 << v)
                    if d == 2:
                        a, b = nb
                        masks[a] |= 1 << b
                        masks[b] |= 1 << a
                    changed = True
        if len(masks) < t or sum(m.bit_count() for m in masks.values()) // 2 < need_edges:
            return False
        key = frozenset(masks.items())
        if key in seen:
            return False
        seen.add(key)
        if _has_clique(masks, t):
            return True
        if len(masks) == t:
            return False
        for u in sorted(masks):
            for v in iter_bits(masks[u]):
                if v < u:
                    continue
                merged = dict(masks)
                nb = (merged.pop(v) | merged[u]) & ~(1 << u | 1 << v)
                merged[u] = nb
                for w in list(merged):
                    if w != u and merged[w] >> v & 1:
                        merged[w] = (merged[w] & ~(1 << v)) | 1 << u
                if search(merged):
                    return True
        return False

    return search({v: g.adj(v) for v in range(g.n)})


def has_clique_minor(g: Graph, t: int, cap: int = MINOR_CAP) -> bool:
    """True iff ``K_t`` is a minor of ``g``."""
    if t <= 1:
        return g.n >= t
    if t == 2:
        return g.m > 0
    if t == 3:
        return not _is_forest(g)
    if t == 4:
        return not _series_parallel_reducible(g)
    if g.n < t:
        return False
    import networkx as nx

    if nx.check_planarity(g.to_networkx())[0]:
        return False
    if g.n > cap:
        raise CapacityError(f"K_{t} minor search is limited to {cap} vertices, graph has {g.n}")
    return _exhaustive(g, t)
