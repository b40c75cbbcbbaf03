"""Independent reference implementations used as test oracles.

Nothing here imports the solver modules it checks: colorings are judged by
the textbook definition on Python sets, and tree-depth comes from enumerating
every rooted forest on up to seven labeled vertices.
"""

from __future__ import annotations

import heapq
import itertools
import random
from functools import lru_cache

import numpy as np

from lidcolor.graph import Graph

TABLE_N = 7
PAIRS = list(itertools.combinations(range(TABLE_N), 2))
PAIR_BIT = {p: 1 << i for i, p in enumerate(PAIRS)}


def _edge_set(g: Graph) -> set[tuple[int, int]]:
    out = set()
    for u, v in g.edges():
        out.add((u, v))
        out.add((v, u))
    return out


def lid_by_definition(g: Graph, colors) -> bool:
    """Proper, and adjacent non-twins see different color sets."""
    edges = _edge_set(g)
    closed = {v: {v} | {w for w in range(g.n) if (v, w) in edges} for v in range(g.n)}
    for u, v in g.edges():
        if colors[u] == colors[v]:
            return False
        if closed[u] != closed[v]:
            if {colors[w] for w in closed[u]} == {colors[w] for w in closed[v]}:
                return False
    return True


def set_partitions(n: int):
    """Restricted growth strings: every partition of range(n) exactly once."""
    if n == 0:
        yield []
        return

    def rec(i, labels, top):
        if i == n:
            yield list(labels)
            return
        for c in range(top + 1):
            labels.append(c)
            yield from rec(i + 1, labels, max(top, c + 1))
            labels.pop()

    yield from rec(1, [0], 1)


def chi_lid_brute(g: Graph) -> int:
    return min(max(p) + 1 for p in set_partitions(g.n) if lid_by_definition(g, p)) if g.n else 0


def chi_brute(g: Graph) -> int:
    edges = g.edges()
    return min(max(p) + 1 for p in set_partitions(g.n) if all(p[u] != p[v] for u, v in edges)) if g.n else 0


def _prufer_decode(seq: list[int], size: int) -> list[tuple[int, int]]:
    degree = [1] * size
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(size) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return edges


@lru_cache(maxsize=1)
def forest_td_table() -> np.ndarray:
    """``table[edge_mask]`` = tree-depth of the graph on 7 vertices with those edges.

    Every rooted forest on 7 labeled vertices is a labeled tree on 8 vertices
    rooted at the extra vertex 7; all 8**6 Pruefer sequences are decoded, and
    each closure is marked with its height. A graph's tree-depth is the least
    height over closures containing it, filled in by a superset-minimum sweep.
    """
    n, root = TABLE_N, TABLE_N
    pair_mask = [[0] * (1 << n) for _ in range(n)]
    for v in range(n):
        for anc in range(1 << n):
            m = 0
            for a in range(n):
                if anc >> a & 1 and a != v:
                    m |= PAIR_BIT[(min(a, v), max(a, v))]
            pair_mask[v][anc] = m
    masks, heights = [], []
    for seq in itertools.product(range(n + 1), repeat=n - 1):
        adj = [[] for _ in range(n + 1)]
        for a, b in _prufer_decode(list(seq), n + 1):
            adj[a].append(b)
            adj[b].append(a)
        anc = [0] * (n + 1)
        depth = [0] * (n + 1)
        closure = 0
        stack = [root]
        seen = 1 << root
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if not seen >> y & 1:
                    seen |= 1 << y
                    anc[y] = 0 if x == root else anc[x] | 1 << x
                    depth[y] = depth[x] + 1
                    closure |= pair_mask[y][anc[y]]
                    stack.append(y)
        masks.append(closure)
        heights.append(max(depth))
    table = np.full(1 << len(PAIRS), 255, dtype=np.uint8)
    np.minimum.at(table, np.array(masks), np.array(heights, dtype=np.uint8))
    for b in range(len(PAIRS)):
        view = table.reshape(-1, 2, 1 << b)
        np.minimum(view[:, 0, :], view[:, 1, :], out=view[:, 0, :])
    return table


def td_by_enumeration(g: Graph) -> int:
    if g.n > TABLE_N:
        raise ValueError("enumeration table covers at most 7 vertices")
    if g.n == 0:
        return 0
    mask = 0
    for u, v in g.edges():
        mask |= PAIR_BIT[(u, v)]
    # the table pads to 7 vertices; isolated padding has depth 1
    return int(forest_td_table()[mask])


def td_of_subset(g: Graph, vertices) -> int:
    keep = sorted(vertices)
    if not keep:
        return 0
    pos = {v: i for i, v in enumerate(keep)}
    sub = Graph(len(keep), [(pos[u], pos[v]) for u, v in g.edges() if u in pos and v in pos])
    return td_by_enumeration(sub)


def lowtd_by_definition(g: Graph, assignment, p: int) -> bool:
    classes = sorted(set(assignment))
    for i in range(1, p + 1):
        for group in itertools.combinations(classes, i):
            verts = [v for v in range(g.n) if assignment[v] in group]
            if td_of_subset(g, verts) > i:
                return False
    return True


def chi_td_brute(g: Graph, p: int) -> int:
    if g.n == 0:
        return 0
    return min(max(a) + 1 for a in set_partitions(g.n) if lowtd_by_definition(g, a, p))


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p])


def relabel(g: Graph, perm: list[int]) -> Graph:
    return Graph(g.n, [(perm[u], perm[v]) for u, v in g.edges()])
