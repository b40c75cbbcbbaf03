"""Deterministic graph families and seeded random instances."""

from __future__ import annotations

import random
from dataclasses import dataclass

import networkx as nx

from lidcolor.errors import UsageError
from lidcolor.graph import Graph


@dataclass(frozen=True)
class HnGadget:
    """``K_n`` on ``a`` plus pendant ``b[i]`` on ``a[i]`` for every clique vertex but the last."""

    graph: Graph
    a: tuple[int, ...]
    b: tuple[int, ...]


def generate_hn(n: int) -> HnGadget:
    """The tightness gadget: ``a_i = i`` for ``i < n`` and ``b_i = n + i`` for ``i < n-1``."""
    if n < 2:
        raise UsageError(f"H_n needs n >= 2, got {n}")
    a = tuple(range(n))
    b = tuple(range(n, 2 * n - 1))
    edges = [(i, j) for i in a for j in a if i < j]
    edges += [(a[i], b[i]) for i in range(n - 1)]
    return HnGadget(Graph(2 * n - 1, edges), a, b)


def path(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise UsageError(f"a cycle needs at least 3 vertices, got {n}")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def clique(n: int) -> Graph:
    return Graph(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def star(leaves: int) -> Graph:
    """Center 0 joined to ``leaves`` leaves."""
    return Graph(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def edgeless(n: int) -> Graph:
    return Graph(n)


def grid(rows: int, cols: int | None = None) -> Graph:
    cols = rows if cols is None else cols
    idx = lambda r, c: r * cols + c  # noqa: E731
    edges = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges.append((idx(r, c), idx(r, c + 1)))
            if r + 1 < rows:
                edges.append((idx(r, c), idx(r + 1, c)))
    return Graph(rows * cols, edges)


def random_tree(n: int, seed: int) -> Graph:
    """Uniform labeled tree via a random Pruefer sequence."""
    if n < 1:
        raise UsageError("a tree needs at least one vertex")
    if n == 1:
        return Graph(1)
    if n == 2:
        return Graph(2, [(0, 1)])
    rng = random.Random(seed)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    return Graph.from_networkx(nx.from_prufer_sequence(seq))


def random_outerplanar(n: int, seed: int) -> Graph:
    """Maximal outerplanar graph: a random triangulation of the polygon ``0..n-1``."""
    if n < 3:
        return path(n)
    rng = random.Random(seed)
    edges = {(i, i + 1) for i in range(n - 1)} | {(0, n - 1)}
    stack = [(0, n - 1)]
    while stack:
        lo, hi = stack.pop()
        if hi - lo < 2:
            continue
        apex = rng.randrange(lo + 1, hi)
        edges.add((lo, apex))
        edges.add((apex, hi))
        stack.append((lo, apex))
        stack.append((apex, hi))
    return Graph(n, sorted(edges))


def random_apollonian(n: int, seed: int) -> Graph:
    """Stacked triangulation: repeatedly insert a vertex into a random face."""
    if n < 3:
        return clique(n)
    rng = random.Random(seed)
    edges = {(0, 1), (0, 2), (1, 2)}
    faces = [(0, 1, 2)]
    for v in range(3, n):
        a, b, c = faces.pop(rng.randrange(len(faces)))
        edges |= {(a, v), (b, v), (c, v)}
        faces += [(a, b, v), (a, c, v), (b, c, v)]
    return Graph(n, sorted(edges))


def random_gnp(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p])


def random_connected(n: int, p: float, seed: int) -> Graph:
    """A random spanning tree plus independent extra edges with probability ``p``."""
    rng = random.Random(seed)
    tree = random_tree(n, rng.getrandbits(64))
    edges = set(tree.edges())
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                edges.add((i, j))
    return Graph(n, sorted(edges))


FAMILIES = ("hn", "path", "cycle", "clique", "star", "tree", "outerplanar", "planar-grid", "apollonian")


def generate(family: str, n: int, seed: int = 0) -> Graph:
    """Dispatch by family name; ``n`` is the vertex count except for ``hn``
    (clique order) and ``planar-grid`` (side length)."""
    if family == "hn":
        return generate_hn(n).graph
    if family == "path":
        return path(n)
    if family == "cycle":
        return cycle(n)
    if family == "clique":
        return clique(n)
    if family == "star":
        return star(n - 1)
    if family == "tree":
        return random_tree(n, seed)
    if family == "outerplanar":
        return random_outerplanar(n, seed)
    if family == "planar-grid":
        return grid(n)
    if family == "apollonian":
        return random_apollonian(n, seed)
    raise UsageError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
