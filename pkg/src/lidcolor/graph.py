"""Simple undirected graphs stored as per-vertex neighbor bitmasks.

A vertex set is an ``int`` bitmask internally; public helpers accept any
iterable of vertices and return ``frozenset`` so callers never need to touch
the bit representation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from lidcolor.errors import UsageError


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def to_set(mask: int) -> frozenset[int]:
    return frozenset(iter_bits(mask))


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


class Graph:
    """Immutable simple graph on the vertices ``0..n-1``."""

    __slots__ = ("n", "_adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise UsageError(f"vertex count must be non-negative, got {n}")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise UsageError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise UsageError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.n = n
        self._adj = tuple(adj)

    @classmethod
    def from_masks(cls, masks: Sequence[int]) -> "Graph":
        """Build from open-neighborhood bitmasks (checked for symmetry)."""
        n = len(masks)
        full = (1 << n) - 1
        for v, m in enumerate(masks):
            if m & ~full or m >> v & 1:
                raise UsageError(f"bad neighborhood mask for vertex {v}")
            for w in iter_bits(m):
                if not masks[w] >> v & 1:
                    raise UsageError(f"asymmetric adjacency between {v} and {w}")
        g = cls.__new__(cls)
        g.n = n
        g._adj = tuple(masks)
        return g

    def check_vertex(self, v: int) -> None:
        if not (isinstance(v, int) and 0 <= v < self.n):
            raise UsageError(f"vertex {v!r} out of range for n={self.n}")

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def masks(self) -> tuple[int, ...]:
        return self._adj

    def adj(self, v: int) -> int:
        return self._adj[v]

    def closed(self, v: int) -> int:
        return self._adj[v] | 1 << v

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self._adj[v]))

    def edges(self) -> list[tuple[int, int]]:
        return [(u, w) for u in range(self.n) for w in iter_bits(self._adj[u] >> u + 1 << u + 1)]

    @property
    def m(self) -> int:
        return sum(a.bit_count() for a in self._adj) // 2

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self._adj == other._adj

    def __hash__(self) -> int:
        return hash(self._adj)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def to_networkx(self):
        import networkx as nx

        h = nx.Graph()
        h.add_nodes_from(range(self.n))
        h.add_edges_from(self.edges())
        return h

    @classmethod
    def from_networkx(cls, h) -> "Graph":
        nodes = sorted(h.nodes())
        index = {x: i for i, x in enumerate(nodes)}
        return cls(len(nodes), ((index[a], index[b]) for a, b in h.edges()))


# -- neighborhood algebra ---------------------------------------------------


def closed_neighborhood(g: Graph, v: int) -> frozenset[int]:
    g.check_vertex(v)
    return to_set(g.closed(v))


def closed_neighborhood_of_set(g: Graph, vertices: Iterable[int]) -> frozenset[int]:
    mask = 0
    for v in vertices:
        g.check_vertex(v)
        mask |= g.closed(v)
    return to_set(mask)


def _check_pair(g: Graph, u: int, v: int) -> None:
    g.check_vertex(u)
    g.check_vertex(v)
    if u == v:
        raise UsageError(f"expected two distinct vertices, got {u} twice")


def are_twins(g: Graph, u: int, v: int) -> bool:
    """True iff ``N[u] == N[v]``; twins are necessarily adjacent."""
    _check_pair(g, u, v)
    return g.closed(u) == g.closed(v)


def distinguishers(g: Graph, u: int, v: int) -> frozenset[int]:
    """Vertices in exactly one of ``N[u]`` and ``N[v]``."""
    _check_pair(g, u, v)
    return to_set(g.closed(u) ^ g.closed(v))


def components(g: Graph, within: int | None = None) -> list[int]:
    """Connected components of ``g[within]`` as bitmasks, ordered by least vertex."""
    remaining = g.all_mask if within is None else within
    adj = g.masks
    out = []
    while remaining:
        frontier = remaining & -remaining
        comp = frontier
        while frontier:
            grow = 0
            for v in iter_bits(frontier):
                grow |= adj[v]
            frontier = grow & remaining & ~comp
            comp |= frontier
        out.append(comp)
        remaining &= ~comp
    return out


def is_connected(g: Graph, within: int | None = None) -> bool:
    mask = g.all_mask if within is None else within
    return mask == 0 or len(components(g, mask)) == 1


# -- layers, induced subgraphs, contractions --------------------------------


@dataclass(frozen=True)
class LayerDecomposition:
    """Distance classes from ``root``; ``layers[i]`` sits at distance exactly ``i``."""

    root: int
    layers: tuple[frozenset[int], ...]
    layer_graphs: tuple[Graph, ...] = field(repr=False)
    layer_maps: tuple[tuple[int, ...], ...] = field(repr=False)

    def layer_of(self) -> dict[int, int]:
        return {v: i for i, layer in enumerate(self.layers) for v in layer}


def bfs_layers(g: Graph, u: int) -> LayerDecomposition:
    g.check_vertex(u)
    layers = []
    seen = frontier = 1 << u
    while frontier:
        layers.append(frontier)
        grow = 0
        for v in iter_bits(frontier):
            grow |= g.adj(v)
        frontier = grow & ~seen
        seen |= frontier
    if seen != g.all_mask:
        missing = lowest(g.all_mask & ~seen)
        raise UsageError(f"graph is disconnected: vertex {missing} unreachable from {u}")
    graphs, maps = [], []
    for layer in layers:
        h, index_map = induced(g, iter_bits(layer))
        graphs.append(h)
        maps.append(tuple(index_map))
    return LayerDecomposition(u, tuple(to_set(x) for x in layers), tuple(graphs), tuple(maps))


def induced(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Subgraph induced by ``vertices``, reindexed densely in ascending order.

    Returns the graph and ``index_map`` with ``index_map[new] == old``.
    """
    keep = sorted(set(vertices))
    for v in keep:
        g.check_vertex(v)
    pos = {v: i for i, v in enumerate(keep)}
    masks = []
    for v in keep:
        m = 0
        for w in iter_bits(g.adj(v)):
            if w in pos:
                m |= 1 << pos[w]
        masks.append(m)
    return Graph.from_masks(masks), keep


def contraction_map(n: int, vertices: Iterable[int]) -> list[int]:
    """Old-to-new vertex map used by :func:`contract`.

    The merged vertex takes the place of the smallest contracted vertex and
    every other vertex keeps its relative order.
    """
    group = set(vertices)
    if not group:
        raise UsageError("cannot contract an empty vertex set")
    anchor = min(group)
    out, nxt = [], 0
    for v in range(n):
        if v in group and v != anchor:
            out.append(-1)
        else:
            out.append(nxt)
            nxt += 1
    for v in group:
        out[v] = out[anchor]
    return out


def contract(g: Graph, vertices: Iterable[int]) -> Graph:
    """Contract the connected set ``vertices`` to a single vertex.

    Parallel edges merge and loops vanish, so the result stays simple. See
    :func:`contraction_map` for the reindexing.
    """
    group = set(vertices)
    for v in group:
        g.check_vertex(v)
    gmask = to_mask(group)
    if not group or not is_connected(g, gmask):
        raise UsageError("contracted set must be non-empty and induce a connected subgraph")
    mapping = contraction_map(g.n, group)
    size = max(mapping) + 1
    edges = set()
    for a, b in g.edges():
        x, y = mapping[a], mapping[b]
        if x != y:
            edges.add((min(x, y), max(x, y)))
    return Graph(size, sorted(edges))
