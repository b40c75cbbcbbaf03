"""Exhaustive solvers for desk-scale ground truth.

All searches assign vertices in a fixed order and introduce colors (or
classes) canonically: a vertex may take any color already in use or the next
unused one. Branch and bound keeps only searches that beat the best solution
found so far, so the final incumbent is optimal once the tree is exhausted.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from lidcolor.errors import CapacityError
from lidcolor.graph import Graph, iter_bits
from lidcolor.lid_product import LowTdColoring
from lidcolor.treedepth import forest_within

LID_CAP = 12
CHI_CAP = 40
TD3_CAP = 10


@dataclass
class OracleResult:
    value: int | None
    witness: list[int] | LowTdColoring | None
    nodes_explored: int = 0

    @property
    def exceeded(self) -> bool:
        """True when no solution exists within the requested color limit."""
        return self.value is None


def search_order(g: Graph) -> list[int]:
    """Maximum-cardinality order: next is the vertex with most placed neighbors.

    Closed neighborhoods complete early, which is what the lid checks wait for.
    """
    placed = 0
    order: list[int] = []
    while len(order) < g.n:
        best = max(
            (v for v in range(g.n) if not placed >> v & 1),
            key=lambda v: ((g.adj(v) & placed).bit_count(), g.degree(v), -v),
        )
        order.append(best)
        placed |= 1 << best
    return order


def _check_cap(g: Graph, cap: int, what: str) -> None:
    if g.n > cap:
        raise CapacityError(f"{what} is limited to {cap} vertices, graph has {g.n}")


class _ColoringSearch:
    """Canonical branch and bound over proper colorings, with optional lid checks."""

    def __init__(self, g: Graph, lid: bool, limit: int):
        self.g = g
        self.order = search_order(g)
        pos = {v: i for i, v in enumerate(self.order)}
        self.earlier = [
            [w for w in iter_bits(g.adj(v)) if pos[w] < pos[v]] for v in self.order
        ]
        # palette comparison of an edge is only sound once both closed
        # neighborhoods are fully colored
        self.ready: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
        if lid:
            for u, v in g.edges():
                if g.closed(u) != g.closed(v):
                    last = max(pos[w] for w in iter_bits(g.closed(u) | g.closed(v)))
                    self.ready[last].append((u, v))
        self.colors = [-1] * g.n
        self.best = limit + 1
        self.witness: list[int] | None = None
        self.nodes = 0
        self.floor = 1

    def palette(self, v: int) -> int:
        mask = 0
        for w in iter_bits(self.g.closed(v)):
            mask |= 1 << self.colors[w]
        return mask

    def run(self) -> None:
        if self.g.n == 0:
            self.best, self.witness = 0, []
            return
        self._dfs(0, 0)

    def _dfs(self, i: int, used: int) -> bool:
        self.nodes += 1
        if i == len(self.order):
            self.best, self.witness = used, list(self.colors)
            return used <= self.floor
        v = self.order[i]
        banned = {self.colors[w] for w in self.earlier[i]}
        c = 0
        # bound re-read each round: a deeper solution may have lowered it
        while c < min(used + 1, self.best - 1):
            if c not in banned:
                self.colors[v] = c
                if all(self.palette(a) != self.palette(b) for a, b in self.ready[i]):
                    if self._dfs(i + 1, max(used, c + 1)):
                        return True
            c += 1
        self.colors[v] = -1
        return False


def greedy_clique_size(g: Graph) -> int:
    """Size of a clique grown greedily from each vertex; a lower bound on chi."""
    best = 1 if g.n else 0
    for start in range(g.n):
        members, cand = 1, g.adj(start)
        while cand:
            v = max(iter_bits(cand), key=lambda x: (g.adj(x) & cand).bit_count())
            members += 1
            cand &= g.adj(v)
        best = max(best, members)
    return best


def chi_exact(g: Graph, cap: int = CHI_CAP) -> OracleResult:
    """Chromatic number with an optimal proper coloring (colors 0-based)."""
    _check_cap(g, cap, "exact chromatic number")
    search = _ColoringSearch(g, lid=False, limit=g.n)
    search.floor = greedy_clique_size(g)
    search.run()
    return OracleResult(search.best, search.witness, search.nodes)


def chi_lid_exact(g: Graph, limit: int | None = None, cap: int = LID_CAP) -> OracleResult:
    """Lid-chromatic number with an optimal witness (colors 0-based).

    ``limit`` caps the colors tried; when nothing fits, the result has
    ``value=None``.
    """
    _check_cap(g, cap, "exact lid-chromatic number")
    limit = g.n if limit is None else limit
    search = _ColoringSearch(g, lid=True, limit=limit)
    search.floor = chi_exact(g).value if g.n else 0
    search.run()
    if search.witness is None:
        return OracleResult(None, None, search.nodes)
    return OracleResult(search.best, search.witness, search.nodes)


class _LowTdSearch:
    def __init__(self, g: Graph, p: int):
        self.g = g
        self.p = p
        self.order = search_order(g)
        self.classes: list[int] = [0] * g.n  # class masks, indexed by class id
        self.assign = [-1] * g.n
        self.best = g.n + 1
        self.witness: list[int] | None = None
        self.nodes = 0

    def feasible(self, cls: int, used: int) -> bool:
        others = [c for c in range(used) if c != cls]
        for extra in range(self.p):
            for group in combinations(others, extra):
                union = self.classes[cls]
                for c in group:
                    union |= self.classes[c]
                if forest_within(self.g, extra + 1, union) is None:
                    return False
        return True

    def run(self) -> None:
        self._dfs(0, 0)

    def _dfs(self, i: int, used: int) -> None:
        self.nodes += 1
        if i == self.g.n:
            if used < self.best:
                self.best, self.witness = used, list(self.assign)
            return
        v = self.order[i]
        c = 0
        # bound re-read each round, as in the coloring search
        while c < min(used + 1, self.best - 1):
            self.assign[v] = c
            self.classes[c] |= 1 << v
            if self.feasible(c, max(used, c + 1)):
                self._dfs(i + 1, max(used, c + 1))
            self.classes[c] &= ~(1 << v)
            self.assign[v] = -1
            c += 1


def chi_td_p_exact(g: Graph, p: int = 3, cap: int = TD3_CAP) -> OracleResult:
    """Least number of classes in a low tree-depth coloring with parameter ``p``."""
    if p < 1:
        raise ValueError(f"p must be positive, got {p}")
    _check_cap(g, cap, "exact low tree-depth coloring")
    if g.n == 0:
        return OracleResult(0, LowTdColoring((), p), 0)
    search = _LowTdSearch(g, p)
    search.run()
    return OracleResult(search.best, LowTdColoring(tuple(search.witness), p), search.nodes)


def lid_lower_bounds_all(g: Graph, colorings: Sequence[Sequence[int]]) -> bool:
    """True iff the exact lid-chromatic number is at most every coloring's count."""
    value = chi_lid_exact(g).value
    return all(value <= len(set(c)) for c in colorings)
