"""Tree-depth: elimination forests, their closures and an exact solver.

The solver memoizes over vertex subsets (bitmasks). For a connected set
``S`` the tree-depth is ``1 + min_v td(S - v)`` and a disconnected set takes
the maximum over its components; the forest is rebuilt from the argmin roots.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from lidcolor.errors import CapacityError, UsageError
from lidcolor.graph import Graph, components, iter_bits, lowest

DEFAULT_LIMIT = 20


class EliminationForest:
    """Rooted forest given by a parent array; ``None`` marks a root."""

    __slots__ = ("parent", "_depth")

    def __init__(self, parent: Sequence[int | None]):
        parent = tuple(None if p is None or p < 0 else p for p in parent)
        n = len(parent)
        depth: list[int] = [0] * n
        for v in range(n):
            # walk up until a vertex of known depth; a revisit means a cycle
            chain, x = [], v
            on_chain = set()
            while x is not None and depth[x] == 0:
                if x in on_chain:
                    raise UsageError(f"parent map has a cycle through vertex {x}")
                if not 0 <= x < n:
                    raise UsageError(f"parent {x} out of range")
                on_chain.add(x)
                chain.append(x)
                x = parent[x]
                if x is not None and not 0 <= x < n:
                    raise UsageError(f"parent {x} out of range")
            base = 0 if x is None else depth[x]
            for y in reversed(chain):
                base += 1
                depth[y] = base
        self.parent = parent
        self._depth = tuple(depth)

    @property
    def n(self) -> int:
        return len(self.parent)

    @property
    def height(self) -> int:
        return max(self._depth, default=0)

    def depth(self, v: int) -> int:
        """Number of vertices on the path from the root to ``v`` (roots have depth 1)."""
        return self._depth[v]

    def roots(self) -> list[int]:
        return [v for v, p in enumerate(self.parent) if p is None]

    def children(self) -> list[list[int]]:
        kids: list[list[int]] = [[] for _ in self.parent]
        for v, p in enumerate(self.parent):
            if p is not None:
                kids[p].append(v)
        return kids

    def ancestors(self, v: int) -> int:
        """Bitmask of the proper ancestors of ``v``."""
        mask, x = 0, self.parent[v]
        while x is not None:
            mask |= 1 << x
            x = self.parent[x]
        return mask

    def is_path(self) -> bool:
        return len(self.roots()) <= 1 and all(len(k) <= 1 for k in self.children())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, EliminationForest) and self.parent == other.parent

    def __hash__(self) -> int:
        return hash(self.parent)

    def __repr__(self) -> str:
        return f"EliminationForest(height={self.height}, parent={list(self.parent)})"


def closure(t: EliminationForest) -> Graph:
    """Graph joining every vertex to each of its proper ancestors."""
    edges = []
    for v in range(t.n):
        edges += [(a, v) for a in iter_bits(t.ancestors(v))]
    return Graph(t.n, edges)


def validate_witness(g: Graph, t: EliminationForest) -> bool:
    """True iff ``g`` is a subgraph of ``closure(t)``."""
    if t.n != g.n:
        raise UsageError(f"forest has {t.n} vertices, graph has {g.n}")
    for v in range(g.n):
        anc = t.ancestors(v)
        for w in iter_bits(g.adj(v)):
            if w < v and not (anc >> w & 1 or t.ancestors(w) >> v & 1):
                return False
    return True


def restrict(t: EliminationForest, keep: Iterable[int]) -> EliminationForest:
    """Forest on ``sorted(keep)`` (reindexed densely) whose parent is the
    nearest kept proper ancestor. Ancestor relations among kept vertices are
    preserved, so a witness for ``g`` restricts to a witness for ``g[keep]``."""
    order = sorted(set(keep))
    pos = {v: i for i, v in enumerate(order)}
    parent: list[int | None] = []
    for v in order:
        x = t.parent[v]
        while x is not None and x not in pos:
            x = t.parent[x]
        parent.append(None if x is None else pos[x])
    return EliminationForest(parent)


class _Solver:
    def __init__(self, g: Graph):
        self.adj = g.masks
        self.memo: dict[int, tuple[int, int]] = {}

    def comps(self, mask: int) -> list[int]:
        adj, out = self.adj, []
        while mask:
            frontier = comp = mask & -mask
            while frontier:
                grow = 0
                for v in iter_bits(frontier):
                    grow |= adj[v]
                frontier = grow & mask & ~comp
                comp |= frontier
            out.append(comp)
            mask &= ~comp
        return out

    def td(self, mask: int) -> int:
        return max((self.td_connected(c) for c in self.comps(mask)), default=0)

    def td_connected(self, s: int) -> int:
        hit = self.memo.get(s)
        if hit is not None:
            return hit[0]
        if s & (s - 1) == 0:
            self.memo[s] = (1, lowest(s))
            return 1
        best, root = s.bit_count() + 1, -1
        for v in iter_bits(s):
            parts = sorted(self.comps(s & ~(1 << v)), key=int.bit_count, reverse=True)
            worst = 0
            for c in parts:
                if c.bit_count() <= worst:
                    break
                worst = max(worst, self.td_connected(c))
                if worst >= best:
                    break
            if worst < best:
                best, root = worst, v
                if best == 1:
                    break
        self.memo[s] = (best + 1, root)
        return best + 1

    def build(self, mask: int, parent: list[int | None], above: int | None) -> None:
        for c in self.comps(mask):
            self.td_connected(c)
            root = self.memo[c][1]
            parent[root] = above
            self.build(c & ~(1 << root), parent, root)


def treedepth_exact(g: Graph, limit: int = DEFAULT_LIMIT) -> tuple[int, EliminationForest]:
    """Exact tree-depth and an optimal elimination forest.

    Ties between candidate roots go to the smallest vertex index. Graphs with
    more than ``limit`` vertices are refused with :class:`CapacityError`.
    """
    if g.n > limit:
        raise CapacityError(f"exact tree-depth limited to {limit} vertices, graph has {g.n}")
    solver = _Solver(g)
    k = solver.td(g.all_mask)
    parent: list[int | None] = [None] * g.n
    solver.build(g.all_mask, parent, None)
    forest = EliminationForest(parent)
    assert forest.height == k
    return k, forest


def forest_within(g: Graph, k: int, within: int | None = None) -> EliminationForest | None:
    """An elimination forest of ``g[within]`` with height at most ``k``, or ``None``.

    Exact decision procedure with a depth budget; unlike :func:`treedepth_exact`
    it stays cheap for small ``k`` on large graphs. The forest is indexed like
    ``g`` and vertices outside ``within`` are isolated roots.
    """
    adj = g.masks
    memo: dict[tuple[int, int], int] = {}

    def comps(mask: int) -> list[int]:
        return components(g, mask)

    def fits(s: int, budget: int) -> int:
        # returns a root for connected s, or -1
        if budget <= 0:
            return -1
        if s & (s - 1) == 0:
            return lowest(s)
        if budget == 1:
            return -1
        key = (s, budget)
        if key in memo:
            return memo[key]
        found = -1
        # high-degree vertices first: they are the likely separators
        for v in sorted(iter_bits(s), key=lambda x: -(adj[x] & s).bit_count()):
            if all(fits(c, budget - 1) >= 0 for c in comps(s & ~(1 << v))):
                found = v
                break
        memo[key] = found
        return found

    mask = g.all_mask if within is None else within
    parent: list[int | None] = [None] * g.n

    def build(s: int, budget: int, above: int | None) -> bool:
        for c in comps(s):
            root = fits(c, budget)
            if root < 0:
                return False
            parent[root] = above
            if not build(c & ~(1 << root), budget - 1, root):
                return False
        return True

    if not build(mask, k, None):
        return None
    return EliminationForest(parent)


def treedepth_at_most(g: Graph, k: int, within: int | None = None) -> bool:
    return forest_within(g, k, within) is not None


def separator_forest(g: Graph) -> EliminationForest:
    """A valid, usually shallow, elimination forest for graphs too big to solve.

    Each component is rooted at the vertex whose removal leaves the smallest
    largest component (a centroid on trees, giving height at most
    ``floor(log2 n) + 1`` there).
    """
    parent: list[int | None] = [None] * g.n
    stack: list[tuple[int, int | None]] = [(c, None) for c in components(g)]
    while stack:
        comp, above = stack.pop()
        best = None
        for v in iter_bits(comp):
            worst = max((c.bit_count() for c in components(g, comp & ~(1 << v))), default=0)
            if best is None or worst < best[0]:
                best = (worst, v)
        root = best[1]
        parent[root] = above
        stack += [(c, root) for c in components(g, comp & ~(1 << root))]
    return EliminationForest(parent)
