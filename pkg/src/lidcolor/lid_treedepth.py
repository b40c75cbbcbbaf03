"""Lid-coloring with at most ``2 * td - 1`` colors from an elimination forest.

The recursion peels the top chain ``R`` of the forest (the vertices above
the first branching), colors every component of ``G - R`` recursively,
permutes each component coloring so few small colors cover ``R``, gives
``R`` and the small colors of the dominant component fresh colors, and
finally splits the classes of ``R`` with equal palettes using Bondy sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Sequence

from lidcolor.bondy import distinguishing_set
from lidcolor.errors import InvariantError, LidError, UsageError
from lidcolor.graph import Graph, components, induced, iter_bits, to_mask
from lidcolor.treedepth import (
    DEFAULT_LIMIT,
    EliminationForest,
    restrict,
    treedepth_exact,
    validate_witness,
)
from lidcolor.verify import palettes, verify_lid


class PathForest(LidError):
    """Raised by :func:`normalize_root_path` when the forest is a single path."""


@dataclass
class RootPathContext:
    root_path: list[int]
    components: list[tuple[int, ...]]
    component_forests: list[EliminationForest] = field(repr=False)
    s_values: list[int] = field(default_factory=list)


def top_chain(t: EliminationForest) -> list[int]:
    """Vertices from the root down to (and including) the first branching vertex."""
    roots = t.roots()
    if len(roots) != 1:
        raise UsageError(f"expected a single tree, found {len(roots)} roots")
    kids = t.children()
    chain = [roots[0]]
    while len(kids[chain[-1]]) == 1:
        chain.append(kids[chain[-1]][0])
    return chain


def _subtree_parents(t: EliminationForest, comp: Sequence[int]) -> dict[int, int | None]:
    inside = set(comp)
    out = {}
    for v in comp:
        x = t.parent[v]
        while x is not None and x not in inside:
            x = t.parent[x]
        out[v] = x
    return out


def normalize_root_path(g: Graph, t: EliminationForest) -> tuple[EliminationForest, RootPathContext]:
    """Rearrange ``t`` until every chain vertex has a neighbor in every component.

    While some chain vertex misses a component, it is moved to the bottom of the
    chain and that component's subtree is reattached one level higher; the chain
    gets strictly shorter each time.
    """
    if not validate_witness(g, t):
        raise UsageError("forest is not a valid witness for the graph")
    while True:
        if t.is_path():
            raise PathForest("forest is a path")
        chain = top_chain(t)
        rest = g.all_mask & ~to_mask(chain)
        comps = [tuple(iter_bits(c)) for c in components(g, rest)]
        comp_masks = [to_mask(c) for c in comps]
        miss = next(
            ((r, m) for r in chain for m, cm in enumerate(comp_masks) if not g.adj(r) & cm),
            None,
        )
        if miss is None:
            forests = [restrict(t, c) for c in comps]
            return t, RootPathContext(list(chain), comps, forests)
        r, m = miss
        if len(chain) < 2:
            raise UsageError("graph is not connected")
        order = [x for x in chain if x != r] + [r]
        parent: list[int | None] = [None] * g.n
        for a, b in zip(order, order[1:]):
            parent[b] = a
        for idx, comp in enumerate(comps):
            anchor = order[-2] if idx == m else r
            for v, p in _subtree_parents(t, comp).items():
                parent[v] = anchor if p is None else p
        t = EliminationForest(parent)


def _sees(g: Graph, comp_mask: int, coloring: Mapping[int, int], r: int) -> set[int]:
    return {coloring[w] for w in iter_bits(g.adj(r) & comp_mask)}


def _min_hitting_set(sets: Sequence[set[int]]) -> tuple[int, ...]:
    """Lexicographically first smallest color set meeting every set."""
    universe = sorted(set().union(*sets))
    for size in range(1, len(universe) + 1):
        for combo in combinations(universe, size):
            chosen = set(combo)
            if all(s & chosen for s in sets):
                return combo
    return ()


def normalize_layer_colors(
    g: Graph,
    component: Sequence[int],
    coloring: Mapping[int, int],
    root_path: Sequence[int],
) -> tuple[dict[int, int], int]:
    """Permute the colors of one component so that ``s_j`` is as small as possible.

    ``s_j`` is the least ``s`` such that every chain vertex sees a color in
    ``1..s`` inside the component, so its minimum is the size of a smallest
    color set meeting every chain vertex's seen set. That set is moved onto
    ``1..s_j`` by swaps. Minimality gives each color ``a <= s_j`` a witness: a
    chain vertex seeing ``a`` but no other color of ``1..s_j``.
    Returns the permuted coloring of ``component`` and ``s_j``.
    """
    comp_mask = to_mask(component)
    seen = [_sees(g, comp_mask, coloring, r) for r in root_path]
    if any(not s for s in seen):
        raise UsageError("some chain vertex has no neighbor in the component")
    hitting = _min_hitting_set(seen)
    s_j = len(hitting)
    perm = {c: c for c in range(1, max(coloring.values()) + 1)}
    high = [c for c in hitting if c > s_j]
    free = [c for c in range(1, s_j + 1) if c not in hitting]
    for a, b in zip(high, free):
        perm[a], perm[b] = b, a
    return {v: perm[coloring[v]] for v in component}, s_j


def _separated_pairs(g: Graph, colors: Sequence[int]) -> set[tuple[int, int]]:
    seen = palettes(g, colors)
    return {(u, v) for u, v in g.edges() if seen[u] != seen[v]}


def _color_connected(g: Graph, t: EliminationForest, debug: bool) -> list[int]:
    if g.n == 1:
        return [1]
    if t.is_path():
        return list(range(1, g.n + 1))
    t, ctx = normalize_root_path(g, t)
    k = t.height
    chain = ctx.root_path
    s = len(chain)
    colors = [0] * g.n
    k_sub = max(f.height for f in ctx.component_forests)
    assert k_sub <= k - s

    comp_colorings = []
    for comp, forest in zip(ctx.components, ctx.component_forests):
        h, index_map = induced(g, comp)
        sub = _color_connected(h, forest, debug)
        local = {index_map[i]: c for i, c in enumerate(sub)}
        permuted, s_j = normalize_layer_colors(g, comp, local, chain)
        comp_colorings.append((s_j, permuted))
        ctx.s_values.append(s_j)
    # stable sort keeps lowest component index first among equal s_j
    comp_colorings.sort(key=lambda item: -item[0])
    s_1 = comp_colorings[0][0]
    fresh = 2 * k_sub

    for idx, (_, coloring) in enumerate(comp_colorings):
        for v, c in coloring.items():
            colors[v] = fresh + c - 1 if idx == 0 and c <= s_1 else c
    fresh += s_1
    for i, r in enumerate(chain):
        colors[r] = fresh + i
    fresh += s

    if debug:
        proper = all(colors[u] != colors[v] for u, v in g.edges())
        sep = _separated_pairs(g, colors)
        chain_mask = to_mask(chain)
        for u, v in g.edges():
            touches_chain = (chain_mask >> u & 1) != (chain_mask >> v & 1)
            inside = not (chain_mask >> u & 1 or chain_mask >> v & 1)
            distinguishable = g.closed(u) != g.closed(v)
            if (touches_chain or (inside and distinguishable)) and (u, v) not in sep:
                raise InvariantError(f"edge ({u}, {v}) unseparated before the chain split")
        if not proper:
            raise InvariantError("coloring improper before the chain split")

    seen = palettes(g, colors)
    classes: dict[frozenset[int], list[int]] = {}
    for r in chain:
        classes.setdefault(seen[r], []).append(r)
    s_bar = len(classes)
    if s_bar < s_1:
        raise InvariantError(f"chain has {s_bar} palette classes but s_1 = {s_1}")
    recolor: set[int] = set()
    for members in classes.values():
        if len(members) > 1:
            recolor |= distinguishing_set(g, members)
    for v in sorted(recolor):
        before = _separated_pairs(g, colors) if debug else None
        colors[v] = fresh
        fresh += 1
        if debug and not before <= _separated_pairs(g, colors):
            raise InvariantError(f"recoloring vertex {v} lost a separated edge")

    used = len(set(colors))
    budget = (s - s_bar) + (2 * k_sub - 1) + s_1 + s
    if used > budget or used > 2 * k - 1:
        raise InvariantError(f"used {used} colors, accounting allows {min(budget, 2 * k - 1)}")
    if debug:
        report = verify_lid(g, colors)
        if not report.valid:
            raise InvariantError(f"merge produced an invalid coloring: {report.describe()}")
    dense = {c: i + 1 for i, c in enumerate(sorted(set(colors)))}
    return [dense[c] for c in colors]


def lid_color_td(
    g: Graph,
    t: EliminationForest | None = None,
    *,
    debug: bool = False,
    limit: int = DEFAULT_LIMIT,
) -> list[int]:
    """Lid-color ``g`` with colors ``1..m`` where ``m <= 2 * height(t) - 1``.

    Without ``t`` an optimal forest is computed, subject to ``limit``. Each
    connected component is colored on its own from the shared palette.
    """
    if t is None:
        _, t = treedepth_exact(g, limit)
    elif not validate_witness(g, t):
        raise UsageError("forest is not a valid witness for the graph")
    colors = [0] * g.n
    for comp in components(g):
        verts = list(iter_bits(comp))
        h, index_map = induced(g, verts)
        sub = _color_connected(h, restrict(t, verts), debug)
        for i, c in enumerate(sub):
            colors[index_map[i]] = c
    return colors
