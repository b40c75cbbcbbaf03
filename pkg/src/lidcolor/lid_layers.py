"""Lid-coloring through BFS layers, for graphs from minor-closed classes.

From a minimum-degree root every vertex gets three coordinates:

* ``c1``: its distance to the root modulo 4;
* ``c2``: a lid-coloring of its own layer graph;
* ``c3``: one proper color per slot ``k``, taken on the graph ``H_i^k``
  obtained from layer ``i`` by folding scheduled twin cliques of the
  neighboring layers into their Bondy vertices.

``c1`` separates edges between layers, ``c2`` edges inside a layer whose ends
are not twins there, ``c3`` layer twins that are not twins in the graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence, Union

from lidcolor.bondy import distinguishing_set
from lidcolor.errors import CapacityError, InvariantError, UsageError
from lidcolor.graph import (
    Graph,
    LayerDecomposition,
    bfs_layers,
    components,
    contract,
    contraction_map,
    induced,
    iter_bits,
    to_mask,
)
from lidcolor.lid_treedepth import lid_color_td
from lidcolor.minors import has_clique_minor
from lidcolor.oracle import chi_exact, chi_lid_exact
from lidcolor.treedepth import separator_forest, treedepth_exact
from lidcolor.verify import verify_lid

Colorer = Callable[[Graph], Sequence[int]]
Strategy = Union[str, Colorer]

BRUTE_LAYER_MAX = 10


# -- twin cliques and their Bondy sets --------------------------------------


@dataclass(frozen=True)
class TwinClique:
    layer: int
    members: tuple[int, ...]
    bondy: frozenset[int]


@dataclass
class TwinCliqueCover:
    by_layer: list[list[TwinClique]]

    @property
    def cliques(self) -> list[TwinClique]:
        return [c for layer in self.by_layer for c in layer]


def layer_twin_classes(g: Graph, layer: frozenset[int]) -> list[tuple[int, ...]]:
    """Classes of vertices with equal closed neighborhoods inside the layer, size >= 2."""
    lmask = to_mask(layer)
    groups: dict[int, list[int]] = {}
    for v in sorted(layer):
        groups.setdefault(g.closed(v) & lmask, []).append(v)
    return [tuple(vs) for vs in groups.values() if len(vs) > 1]


def build_twin_cover(g: Graph, layers: LayerDecomposition) -> TwinCliqueCover:
    by_layer = []
    for i, layer in enumerate(layers.layers):
        around = set()
        if i > 0:
            around |= layers.layers[i - 1]
        if i + 1 < len(layers.layers):
            around |= layers.layers[i + 1]
        found = []
        for members in layer_twin_classes(g, layer):
            try:
                bondy = distinguishing_set(g, members, around)
            except UsageError as exc:
                raise InvariantError(f"layer twins {members} lack an outside distinguisher") from exc
            found.append(TwinClique(i, members, bondy))
        by_layer.append(found)
    return TwinCliqueCover(by_layer)


# -- schedule -----------------------------------------------------------------


@dataclass
class PairSchedule:
    """Cells ``(layer, slot)`` of ``(vertex, clique index)`` pairs; slots start at 1."""

    cells: dict[tuple[int, int], list[tuple[int, int]]]
    slots: int

    def cell(self, layer: int, slot: int) -> list[tuple[int, int]]:
        return self.cells.get((layer, slot), [])

    def slot_of(self, vertex: int, clique: int) -> tuple[int, int]:
        for key, pairs in self.cells.items():
            if (vertex, clique) in pairs:
                return key
        raise KeyError((vertex, clique))


def schedule_pairs(cover: TwinCliqueCover, layer_of: dict[int, int]) -> PairSchedule:
    """Greedy smallest-free-slot placement so no cell holds two pairs of one clique."""
    cells: dict[tuple[int, int], list[tuple[int, int]]] = {}
    slots = 0
    for idx, clique in enumerate(cover.cliques):
        for v in sorted(clique.bondy):
            j = layer_of[v]
            k = 1
            while any(c == idx for _, c in cells.get((j, k), ())):
                k += 1
            cells.setdefault((j, k), []).append((v, idx))
            slots = max(slots, k)
    return PairSchedule(cells, slots)


# -- contraction graphs -------------------------------------------------------


@dataclass
class MinorTrace:
    """Steps turning ``g`` into ``H_i^k``: one induced subgraph, then contractions.

    Every step names original vertices of ``g``.
    """

    keep: tuple[int, ...]
    contractions: list[tuple[int, ...]] = field(default_factory=list)


def build_hik(
    g: Graph,
    layers: LayerDecomposition,
    layer: int,
    cell: Sequence[tuple[int, TwinClique]],
) -> tuple[Graph, MinorTrace]:
    """Layer graph with each scheduled clique folded into its paired vertex.

    The result is indexed like ``layers.layer_graphs[layer]``.
    """
    verts = sorted(layers.layers[layer])
    pos = {v: i for i, v in enumerate(verts)}
    group = {v: 1 << v for v in verts}
    keep = set(verts)
    trace_steps = []
    for x, clique in cell:
        if layer_of_vertex(layers, x) != layer:
            raise UsageError(f"vertex {x} is not in layer {layer}")
        cmask = to_mask(clique.members)
        if not g.adj(x) & cmask:
            raise UsageError(f"vertex {x} is not adjacent to clique {clique.members}")
        group[x] |= cmask
        keep |= set(clique.members)
        trace_steps.append(tuple(clique.members))
        trace_steps.append((x, clique.members[0]))
    masks = []
    for v in verts:
        reach = 0
        for w in iter_bits(group[v]):
            reach |= g.adj(w)
        m = 0
        for w in verts:
            if w != v and reach & group[w]:
                m |= 1 << pos[w]
        masks.append(m)
    return Graph.from_masks(masks), MinorTrace(tuple(sorted(keep)), trace_steps)


def apply_trace(g: Graph, trace: MinorTrace) -> tuple[Graph, list[frozenset[int]]]:
    """Replay a trace with :func:`induced` and :func:`contract` only.

    Returns the minor and, per minor vertex, the original vertices it absorbed.
    A step contracts the current vertices holding the named originals.
    """
    h, index_map = induced(g, trace.keep)
    holder = {old: new for new, old in enumerate(index_map)}
    for step in trace.contractions:
        current = {holder[v] for v in step}
        if len(current) == 1:
            continue
        mapping = contraction_map(h.n, current)
        h = contract(h, current)
        holder = {v: mapping[i] for v, i in holder.items()}
    groups = [frozenset(v for v, i in holder.items() if i == j) for j in range(h.n)]
    return h, groups


def layer_of_vertex(layers: LayerDecomposition, v: int) -> int:
    for i, layer in enumerate(layers.layers):
        if v in layer:
            return i
    raise UsageError(f"vertex {v} is not covered by the layers")


# -- strategies ---------------------------------------------------------------


def dsatur(g: Graph) -> list[int]:
    """Saturation-greedy proper coloring: highest saturation, then degree, then lowest index."""
    colors = [-1] * g.n
    for _ in range(g.n):
        def key(v: int) -> tuple[int, int, int]:
            sat = {colors[w] for w in iter_bits(g.adj(v)) if colors[w] >= 0}
            return (len(sat), g.degree(v), -v)

        v = max((x for x in range(g.n) if colors[x] < 0), key=key)
        taken = {colors[w] for w in iter_bits(g.adj(v))}
        colors[v] = next(c for c in range(g.n) if c not in taken)
    return colors


def _exact_proper(g: Graph) -> list[int]:
    return chi_exact(g).witness


def _brute_lid(g: Graph) -> list[int]:
    return chi_lid_exact(g).witness


def _treedepth_lid(g: Graph) -> list[int]:
    try:
        _, forest = treedepth_exact(g)
    except CapacityError:
        forest = separator_forest(g)
    return lid_color_td(g, forest)


def _auto_lid(g: Graph) -> list[int]:
    return _brute_lid(g) if g.n <= BRUTE_LAYER_MAX else _treedepth_lid(g)


def _recursive_lid(g: Graph) -> list[int]:
    # layer graphs exclude the root, so the recursion always shrinks
    if g.m == 0:
        return [0] * g.n
    return lid_color_layers(g, "recursive").colors


def layer_colorer(strategy: Strategy) -> Colorer:
    if callable(strategy):
        return strategy
    table = {
        "auto": _auto_lid,
        "brute": _brute_lid,
        "treedepth": _treedepth_lid,
        "recursive": _recursive_lid,
    }
    if strategy not in table:
        raise UsageError(f"unknown layer colorer {strategy!r}")
    return table[strategy]


def proper_colorer(strategy: Strategy) -> Colorer:
    if callable(strategy):
        return strategy
    table = {"exact": _exact_proper, "dsatur": dsatur}
    if strategy not in table:
        raise UsageError(f"unknown proper colorer {strategy!r}")
    return table[strategy]


# -- assembly -----------------------------------------------------------------


def _dense(values: Sequence[int]) -> list[int]:
    rank = {c: i for i, c in enumerate(sorted(set(values)))}
    return [rank[c] for c in values]


@dataclass
class LayerColoring:
    """Outcome of the layer construction, with its color accounting."""

    colors: list[int]
    c1: list[int]
    c2: list[int]
    c3: list[tuple[int, ...]]
    roots: list[int]
    layer_palette: int
    slot_palettes: list[int]
    slots: int
    max_bondy: int
    minor_bound: int | None = None
    minor_certified: bool | None = None
    parts: list["_ComponentParts"] = field(default_factory=list, repr=False)

    @property
    def accounting(self) -> int:
        """``4 * layer palette * product of slot palettes``."""
        total = 4 * self.layer_palette
        for p in self.slot_palettes:
            total *= p
        return total

    @property
    def colors_used(self) -> int:
        return len(set(self.colors))

    @property
    def bound_ok(self) -> bool:
        return self.colors_used <= self.accounting

    @property
    def slot_bound_ok(self) -> bool | None:
        """Whether ``slots <= n - 3`` for the given minor bound ``n`` (None when not given)."""
        if self.minor_bound is None:
            return None
        return self.slots <= max(self.minor_bound - 3, 0)


@dataclass
class _ComponentParts:
    vertices: list[int]
    layers: LayerDecomposition
    cover: TwinCliqueCover
    schedule: PairSchedule
    traces: dict[tuple[int, int], MinorTrace]


def _color_component(
    g: Graph,
    colorer: Colorer,
    proper: Colorer,
) -> tuple[list[int], list[int], list[list[int]], _ComponentParts]:
    """c1, dense c2 and per-slot dense c3 on a connected graph."""
    root = min(range(g.n), key=lambda v: (g.degree(v), v))
    layers = bfs_layers(g, root)
    layer_of = layers.layer_of()
    c1 = [layer_of[v] % 4 for v in range(g.n)]

    c2 = [0] * g.n
    for lg, index_map in zip(layers.layer_graphs, layers.layer_maps):
        local = list(colorer(lg))
        report = verify_lid(lg, local)
        if not report.valid:
            raise InvariantError(f"layer colorer returned an invalid coloring: {report.describe()}")
        for i, c in enumerate(_dense(local)):
            c2[index_map[i]] = c

    cover = build_twin_cover(g, layers)
    schedule = schedule_pairs(cover, layer_of)
    cliques = cover.cliques
    slots: list[list[int]] = []
    traces = {}
    for k in range(1, schedule.slots + 1):
        ck = [0] * g.n
        for i, index_map in enumerate(layers.layer_maps):
            cell = [(v, cliques[idx]) for v, idx in schedule.cell(i, k)]
            h, trace = build_hik(g, layers, i, cell)
            traces[(i, k)] = trace
            local = list(proper(h))
            if any(local[a] == local[b] for a, b in h.edges()):
                raise InvariantError(f"proper colorer failed on H_{i}^{k}")
            for j, c in enumerate(_dense(local)):
                ck[index_map[j]] = c
        slots.append(ck)
    return c1, c2, slots, _ComponentParts(list(range(g.n)), layers, cover, schedule, traces)


def layer_construction(
    g: Graph,
    layer_strategy: Strategy = "auto",
    proper_strategy: Strategy = "exact",
    minor_bound: int | None = None,
) -> LayerColoring:
    """Run the construction on every component and report the accounting.

    With ``minor_bound = n`` the graph is certified ``K_n``-minor-free where
    feasible; ``minor_certified`` is ``None`` when the certifier is out of
    capacity and the slot count is then only observed.
    """
    colorer = layer_colorer(layer_strategy)
    proper = proper_colorer(proper_strategy)
    certified = None
    if minor_bound is not None:
        if minor_bound < 3:
            raise UsageError(f"minor bound must be at least 3, got {minor_bound}")
        try:
            certified = not has_clique_minor(g, minor_bound)
        except CapacityError:
            certified = None

    out = LayerColoring([0] * g.n, [0] * g.n, [0] * g.n, [()] * g.n, [], 0, [], 0, 0, minor_bound, certified)
    comps = []
    for comp in components(g):
        verts = list(iter_bits(comp))
        h, index_map = induced(g, verts)
        c1, c2, c3, parts = _color_component(h, colorer, proper)
        parts.vertices = index_map
        comps.append((index_map, c1, c2, c3, parts))
        out.roots.append(index_map[parts.layers.root])
        out.layer_palette = max(out.layer_palette, max(c2) + 1)
        out.slots = max(out.slots, len(c3))
        out.max_bondy = max([out.max_bondy] + [len(c.bondy) for c in parts.cover.cliques])
        out.parts.append(parts)
    out.slot_palettes = [1] * out.slots
    for *_, c3, _ in comps:
        for k, ck in enumerate(c3):
            out.slot_palettes[k] = max(out.slot_palettes[k], max(ck) + 1)

    radices = [4, out.layer_palette] + out.slot_palettes
    for index_map, c1, c2, c3, _ in comps:
        for i, v in enumerate(index_map):
            digits = [c1[i], c2[i]] + [ck[i] for ck in c3] + [0] * (out.slots - len(c3))
            out.c1[v], out.c2[v], out.c3[v] = c1[i], c2[i], tuple(digits[2:])
            value = 0
            for d, r in zip(reversed(digits), reversed(radices)):
                value = value * r + d
            out.colors[v] = value
    if not out.bound_ok:
        raise InvariantError(f"{out.colors_used} colors exceed the accounting {out.accounting}")
    return out


def lid_color_layers(
    g: Graph,
    layer_strategy: Strategy = "auto",
    proper_strategy: Strategy = "exact",
    minor_bound: int | None = None,
) -> LayerColoring:
    """Lid-coloring of ``g`` from the layer construction; see :class:`LayerColoring`."""
    return layer_construction(g, layer_strategy, proper_strategy, minor_bound)


# -- per-edge separation trace --------------------------------------------------


def separation_trace(g: Graph, result: LayerColoring) -> list[str]:
    """One ``case <1|2|3> edge <u> <v> separator <color|vertex>`` line per
    distinguishable edge, checking the argument each case relies on.

    Cases 1 and 2 name a color in exactly one of the two palettes, case 3 the
    scheduled Bondy vertex whose color the non-neighbor endpoint never sees.
    """
    colors = result.colors
    pal = [frozenset(colors[w] for w in iter_bits(g.closed(v))) for v in range(g.n)]
    lines = []
    for parts in result.parts:
        index = {v: i for i, v in enumerate(parts.vertices)}
        layer_of = {parts.vertices[v]: i for v, i in parts.layers.layer_of().items()}
        layer_masks = [to_mask(parts.vertices[v] for v in layer) for layer in parts.layers.layers]
        root = parts.vertices[parts.layers.root]
        cliques = parts.cover.cliques
        for x, y in g.edges():
            if x not in index or g.closed(x) == g.closed(y):
                continue
            lx, ly = layer_of[x], layer_of[y]
            if lx != ly:
                if lx > ly:
                    x, y, lx, ly = y, x, ly, lx
                if x == root:
                    w = next(iter_bits(g.adj(y) & layer_masks[2]), None) if len(layer_masks) > 2 else None
                    if w is None:
                        raise InvariantError(f"root edge ({x}, {y}): no neighbor of {y} in layer 2")
                else:
                    w = next(iter_bits(g.adj(x) & layer_masks[lx - 1]))
                    if (lx - 1) % 4 in {result.c1[z] for z in iter_bits(g.closed(y))}:
                        raise InvariantError(f"edge ({x}, {y}): layer residue seen on both sides")
                sep, case = colors[w], 1
            else:
                lmask = layer_masks[lx]
                if g.closed(x) & lmask != g.closed(y) & lmask:
                    diff = (g.closed(x) ^ g.closed(y)) & lmask
                    w = next(
                        z for z in iter_bits(lmask & (g.closed(x) | g.closed(y)))
                        if result.c2[z] in {result.c2[a] for a in iter_bits(g.closed(x) & lmask)}
                        ^ {result.c2[a] for a in iter_bits(g.closed(y) & lmask)}
                    ) if diff else None
                    sep, case = colors[w], 2
                else:
                    idx = next(i for i, c in enumerate(cliques) if x in {parts.vertices[m] for m in c.members})
                    clique = cliques[idx]
                    members = [parts.vertices[m] for m in clique.members]
                    assert y in members
                    v_local = next(
                        b for b in sorted(clique.bondy)
                        if (g.closed(x) ^ g.closed(y)) >> parts.vertices[b] & 1
                    )
                    v = parts.vertices[v_local]
                    near, far = (x, y) if g.has_edge(v, x) else (y, x)
                    if colors[v] in pal[far]:
                        raise InvariantError(f"edge ({x}, {y}): Bondy vertex {v} color seen by {far}")
                    sep, case = v, 3
            if not (case == 3 or sep in pal[x] ^ pal[y]):
                raise InvariantError(f"case {case} separator {sep} fails on edge ({x}, {y})")
            lines.append(f"case {case} edge {x} {y} separator {sep}")
    return lines
