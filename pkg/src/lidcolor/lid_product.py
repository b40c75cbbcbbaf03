"""Lid-coloring from a low tree-depth coloring (parameter 3) with tuple colors.

For every triple ``A`` of classes, the graph ``H_A`` induced by those classes
has tree-depth at most 3 and is lid-colored with colors 1..5; vertices outside
``H_A`` get 0. A vertex's final color is the tuple over all triples, packed
base 6 with the first triple as the least significant digit.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Mapping, Sequence

from lidcolor.errors import InvariantError, UsageError
from lidcolor.graph import Graph, induced, iter_bits
from lidcolor.lid_treedepth import lid_color_td
from lidcolor.treedepth import forest_within
from lidcolor.verify import as_color_list


@dataclass(frozen=True)
class LowTdColoring:
    assignment: tuple[int, ...]
    p: int = 3

    @classmethod
    def of(cls, g: Graph, assignment: Sequence[int] | Mapping[int, int], p: int = 3) -> "LowTdColoring":
        return cls(tuple(as_color_list(g, assignment)), p)

    @property
    def classes(self) -> list[int]:
        return sorted(set(self.assignment))

    @property
    def q(self) -> int:
        return len(set(self.assignment))

    def class_mask(self, cls_id: int) -> int:
        return sum(1 << v for v, a in enumerate(self.assignment) if a == cls_id)


def validate_lowtd(g: Graph, a: LowTdColoring) -> bool:
    """True iff every union of ``i <= p`` classes induces tree-depth at most ``i``."""
    if len(a.assignment) != g.n:
        raise UsageError(f"assignment has {len(a.assignment)} entries for {g.n} vertices")
    masks = {c: a.class_mask(c) for c in a.classes}
    for i in range(1, a.p + 1):
        for group in combinations(a.classes, i):
            union = 0
            for c in group:
                union |= masks[c]
            if forest_within(g, i, union) is None:
                return False
    return True


def triples(classes: Sequence[int]) -> list[tuple[int, int, int]]:
    """Class triples in lexicographic order, padding with placeholder ids when fewer than 3."""
    ids = sorted(classes)
    pad = max(ids, default=0)
    while len(ids) < 3:
        pad += 1
        ids.append(pad)
    return list(combinations(ids, 3))


def product_bound(q: int) -> int:
    """Color budget: ``6 ** C(q, 3)``, or 6 for the padded single triple when ``q < 3``."""
    return 6 ** comb(q, 3) if q >= 3 else 6


def triple_colorings(g: Graph, a: LowTdColoring) -> list[tuple[tuple[int, int, int], list[int]]]:
    """Per-triple colorings extended by 0 outside ``H_A``, in triple order."""
    out = []
    for triple in triples(a.classes):
        keep = [v for v, c in enumerate(a.assignment) if c in triple]
        h, index_map = induced(g, keep)
        forest = forest_within(h, 3)
        if forest is None:
            raise UsageError(f"classes {triple} induce tree-depth above 3")
        local = lid_color_td(h, forest)
        full = [0] * g.n
        for i, c in enumerate(local):
            full[index_map[i]] = c
        out.append((triple, full))
    return out


def pack(digits: Sequence[int], base: int = 6) -> int:
    value = 0
    for d in reversed(digits):
        value = value * base + d
    return value


def lid_color_product(g: Graph, a: LowTdColoring) -> list[int]:
    if a.p != 3:
        raise UsageError(f"the product construction needs p = 3, got {a.p}")
    if not validate_lowtd(g, a):
        raise UsageError("assignment is not a low tree-depth coloring")
    per_triple = triple_colorings(g, a)
    return [pack([col[v] for _, col in per_triple]) for v in range(g.n)]


def separation_witnesses(g: Graph, a: LowTdColoring) -> list[tuple[int, int, tuple[int, int, int]]]:
    """For each adjacent non-twin pair, a triple whose coloring separates it.

    The triple is the one holding the classes of both endpoints and of a
    distinguisher; raises if that triple fails to separate.
    """
    per_triple = dict(triple_colorings(g, a))
    full_triples = list(per_triple)
    out = []
    for x, y in g.edges():
        diff = g.closed(x) ^ g.closed(y)
        if not diff:
            continue
        w = next(iter_bits(diff))
        need = {a.assignment[x], a.assignment[y], a.assignment[w]}
        triple = next(t for t in full_triples if need <= set(t))
        col = per_triple[triple]
        px = {col[v] for v in iter_bits(g.closed(x))}
        py = {col[v] for v in iter_bits(g.closed(y))}
        if px == py:
            raise InvariantError(f"triple {triple} does not separate edge ({x}, {y})")
        out.append((x, y, triple))
    return out
