"""Checking locally identifying colorings."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence, Union

from lidcolor.errors import UsageError
from lidcolor.graph import Graph, iter_bits

Coloring = Union[Sequence[int], Mapping[int, int]]


def as_color_list(g: Graph, c: Coloring) -> list[int]:
    """Normalize a coloring to a list indexed by vertex, rejecting partial maps."""
    if isinstance(c, Mapping):
        missing = [v for v in range(g.n) if v not in c]
        if missing:
            raise UsageError(f"coloring is not total: vertex {missing[0]} has no color")
        return [c[v] for v in range(g.n)]
    colors = list(c)
    if len(colors) != g.n:
        raise UsageError(f"coloring has {len(colors)} entries for {g.n} vertices")
    return colors


@dataclass
class LidReport:
    improper_edges: list[tuple[int, int]] = field(default_factory=list)
    unseparated_edges: list[tuple[int, int]] = field(default_factory=list)
    colors_used: int = 0

    @property
    def valid(self) -> bool:
        return not self.improper_edges and not self.unseparated_edges

    def __bool__(self) -> bool:
        return self.valid

    def describe(self) -> str:
        lines = [f"colors {self.colors_used}", f"valid {'yes' if self.valid else 'no'}"]
        lines += [f"improper {u} {v}" for u, v in self.improper_edges]
        lines += [f"unseparated {u} {v}" for u, v in self.unseparated_edges]
        return "\n".join(lines)


def palette(g: Graph, c: Coloring, v: int) -> frozenset[int]:
    """Colors seen by ``v``: the colors on its closed neighborhood."""
    g.check_vertex(v)
    colors = as_color_list(g, c)
    return frozenset(colors[w] for w in iter_bits(g.closed(v)))


def palettes(g: Graph, colors: Sequence[int]) -> list[frozenset[int]]:
    return [frozenset(colors[w] for w in iter_bits(g.closed(v))) for v in range(g.n)]


def verify_lid(g: Graph, c: Coloring) -> LidReport:
    colors = as_color_list(g, c)
    seen = palettes(g, colors)
    report = LidReport(colors_used=len(set(colors)))
    for u, v in g.edges():
        if colors[u] == colors[v]:
            report.improper_edges.append((u, v))
        if g.closed(u) != g.closed(v) and seen[u] == seen[v]:
            report.unseparated_edges.append((u, v))
    return report


def is_lid(g: Graph, c: Coloring) -> bool:
    return verify_lid(g, c).valid


def separating_colors(g: Graph, c: Coloring, u: int, v: int) -> frozenset[int]:
    g.check_vertex(u)
    g.check_vertex(v)
    if not g.has_edge(u, v):
        raise UsageError(f"({u}, {v}) is not an edge")
    return palette(g, c, u) ^ palette(g, c, v)


def count_colors(c: Coloring) -> int:
    values = c.values() if isinstance(c, Mapping) else c
    return len(set(values))
