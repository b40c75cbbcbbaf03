"""Text formats: edge lists, colorings and elimination forests.

Edge list::

    c optional comment
    p <n> <m>
    e <u> <v>        (m lines, 0-based)

Coloring and forest files hold one ``<vertex> <value>`` line per vertex;
forest values are parents with ``-1`` marking a root.
"""

from __future__ import annotations

from typing import Sequence

from lidcolor.errors import ParseError
from lidcolor.graph import Graph


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", lineno) from None


def parse_graph(text: str) -> Graph:
    n = m = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.split("\n"), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise ParseError("duplicate problem line", lineno)
            if len(parts) != 3:
                raise ParseError("problem line must be 'p <n> <m>'", lineno)
            n, m = _int(parts[1], lineno), _int(parts[2], lineno)
            if n < 0 or m < 0:
                raise ParseError("negative size in problem line", lineno)
        elif parts[0] == "e":
            if n is None:
                raise ParseError("edge before problem line", lineno)
            if len(parts) != 3:
                raise ParseError("edge line must be 'e <u> <v>'", lineno)
            u, v = _int(parts[1], lineno), _int(parts[2], lineno)
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"edge ({u}, {v}) out of range", lineno)
            if u == v:
                raise ParseError(f"self-loop at {u}", lineno)
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ParseError(f"parallel edge {key}", lineno)
            seen.add(key)
            edges.append(key)
        else:
            raise ParseError(f"unknown line type {parts[0]!r}", lineno)
    if n is None:
        raise ParseError("missing problem line")
    if len(edges) != m:
        raise ParseError(f"problem line announces {m} edges, found {len(edges)}")
    return Graph(n, edges)


def format_graph(g: Graph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.append(f"c {comment}")
    lines.append(f"p {g.n} {g.m}")
    lines += [f"e {u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def _parse_vertex_values(text: str, n: int | None, what: str) -> list[int]:
    values: dict[int, int] = {}
    for lineno, raw in enumerate(text.split("\n"), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"{what} line must be '<vertex> <value>'", lineno)
        v, x = _int(parts[0], lineno), _int(parts[1], lineno)
        if v < 0 or (n is not None and v >= n):
            raise ParseError(f"vertex {v} out of range", lineno)
        if v in values:
            raise ParseError(f"vertex {v} listed twice", lineno)
        values[v] = x
    size = len(values) if n is None else n
    missing = [v for v in range(size) if v not in values]
    if missing:
        raise ParseError(f"{what} is missing vertex {missing[0]}")
    return [values[v] for v in range(size)]


def parse_coloring(text: str, n: int | None = None) -> list[int]:
    colors = _parse_vertex_values(text, n, "coloring")
    for v, c in enumerate(colors):
        if c < 0:
            raise ParseError(f"negative color {c} on vertex {v}")
    return colors


def format_coloring(coloring: Sequence[int]) -> str:
    return "".join(f"{v} {c}\n" for v, c in enumerate(coloring))


def parse_forest(text: str, n: int | None = None) -> list[int | None]:
    parents = _parse_vertex_values(text, n, "forest")
    return [None if p == -1 else p for p in parents]


def format_forest(parent: Sequence[int | None]) -> str:
    return "".join(f"{v} {-1 if p is None else p}\n" for v, p in enumerate(parent))
