"""Small distinguishing sets via Bondy's theorem.

For ``n`` distinct sets there is a ground subset of at most ``n - 1``
elements on which every pair of sets still differs. The greedy below finds
one: while two members share a trace, add an element that splits them.
Each addition splits at least one trace class, and there can be at most
``n`` classes, hence at most ``n - 1`` additions.
"""

from __future__ import annotations

from typing import Callable, Hashable, Iterable, Sequence

from lidcolor.errors import UsageError
from lidcolor.graph import Graph, to_mask, to_set


def _trace_classes(members: Sequence[frozenset], chosen: frozenset) -> dict[frozenset, list[int]]:
    classes: dict[frozenset, list[int]] = {}
    for i, a in enumerate(members):
        classes.setdefault(a & chosen, []).append(i)
    return classes


def bondy_reduce(
    members: Iterable[Iterable[Hashable]],
    on_step: Callable[[frozenset, int], None] | None = None,
) -> frozenset:
    """Return ``X'`` with ``|X'| <= len(members) - 1`` and pairwise-distinct traces.

    ``on_step(chosen, n_classes)`` is called after every addition; tests use it
    to watch the class count grow.
    """
    family = [frozenset(a) for a in members]
    if len(set(family)) != len(family):
        raise UsageError("set family contains duplicate members")
    chosen: frozenset = frozenset()
    while True:
        classes = _trace_classes(family, chosen)
        if len(classes) == len(family):
            return chosen
        # lowest-indexed colliding pair
        i, j = min(tuple(idx[:2]) for idx in classes.values() if len(idx) > 1)
        split = min(family[i] ^ family[j])
        chosen = chosen | {split}
        if on_step is not None:
            on_step(chosen, len(_trace_classes(family, chosen)))


def distinguishing_set(
    g: Graph,
    clique: Iterable[int],
    ground_restriction: Iterable[int] | None = None,
) -> frozenset[int]:
    """A vertex set distinguishing every non-twin pair of ``clique``.

    Twins collapse to one family member, so the size is at most the number of
    distinct closed neighborhoods minus one. With ``ground_restriction`` every
    neighborhood is cut down to it first, which keeps the result inside it.
    """
    verts = sorted(set(clique))
    for v in verts:
        g.check_vertex(v)
    for i, u in enumerate(verts):
        for w in verts[i + 1:]:
            if not g.has_edge(u, w):
                raise UsageError(f"vertices {u} and {w} of the clique are not adjacent")
    neighborhoods = sorted({g.closed(v) for v in verts})
    limit = g.all_mask if ground_restriction is None else to_mask(ground_restriction)
    restricted = [nb & limit for nb in neighborhoods]
    if len(set(restricted)) != len(restricted):
        raise UsageError("some non-twin pair of the clique has no distinguisher in the restriction")
    chosen = bondy_reduce(to_set(m) for m in restricted)
    return frozenset(chosen)


def distinguishes(g: Graph, candidate: Iterable[int], vertices: Iterable[int]) -> bool:
    """True iff every non-twin pair in ``vertices`` has a distinguisher in ``candidate``."""
    cand = to_mask(candidate)
    verts = sorted(set(vertices))
    for i, u in enumerate(verts):
        for w in verts[i + 1:]:
            diff = g.closed(u) ^ g.closed(w)
            if diff and not diff & cand:
                return False
    return True

