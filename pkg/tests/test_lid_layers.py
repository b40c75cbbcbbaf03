import random

import pytest
from hypothesis import given, settings

from conftest import connected_graphs, graphs
from helpers import chi_lid_brute, lid_by_definition, random_graph
from lidcolor.errors import UsageError
from lidcolor.generators import (
    clique,
    generate,
    grid,
    path,
    random_apollonian,
    random_connected,
    random_outerplanar,
    random_tree,
)
from lidcolor.graph import Graph, bfs_layers, iter_bits, to_mask
from lidcolor.lid_layers import (
    TwinClique,
    TwinCliqueCover,
    apply_trace,
    build_hik,
    build_twin_cover,
    dsatur,
    layer_twin_classes,
    lid_color_layers,
    proper_colorer,
    schedule_pairs,
    separation_trace,
)
from lidcolor.verify import is_lid


def test_cover_path_is_empty():
    cover = build_twin_cover(path(4), bfs_layers(path(4), 0))
    assert cover.cliques == []


def test_cover_clique():
    cover = build_twin_cover(clique(4), bfs_layers(clique(4), 0))
    (c,) = cover.cliques
    assert c.layer == 1 and c.members == (1, 2, 3) and c.bondy == frozenset()


def test_cover_triangle_with_pendant():
    # triangle a=0, b=1, c=2 with pendant p=3 on a, rooted at p
    g = Graph(4, [(0, 1), (0, 2), (1, 2), (0, 3)])
    layers = bfs_layers(g, 3)
    assert [set(x) for x in layers.layers] == [{3}, {0}, {1, 2}]
    (c,) = build_twin_cover(g, layers).cliques
    assert c.layer == 2 and c.members == (1, 2) and c.bondy == frozenset()


def test_layer_twin_classes():
    g = Graph(5, [(0, 1), (0, 2), (0, 3), (1, 2), (3, 4)])
    assert layer_twin_classes(g, frozenset({1, 2, 3})) == [(1, 2)]


@given(connected_graphs(min_n=2, max_n=11))
def test_cover_invariants(g):
    layers = bfs_layers(g, 0)
    cover = build_twin_cover(g, layers)
    for c in cover.cliques:
        layer = layers.layers[c.layer]
        lmask = to_mask(layer)
        assert set(c.members) <= layer
        assert all(g.has_edge(u, v) for u in c.members for v in c.members if u < v)
        assert len({g.closed(v) & lmask for v in c.members}) == 1
        around = set()
        if c.layer > 0:
            around |= layers.layers[c.layer - 1]
        if c.layer + 1 < len(layers.layers):
            around |= layers.layers[c.layer + 1]
        assert c.bondy <= around and not c.bondy & layer
        distinct = {g.closed(v) for v in c.members}
        assert len(c.bondy) <= len(distinct) - 1
        # the Bondy set separates every non-twin pair of the clique
        assert len({g.closed(v) & to_mask(c.bondy) for v in c.members}) == len(distinct)


def test_schedule_empty():
    sched = schedule_pairs(TwinCliqueCover([[], []]), {0: 0, 1: 1})
    assert sched.slots == 0 and sched.cells == {}


def test_schedule_distinct_layers_share_slot_one():
    clique_ = TwinClique(1, (1, 2), frozenset({0, 3}))
    sched = schedule_pairs(TwinCliqueCover([[], [clique_], []]), {0: 0, 1: 1, 2: 1, 3: 2})
    assert sched.slot_of(0, 0) == (0, 1) and sched.slot_of(3, 0) == (2, 1)
    assert sched.slots == 1


def _two_cliques_sharing_a_distinguisher():
    # root 0; layer 1 holds cliques {1,2} and {3,4}; vertex 5 sees 1 and 3
    edges = [(0, v) for v in (1, 2, 3, 4)] + [(1, 2), (3, 4), (1, 5), (3, 5)]
    return Graph(6, edges)


def test_schedule_shared_distinguisher():
    g = _two_cliques_sharing_a_distinguisher()
    layers = bfs_layers(g, 0)
    cover = build_twin_cover(g, layers)
    assert [c.bondy for c in cover.cliques] == [{5}, {5}]
    sched = schedule_pairs(cover, layers.layer_of())
    # only pairs of the same clique are kept apart, so both share one cell
    assert sched.cell(2, 1) == [(5, 0), (5, 1)]
    assert sched.slots == 1
    result = lid_color_layers(g)
    assert is_lid(g, result.colors)


def test_schedule_same_clique_needs_new_slot():
    clique_ = TwinClique(1, (1, 2, 3), frozenset({4, 5}))
    sched = schedule_pairs(TwinCliqueCover([[clique_]]), {4: 2, 5: 2})
    assert sched.cell(2, 1) == [(4, 0)] and sched.cell(2, 2) == [(5, 0)]
    assert sched.slots == 2


@given(connected_graphs(min_n=2, max_n=11))
def test_schedule_invariants(g):
    layers = bfs_layers(g, 0)
    layer_of = layers.layer_of()
    cover = build_twin_cover(g, layers)
    sched = schedule_pairs(cover, layer_of)
    expected = sorted((v, i) for i, c in enumerate(cover.cliques) for v in c.bondy)
    placed = sorted(p for pairs in sched.cells.values() for p in pairs)
    assert placed == expected
    for (j, k), pairs in sched.cells.items():
        assert 1 <= k <= sched.slots
        assert all(layer_of[v] == j for v, _ in pairs)
        ids = [c for _, c in pairs]
        assert len(ids) == len(set(ids))
    assert sched.slots == max((len(c.bondy) for c in cover.cliques), default=0)


def test_build_hik_empty_cell_is_layer_graph():
    g = clique(4)
    layers = bfs_layers(g, 0)
    h, trace = build_hik(g, layers, 1, [])
    assert h.edges() == layers.layer_graphs[1].edges() == clique(3).edges()
    assert trace.contractions == []


def test_build_hik_folds_single_vertex():
    # root 0, layer 1 = {1, 2, 3} with edge 1-2, layer 2 = {4} adjacent to 1 and 3
    g = Graph(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 4), (3, 4)])
    layers = bfs_layers(g, 0)
    h, trace = build_hik(g, layers, 1, [(1, TwinClique(2, (4,), frozenset()))])
    # vertex 1 absorbs 4 and so gains the edge to 3
    assert h.edges() == [(0, 1), (0, 2)]
    minor, groups = apply_trace(g, trace)
    assert groups == [frozenset({1, 4}), frozenset({2}), frozenset({3})]
    assert minor.edges() == h.edges()


def test_build_hik_rejects_foreign_vertex():
    g = clique(4)
    layers = bfs_layers(g, 0)
    with pytest.raises(UsageError):
        build_hik(g, layers, 1, [(0, TwinClique(1, (1, 2), frozenset()))])


def _check_traces(g, result):
    for parts in result.parts:
        local = parts.vertices
        for (i, k), trace in parts.traces.items():
            layer = sorted(parts.layers.layers[i])
            sched = parts.schedule.cell(i, k)
            cliques = parts.cover.cliques
            h, _ = build_hik(_component_graph(g, local), parts.layers, i, [(v, cliques[c]) for v, c in sched])
            minor, groups = apply_trace(_component_graph(g, local), trace)
            # each minor vertex absorbs exactly one layer vertex
            rep = []
            for grp in groups:
                inside = [v for v in grp if v in layer]
                assert len(inside) == 1
                rep.append(layer.index(inside[0]))
            assert sorted(rep) == list(range(len(layer)))
            assert {tuple(sorted((rep[a], rep[b]))) for a, b in minor.edges()} == set(h.edges())


def _component_graph(g, local):
    pos = {v: i for i, v in enumerate(local)}
    return Graph(len(local), [(pos[u], pos[v]) for u, v in g.edges() if u in pos and v in pos])


@given(graphs(min_n=1, max_n=12))
@settings(max_examples=80)
def test_random_graphs_are_lid(g):
    result = lid_color_layers(g)
    assert lid_by_definition(g, result.colors)
    assert result.colors_used <= result.accounting
    assert len(set(result.c1)) <= 4
    _check_traces(g, result)
    separation_trace(g, result)


@pytest.mark.parametrize("strategy", ["auto", "brute", "treedepth", "recursive"])
def test_layer_strategies(strategy):
    rng = random.Random(6)
    for _ in range(12):
        g = random_connected(11, 0.2, rng.getrandbits(32))
        result = lid_color_layers(g, strategy, "dsatur")
        assert is_lid(g, result.colors) and result.bound_ok


def test_custom_colorer_callable():
    result = lid_color_layers(grid(3, 3), lambda h: list(range(h.n)), proper_colorer("dsatur"))
    assert is_lid(grid(3, 3), result.colors)


def test_unknown_strategy():
    with pytest.raises(UsageError):
        lid_color_layers(path(3), "magic")
    with pytest.raises(UsageError):
        lid_color_layers(path(3), "auto", "magic")
    with pytest.raises(UsageError):
        lid_color_layers(path(3), minor_bound=2)


def test_clique_and_path_examples():
    for n in range(1, 7):
        assert is_lid(clique(n), lid_color_layers(clique(n)).colors)
    result = lid_color_layers(path(4))
    assert is_lid(path(4), result.colors)
    assert result.colors_used >= chi_lid_brute(path(4))


def test_grid_example():
    g = grid(4, 4)
    result = lid_color_layers(g, minor_bound=5)
    assert is_lid(g, result.colors) and result.bound_ok
    assert result.minor_certified is True and result.slot_bound_ok


@pytest.mark.parametrize("maker", [random_tree, random_outerplanar, random_apollonian])
def test_planar_families(maker):
    for seed in range(8):
        g = maker(30, seed)
        result = lid_color_layers(g, minor_bound=5)
        assert is_lid(g, result.colors) and result.bound_ok
        assert result.minor_certified is True and result.slot_bound_ok
        lines = separation_trace(g, result)
        assert all(line.split()[0] == "case" and line.split()[1] in "123" for line in lines)


def test_separation_trace_covers_every_distinguishable_edge():
    g = generate("apollonian", 15, seed=2)
    result = lid_color_layers(g)
    lines = separation_trace(g, result)
    edges = {tuple(sorted(map(int, line.split()[3:5]))) for line in lines}
    assert edges == {(u, v) for u, v in g.edges() if g.closed(u) != g.closed(v)}


def test_root_is_min_degree_lowest_index():
    g = Graph(5, [(0, 1), (0, 2), (0, 3), (1, 2), (3, 4), (2, 4)])
    result = lid_color_layers(g)
    assert result.roots == [min(range(5), key=lambda v: (g.degree(v), v))]


def test_disconnected_components_share_palette():
    g = Graph(7, [(0, 1), (1, 2), (3, 4), (4, 5), (5, 6)])
    result = lid_color_layers(g)
    assert is_lid(g, result.colors) and len(result.roots) == 2


def test_dsatur_is_proper():
    rng = random.Random(2)
    for _ in range(30):
        g = random_graph(rng, 12, 0.4)
        colors = dsatur(g)
        assert all(colors[u] != colors[v] for u, v in g.edges())
