import itertools

import networkx as nx
import pytest
from hypothesis import given, settings

from lptkit.errors import InputError
from lptkit.graph import (
    CONNECTED,
    DISCONNECTED,
    THREE_CONNECTED,
    TWO_CONNECTED,
    CutCertificate,
    CycleSeq,
    Graph,
    PathSeq,
    articulation_points,
    complete_graph,
    components,
    connectivity_class,
    cycle_graph,
    disjoint_union,
    distance,
    induced_subgraph,
    min_vertex_cut,
    path_graph,
    petersen_graph,
    vertex_connectivity,
)

from strategies import connected_graphs, graphs, to_nx


def test_graph_rejects_loops_and_bad_ids():
    with pytest.raises(InputError):
        Graph.from_edges(2, [(0, 0)])
    with pytest.raises(InputError):
        Graph.from_edges(2, [(0, 2)])
    with pytest.raises(InputError):
        Graph(2, (frozenset({1}), frozenset()))


def test_induced_subgraph_examples():
    k4 = complete_graph(4)
    h, ids = induced_subgraph(k4, range(4))
    assert h == k4 and ids == (0, 1, 2, 3)
    h, _ = induced_subgraph(path_graph(5), [0, 1, 2])
    assert h == path_graph(3)
    # outer 5-cycle of the Petersen graph
    h, ids = induced_subgraph(petersen_graph(), [0, 1, 2, 3, 4])
    assert set(h.edges()) == set(cycle_graph(5).edges())
    with pytest.raises(InputError):
        induced_subgraph(k4, [7])


def test_distance_examples():
    assert distance(cycle_graph(6), 2, 2) == 0
    assert distance(cycle_graph(6), 0, 3) == 3
    two_triangles = disjoint_union(cycle_graph(3), cycle_graph(3))
    assert distance(two_triangles, 0, 4) is None


def test_min_vertex_cut_examples():
    # separation may use terminal vertices, so a singleton side is cut by itself
    p3 = min_vertex_cut(path_graph(3), [0], [2])
    assert p3.size == 1 and p3.separates(path_graph(3)) and len(p3.paths) == 1
    c4 = min_vertex_cut(cycle_graph(4), [0], [2])
    assert c4.size == 1 and c4.separates(cycle_graph(4))
    adj = min_vertex_cut(cycle_graph(4), [0], [1])
    assert adj.size == 1
    # disjoint two-vertex sides of C_4 need two vertices
    c4b = min_vertex_cut(cycle_graph(4), [0, 1], [2, 3])
    assert c4b.size == 2 and len(c4b.paths) == 2


def test_connectivity_examples():
    assert connectivity_class(path_graph(4)) == CONNECTED
    assert connectivity_class(cycle_graph(5)) == TWO_CONNECTED
    assert connectivity_class(complete_graph(4)) == THREE_CONNECTED
    assert connectivity_class(disjoint_union(path_graph(2), path_graph(2))) == DISCONNECTED
    assert vertex_connectivity(petersen_graph()) == 3


def test_sequences():
    p = PathSeq((3, 1, 2))
    assert p.length == 2 and p.canonical().vertices == (2, 1, 3)
    c = CycleSeq((2, 0, 3, 1))
    assert c.canonical().vertices == (0, 2, 1, 3)
    assert c.dist(2, 1) == 1 and c.dist(2, 3) == 2
    with pytest.raises(InputError):
        PathSeq((1, 1))
    with pytest.raises(InputError):
        CycleSeq((0, 1))
    assert not PathSeq((0, 2)).is_valid_in(path_graph(3))


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=8))
def test_components_and_articulation_match_networkx(g):
    h = to_nx(g)
    assert sorted(map(sorted, components(g))) == sorted(sorted(c) for c in nx.connected_components(h))
    assert articulation_points(g) == set(nx.articulation_points(h))


@settings(max_examples=60, deadline=None)
@given(connected_graphs(min_n=2, max_n=8))
def test_vertex_connectivity_matches_networkx(g):
    assert vertex_connectivity(g) == nx.node_connectivity(to_nx(g))


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=2, max_n=8))
def test_min_cut_is_minimum_separator(g):
    a = {0}
    b = {g.n - 1}
    cut = min_vertex_cut(g, a, b)
    assert cut.separates(g)
    assert len(cut.paths) == cut.size
    assert all(set(p[1:-1]).isdisjoint(a | b) for p in cut.paths)
    assert len({v for p in cut.paths for v in p}) == sum(len(p) for p in cut.paths)
    # nothing smaller separates: brute force over all smaller sets
    for k in range(cut.size):
        for s in itertools.combinations(range(g.n), k):
            assert not CutCertificate(frozenset(s), frozenset(a), frozenset(b)).separates(g)
