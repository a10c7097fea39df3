import random

import networkx as nx
from hypothesis import given, settings

from lptkit.census import (
    canonical_form,
    connected_graphs,
    connected_graphs_upto,
    relabel,
    two_connected_graphs_upto,
)
from lptkit.graph import is_connected

from strategies import graphs, to_nx


def atlas_counts():
    """Connected and 2-connected unlabelled graph counts per order, from the networkx atlas."""
    conn, biconn = {}, {}
    for h in nx.graph_atlas_g():
        n = h.number_of_nodes()
        if n == 0 or not nx.is_connected(h):
            continue
        conn[n] = conn.get(n, 0) + 1
        if n >= 3 and nx.is_biconnected(h):
            biconn[n] = biconn.get(n, 0) + 1
    return conn, biconn


def test_counts_match_atlas():
    conn, biconn = atlas_counts()
    for n in range(1, 8):
        assert len(connected_graphs(n)) == conn[n]
    assert conn[7] == 853
    assert len(connected_graphs_upto(7, minimum=2)) == sum(conn[n] for n in range(2, 8)) == 995
    assert len(two_connected_graphs_upto(7)) == sum(biconn.values()) == 538


def test_representatives_are_connected_and_distinct():
    reps = connected_graphs(6)
    assert all(is_connected(g) for g in reps)
    nxs = [to_nx(g) for g in reps]
    for i in range(len(nxs)):
        for j in range(i + 1, len(nxs)):
            if nxs[i].number_of_edges() == nxs[j].number_of_edges():
                assert not nx.is_isomorphic(nxs[i], nxs[j])


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=8))
def test_canonical_form_is_relabelling_invariant(g):
    order = list(range(g.n))
    random.Random(g.m * 31 + g.n).shuffle(order)
    assert canonical_form(relabel(g, order)) == canonical_form(g)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=6), graphs(max_n=6))
def test_canonical_form_separates_non_isomorphic(g, h):
    same = canonical_form(g) == canonical_form(h)
    assert same == nx.is_isomorphic(to_nx(g), to_nx(h))
