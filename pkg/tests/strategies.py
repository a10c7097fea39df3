"""Hypothesis strategies for small graphs."""

from hypothesis import strategies as st

from lptkit.graph import Graph, is_connected, is_two_connected


@st.composite
def graphs(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, mask) if keep])


@st.composite
def connected_graphs(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    # a random spanning tree plus random extra edges
    edges = {(draw(st.integers(0, v - 1)), v) for v in range(1, n)}
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    extra = draw(st.lists(st.sampled_from(pairs), max_size=2 * n)) if pairs else []
    g = Graph.from_edges(n, edges | set(extra))
    assert is_connected(g)
    return g


@st.composite
def two_connected_graphs(draw, min_n=3, max_n=8):
    n = draw(st.integers(min_n, max_n))
    edges = {(i, (i + 1) % n) for i in range(n)}
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    extra = draw(st.lists(st.sampled_from(pairs), max_size=n))
    g = Graph.from_edges(n, {(min(e), max(e)) for e in edges} | set(extra))
    assert is_two_connected(g)
    return g


def to_nx(g):
    import networkx as nx

    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h
