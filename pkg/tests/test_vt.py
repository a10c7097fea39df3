import math

import networkx as nx
import pytest

from lptkit.checks import Recorder, recording
from lptkit.errors import InputError, ParseError
from lptkit.graph import complete_graph, cycle_graph, vertex_connectivity
from lptkit.vt import (
    GroupTable,
    connected_circulants,
    corollary_check,
    cyclic_group_table,
    gen_cayley,
    gen_circulant,
    is_vertex_transitive,
    parse_group_table,
    petersen,
)

from strategies import to_nx

KLEIN = "4\n0 1 2 3\n1 0 3 2\n2 3 0 1\n3 2 1 0\n1 2\n"


def test_circulant_examples():
    assert gen_circulant(6, [1]).graph == cycle_graph(6)
    assert gen_circulant(5, [1, 2]).graph == complete_graph(5)
    c10 = gen_circulant(10, [2, 5])
    assert c10.n == 10 and c10.degree == 3
    assert all(c10.graph.degree(v) == 3 for v in range(10))
    assert nx.is_isomorphic(to_nx(gen_circulant(8, [1, 3]).graph), nx.circulant_graph(8, [1, 3]))
    with pytest.raises(InputError):
        gen_circulant(8, [2])
    with pytest.raises(InputError):
        gen_circulant(8, [5])


def test_circulant_corpus_size():
    # connected connection sets: nonempty subsets of 1..n//2 with gcd(n, S) = 1
    expected = sum(
        1
        for n in range(3, 13)
        for mask in range(1, 1 << (n // 2))
        if math.gcd(n, *[s + 1 for s in range(n // 2) if mask >> s & 1]) == 1
    )
    corpus = connected_circulants(12)
    assert len(corpus) == expected
    assert all(nx.is_connected(to_nx(inst.graph)) for inst in corpus)


def test_vertex_transitivity():
    assert is_vertex_transitive(petersen().graph)
    assert is_vertex_transitive(gen_circulant(9, [1, 3]).graph)
    star = complete_graph(4).add_vertex([0])
    assert not is_vertex_transitive(star)


def test_group_tables():
    klein = parse_group_table(KLEIN)
    cay = gen_cayley(klein)
    assert nx.is_isomorphic(to_nx(cay.graph), to_nx(cycle_graph(4)))
    z6 = gen_cayley(cyclic_group_table(6, [1, 5, 3]))
    assert nx.is_isomorphic(to_nx(z6.graph), nx.circulant_graph(6, [1, 3]))
    with pytest.raises(InputError):
        parse_group_table("3\n0 1 2\n1 2 0\n2 0 1\n0\n")  # identity in the generators
    with pytest.raises(InputError):
        gen_cayley(cyclic_group_table(6, [1]))  # not inverse-closed
    with pytest.raises(InputError):
        GroupTable(((0, 1), (0, 1)), (1,)).validate()
    with pytest.raises(ParseError):
        parse_group_table("2\n0 1\n1 x\n1\n")
    with pytest.raises(InputError):
        gen_cayley(cyclic_group_table(4, [2]))  # disconnected


def test_corollary_examples():
    rec = Recorder()
    with recording(rec):
        c6 = corollary_check(gen_circulant(6, [1]))
        pet = corollary_check(petersen())
    assert rec.ok
    assert (c6["ell"], c6["lpt"]) == (5, 1)
    assert (pet["ell"], pet["ell_cycle"], pet["kappa"]) == (9, 9, 3)
    assert vertex_connectivity(petersen().graph) == nx.node_connectivity(to_nx(petersen().graph))
    assert rec.summary["vt.orbit"]["count"] == 1
