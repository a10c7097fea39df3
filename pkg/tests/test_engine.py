import dataclasses
import math
import random

import pytest
from hypothesis import given, settings

from lptkit.checks import Recorder, recording
from lptkit.engine import (
    CASE1_SPLIT,
    CASE2_SOCIETY,
    DIRECT_CYCLE,
    SINGLE_VERTEX,
    TransversalCertificate,
    bound_for,
    case1_split,
    case2_society,
    min_hitting_cycle,
    transversal,
    verify_certificate,
)
from lptkit.errors import InputError, InternalError
from lptkit.generators import random_connected_graph
from lptkit.graph import CycleSeq, Graph, complete_graph, cycle_graph, path_graph, petersen_graph
from lptkit.oracle import CYCLE, PATH, enumerate_longest, exact_transversal_number, is_geodetic, is_transversal

from strategies import connected_graphs, two_connected_graphs

# a 14-edge path with a chorded 5-cycle hanging off its middle: the path is the
# only longest path and both halves of the cycle miss it
GADGET = Graph.from_edges(
    20,
    [(i, i + 1) for i in range(14)] + [(15, 16), (16, 17), (17, 18), (18, 19), (19, 15), (15, 17), (7, 15)],
)
GADGET_CYCLE = CycleSeq((15, 16, 17, 18, 19))


def test_small_examples():
    p5 = transversal(path_graph(5), PATH)
    assert p5.branch == SINGLE_VERTEX and p5.size == 1 and p5.bound_used == pytest.approx(math.sqrt(40))
    c6 = transversal(cycle_graph(6), CYCLE)
    assert c6.branch == DIRECT_CYCLE and c6.vertices == frozenset(range(6))
    k4 = transversal(complete_graph(4), PATH)
    assert is_transversal(k4.vertices, enumerate_longest(complete_graph(4), PATH))


def test_petersen():
    g = petersen_graph()
    for kind in (PATH, CYCLE):
        fam = enumerate_longest(g, kind)
        cert = transversal(g, kind, fam=fam)
        assert cert.size <= math.sqrt(80)
        assert not verify_certificate(g, cert, fam)
    # Hamiltonian longest paths: a single vertex already hits them all
    assert isinstance(min_hitting_cycle(g, PATH), int)
    hit = min_hitting_cycle(g, CYCLE)
    # a 9-cycle misses one vertex, so every 5-cycle meets it
    assert hit.length == 5 and is_transversal(hit.vertices, enumerate_longest(g, CYCLE))


def test_bound_for():
    assert bound_for(PATH, 200, 1) == pytest.approx(33.0)
    assert bound_for(PATH, 2, 1) == pytest.approx(4.0)
    assert bound_for(CYCLE, 18, 3) == pytest.approx(12.0)


def test_input_errors():
    with pytest.raises(InputError):
        transversal(Graph.from_edges(4, [(0, 1), (2, 3)]), PATH)
    with pytest.raises(InputError):
        transversal(path_graph(4), CYCLE)
    with pytest.raises(InputError):
        transversal(path_graph(4), "trail")


def test_case1_split_mechanics():
    fam = enumerate_longest(GADGET, PATH)
    assert fam.length == 14 and len(fam) == 1
    assert not is_geodetic(GADGET_CYCLE, GADGET)
    rec = Recorder()
    with recording(rec):
        s, witness = case1_split(GADGET, GADGET_CYCLE, fam)
    assert rec.ok
    assert s == {15}
    c1, c2 = CycleSeq(tuple(witness["c1"])), CycleSeq(tuple(witness["c2"]))
    assert c1.length < 5 and c2.length < 5
    assert set(witness["k1"]) | set(witness["k2"]) == s
    cert = TransversalCertificate(PATH, GADGET.n, fam.length, s, CASE1_SPLIT, bound_for(PATH, GADGET.n, 14), witness)
    # this cycle was not a hitting cycle, so only the transversal property may fail
    assert verify_certificate(GADGET, cert, fam) == ["S misses a longest member"]
    bad = dataclasses.replace(cert, witness={**witness, "k1": []})
    assert "k1 does not separate" in verify_certificate(GADGET, bad, fam)


def test_case1_split_detects_minimality_violation():
    # the whole 6-cycle with a chord: the shorter halves still meet every longest path
    g = cycle_graph(6).add_edges([(0, 2)])
    fam = enumerate_longest(g, PATH)
    with pytest.raises(InternalError):
        case1_split(g, CycleSeq(tuple(range(6))), fam)
    with pytest.raises(InputError):
        case1_split(cycle_graph(5), CycleSeq(tuple(range(5))), enumerate_longest(cycle_graph(5), PATH))


def test_case2_on_cycles():
    for n in range(4, 10):
        g = cycle_graph(n)
        fam = enumerate_longest(g, CYCLE)
        s, witness = case2_society(g, CycleSeq(tuple(range(n))), fam, kind=CYCLE)
        assert witness["p"] == 2 and len(s) <= 5
        assert is_transversal(s, fam)


def test_forced_split_still_certifies():
    g = cycle_graph(7).add_edges([(0, 3)])
    fam = enumerate_longest(g, PATH)
    cert = transversal(g, PATH, fam=fam, force_split=True)
    assert cert.branch in (SINGLE_VERTEX, CASE2_SOCIETY, CASE1_SPLIT)
    assert not verify_certificate(g, cert, fam)


def test_certificate_tampering_is_detected():
    g = petersen_graph()
    fam = enumerate_longest(g, CYCLE)
    cert = transversal(g, CYCLE, fam=fam)
    assert not verify_certificate(g, cert, fam)
    assert verify_certificate(g, dataclasses.replace(cert, vertices=frozenset()), fam)
    assert verify_certificate(g, dataclasses.replace(cert, branch="mystery"), fam)


@settings(max_examples=40, deadline=None)
@given(connected_graphs(min_n=2, max_n=8))
def test_path_certificates(g):
    fam = enumerate_longest(g, PATH)
    for force in (False, True):
        cert = transversal(g, PATH, fam=fam, force_split=force)
        assert not verify_certificate(g, cert, fam)
        assert exact_transversal_number(g, PATH, fam).size <= cert.size <= bound_for(PATH, g.n, fam.length)
        if cert.branch == CASE2_SOCIETY:
            assert cert.size <= 2 * cert.witness["p"] + 1


@settings(max_examples=40, deadline=None)
@given(two_connected_graphs(max_n=8))
def test_cycle_certificates(g):
    fam = enumerate_longest(g, CYCLE)
    for force in (False, True):
        cert = transversal(g, CYCLE, fam=fam, force_split=force)
        assert not verify_certificate(g, cert, fam)
        assert cert.size <= math.sqrt(8 * g.n)


def test_random_larger_graphs():
    rng = random.Random(9)
    for _ in range(15):
        g = random_connected_graph(rng, rng.randint(9, 12), rng.uniform(0.15, 0.3))
        fam = enumerate_longest(g, PATH)
        cert = transversal(g, PATH, fam=fam)
        assert not verify_certificate(g, cert, fam)
