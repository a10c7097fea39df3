import math
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lptkit.brute import best_cubic_gain, max_matching_path_count, reachable_matching_counts
from lptkit.checks import Recorder, ensure, recording
from lptkit.errors import BoundViolation, InputError
from lptkit.generators import random_cubic_instance, random_matching_instance, random_two_connected, substream
from lptkit.graph import CycleSeq, Graph, PathSeq, complete_graph, cycle_graph, path_graph, petersen_graph
from lptkit.lemmas import (
    CubicInstance,
    PathMatchingInstance,
    WeightedGraph,
    admissible_placement,
    check_longest_intersection,
    contracted_instance,
    cubic_cycle_finder,
    distant_pairs_sum,
    extremal_distant_pairs,
    inequality_check,
    matching_traverse_path,
    max_weight_cycle_through_edges,
    nice_hitting_set,
    separate_cycle_from_longest,
)
from lptkit.oracle import CYCLE, PATH, enumerate_longest, is_transversal

from strategies import to_nx

PRISM = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])
BOWTIE = Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])


def nx_cycles_through(g, edges):
    """Every cycle containing all the given edges, by networkx enumeration."""
    want = {frozenset(e) for e in edges}
    out = []
    for c in nx.simple_cycles(to_nx(g)):
        if len(c) < 3:
            continue
        cyc = {frozenset((c[i], c[(i + 1) % len(c)])) for i in range(len(c))}
        if want <= cyc:
            out.append(c)
    return out


# -- intersection and separation


def test_longest_members_intersect_petersen():
    g = petersen_graph()
    fam = enumerate_longest(g, PATH)
    rec = Recorder()
    with recording(rec):
        for a, b in zip(fam.members[:10], fam.members[-10:]):
            v = check_longest_intersection(a, b, g)
            assert v.intersect and v.consistent
    assert rec.ok and rec.summary["lemma.intersect"]["count"] == 10


def test_intersection_rejects_short_members():
    with pytest.raises(InputError):
        check_longest_intersection(PathSeq((0, 1)), PathSeq((0, 1, 2, 3)), cycle_graph(4))


def test_separate_examples():
    # cycle and longest path in different components: nothing to cut
    g = Graph.from_edges(8, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 6), (6, 7)])
    cut = separate_cycle_from_longest(CycleSeq((0, 1, 2)), PathSeq((3, 4, 5, 6, 7)), g, ell=4)
    assert cut.size == 0
    # triangle hanging off the middle of a long path by a two-edge stalk
    h = Graph.from_edges(12, [(i, i + 1) for i in range(8)] + [(4, 9), (9, 10), (10, 11), (11, 9)])
    cut = separate_cycle_from_longest(CycleSeq((9, 10, 11)), PathSeq(tuple(range(9))), h)
    assert cut.size == 1 and cut.separates(h)
    with pytest.raises(InputError):
        separate_cycle_from_longest(CycleSeq((9, 10, 11)), PathSeq((0, 1, 2)), h)


# -- nice hitting sets


def test_nice_hitting_examples():
    assert isinstance(nice_hitting_set(path_graph(6), PATH), int)
    v = nice_hitting_set(BOWTIE, PATH)
    assert isinstance(v, int) and is_transversal([v], enumerate_longest(BOWTIE, PATH))
    c = nice_hitting_set(complete_graph(4), CYCLE)
    assert isinstance(c, CycleSeq) and c.length == 4


def test_nice_hitting_random():
    rng = random.Random(3)
    for _ in range(20):
        g = random_two_connected(rng, rng.randint(4, 9))
        for kind in (PATH, CYCLE):
            res = nice_hitting_set(g, kind)
            hit = [res] if isinstance(res, int) else res.vertices
            assert is_transversal(hit, enumerate_longest(g, kind))


# -- distant pairs


def test_distant_pairs_examples():
    total, bound, ok = distant_pairs_sum(CycleSeq((0, 1, 2)), [(0, 1)])
    assert (total, bound, ok) == (1, 0.5, True)
    cycle, pairs = extremal_distant_pairs(3)
    assert distant_pairs_sum(cycle, pairs)[0] == 5
    with pytest.raises(InputError):
        distant_pairs_sum(tuple(range(6)), [(0, 3), (1, 4), (2, 5)][:1] + [(0, 2)])


def test_extremal_sums_match_direct_count():
    # a_i at position i, b_i at 2k-1-i: distance min(2k-1-2i, 2i+1)
    for k in range(1, 9):
        direct = sum(min(2 * k - 1 - 2 * i, 2 * i + 1) for i in range(k))
        assert direct == math.ceil(k * k / 2)
        assert distant_pairs_sum(*extremal_distant_pairs(k))[0] == direct


def test_admissible_placement_rules():
    cyc = tuple(range(8))
    assert admissible_placement(cyc, [(0, 4), (1, 5)])
    assert not admissible_placement(cyc, [(0, 1), (2, 3)])
    assert not admissible_placement(cyc, [(0, 4), (0, 5)])


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 14), st.data())
def test_distant_pairs_bound_random(t, data):
    k = data.draw(st.integers(1, t // 2))
    # split the cycle into two arcs and draw a's from one, b's from the other
    cut = data.draw(st.integers(k, t - k))
    a = data.draw(st.permutations(range(cut)))[:k]
    b = data.draw(st.permutations(range(cut, t)))[:k]
    total, bound, ok = distant_pairs_sum(tuple(range(t)), list(zip(a, b)))
    assert ok and total >= k * k / 2


# -- the inequality


def test_inequality_examples():
    for c in (0.01, 0.1, 0.18):
        for x in (0.0, 1.0, 50.0):
            assert inequality_check(c, x, [0.0])[2]
        assert inequality_check(c, 0.0, [3.0, 4.0, 5.0])[2]
    with pytest.raises(InputError):
        inequality_check(0.2, 1.0, [1.0])
    with pytest.raises(InputError):
        inequality_check(0.1, 1.0, [])


@settings(max_examples=300, deadline=None)
@given(
    st.floats(1e-6, 0.18),
    st.floats(0, 100),
    st.lists(st.floats(0, 100), min_size=1, max_size=6),
)
def test_inequality_property(c, x, ys):
    lhs, rhs, ok = inequality_check(c, x, ys)
    assert ok and lhs >= rhs * (1 - 1e-9)


# -- weighted cycles


def test_weighted_cycle_examples():
    k4 = complete_graph(4)
    cyc = max_weight_cycle_through_edges(WeightedGraph(k4, [1] * 4), (0, 1), (1, 2))
    assert cyc.length == 4
    zero = max_weight_cycle_through_edges(WeightedGraph(k4, [0] * 4), (0, 1), (2, 3))
    assert {(0, 1), (2, 3)} <= zero.edge_set()
    best = max(len(c) for c in nx_cycles_through(PRISM, [(0, 1), (1, 2)]))
    cyc = max_weight_cycle_through_edges(WeightedGraph(PRISM, [1] * 6), (0, 1), (1, 2))
    assert cyc.length == best == 6
    with pytest.raises(InputError):
        max_weight_cycle_through_edges(WeightedGraph(cycle_graph(4), [1] * 4), (0, 1), (1, 2))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 9), min_size=10, max_size=10), st.integers(0, 14), st.integers(0, 14))
def test_weighted_cycle_is_maximum_on_petersen(weights, i, j):
    g = petersen_graph()
    edges = g.edges()
    e, f = edges[i], edges[j]
    cyc = max_weight_cycle_through_edges(WeightedGraph(g, weights), e, f, check_pre=False)
    assert {e, f} <= cyc.edge_set()
    best = max(sum(weights[v] for v in c) for c in nx_cycles_through(g, [e, f]))
    assert sum(weights[v] for v in cyc.vertices) == best


# -- cubic instances


def test_cubic_k4_example():
    inst = CubicInstance(complete_graph(4), (0, 1), CycleSeq((0, 1, 2)))
    cyc = cubic_cycle_finder(inst)
    assert inst.gain(cyc) == 1 == best_cubic_gain(inst)


def test_cubic_reduction_shaped_example():
    # u-cycle of length 3 with one w-vertex on all of it (K_4 again, other labels)
    g = Graph.from_edges(4, [(0, 1), (1, 2), (0, 2), (3, 0), (3, 1), (3, 2)])
    inst = CubicInstance(g, (0, 2), CycleSeq((0, 1, 2)))
    assert inst.gain(cubic_cycle_finder(inst)) >= 1


def test_cubic_validation():
    with pytest.raises(InputError):
        CubicInstance(complete_graph(4), (0, 1), CycleSeq((1, 2, 3))).validate()
    with pytest.raises(InputError):
        CubicInstance(complete_graph(5), (0, 1), CycleSeq((0, 1, 2))).validate()


def nx_best_gain(inst):
    outside = inst.outside()
    return max(len(set(c) & outside) for c in nx_cycles_through(inst.graph, [inst.e]))


def test_cubic_random_against_oracles():
    rng = substream(5, "cubic-test")
    for _ in range(25):
        inst = random_cubic_instance(rng, 14)
        cyc = cubic_cycle_finder(inst)
        assert cyc.is_valid_in(inst.graph)
        assert (min(inst.e), max(inst.e)) in cyc.edge_set()
        gain = inst.gain(cyc)
        best = best_cubic_gain(inst)
        assert best == nx_best_gain(inst)
        assert 0.15 * len(inst.outside()) ** 0.8 <= gain <= best


# -- matchings between two paths


def test_matching_single_edge():
    inst = PathMatchingInstance(PathSeq((0, 1)), PathSeq((2, 3)), ((1, 2),))
    path = matching_traverse_path(inst)
    assert set(path.vertices) == {1, 2} and inst.matching_count(path) == 1


def test_matching_ladder():
    m = 10
    inst = PathMatchingInstance(PathSeq(tuple(range(m))), PathSeq(tuple(range(m, 2 * m))),
                                tuple((i, m + i) for i in range(m)))
    path = matching_traverse_path(inst)
    count = inst.matching_count(path)
    best = max_matching_path_count(inst)
    # a zigzag uses every rung
    assert best == m
    assert 1 <= count <= best


def test_matching_validation():
    with pytest.raises(InputError):
        PathMatchingInstance(PathSeq((0, 1)), PathSeq((1, 2)), ()).validate()
    with pytest.raises(InputError):
        PathMatchingInstance(PathSeq((0, 1)), PathSeq((2, 3)), ((0, 2), (0, 3))).validate()
    with pytest.raises(InputError):
        PathMatchingInstance(PathSeq((0, 1)), PathSeq((2, 3)), ((0, 1),)).validate()


def nx_max_matching_path(inst):
    g = to_nx(inst.graph())
    medges = {frozenset(e) for e in inst.m}
    best = 0
    for s in g.nodes:
        for t in g.nodes:
            if s < t:
                for p in nx.all_simple_paths(g, s, t):
                    best = max(best, sum(frozenset(p[i : i + 2]) in medges for i in range(len(p) - 1)))
    return best


def test_matching_oracle_matches_networkx():
    rng = substream(2, "matching-test")
    for _ in range(15):
        inst = random_matching_instance(rng, 5, max_extra=2)
        if len(inst.m) == 0:
            continue
        assert max_matching_path_count(inst) == nx_max_matching_path(inst)


def test_matching_random_bound_and_oracle():
    rng = substream(4, "matching-test")
    for _ in range(30):
        inst = random_matching_instance(rng, 24)
        path = matching_traverse_path(inst)
        assert path.is_valid_in(inst.graph())
        count = inst.matching_count(path)
        assert count >= 0.1 * len(inst.m) ** 0.8
        if len(inst.m) <= 10:
            assert count <= max_matching_path_count(inst)


def test_contraction_preserves_reachable_counts():
    rng = substream(6, "contract-test")
    for _ in range(30):
        inst = random_matching_instance(rng, 6, max_extra=3)
        small = contracted_instance(inst)
        assert max(reachable_matching_counts(small)) == max(reachable_matching_counts(inst))
        assert small.vertex_count() <= inst.vertex_count()


def test_bound_violation_is_raised():
    # the bound check itself refuses a too-small result
    with pytest.raises(BoundViolation):
        ensure("demo", 1, ">=", 2)
