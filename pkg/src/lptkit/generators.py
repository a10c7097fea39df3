"""Seeded random instance generators for sweeps and property tests.

Every generator takes a ``random.Random``; :func:`substream` derives
independent named streams from one master seed.
"""

from __future__ import annotations

import random

from .decomp import Society
from .graph import CycleSeq, Graph, PathSeq, is_connected, is_two_connected
from .lemmas import CubicInstance, PathMatchingInstance
from .oracle import _masks


def substream(seed: int, name: str) -> random.Random:
    return random.Random(f"{seed}:{name}")


def random_connected_graph(rng: random.Random, n: int, p: float | None = None) -> Graph:
    p = rng.uniform(0.15, 0.6) if p is None else p
    while True:
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
        g = Graph.from_edges(n, edges)
        if is_connected(g):
            return g


def random_two_connected(rng: random.Random, n: int, chord_prob: float | None = None) -> Graph:
    """Random ear decomposition grown to n vertices, then a few chords."""
    if n < 3:
        raise ValueError("2-connected graphs need n >= 3")
    start = rng.randint(3, max(3, min(n, rng.choice([3, 4, 5, n]))))
    edges = {(i, i + 1) for i in range(start - 1)} | {(0, start - 1)}
    size = start
    while size < n:
        inner = rng.randint(1, min(n - size, rng.choice([1, 2, 3, 5])))
        a, b = rng.sample(range(size), 2)
        chain = [a] + list(range(size, size + inner)) + [b]
        for x, y in zip(chain, chain[1:]):
            edges.add((min(x, y), max(x, y)))
        size += inner
    chord_prob = rng.choice([0.0, 0.02, 0.08, 0.2]) if chord_prob is None else chord_prob
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < chord_prob:
                edges.add((u, v))
    g = Graph.from_edges(n, edges)
    assert is_two_connected(g)
    return g


def random_society(rng: random.Random, max_n: int) -> Society:
    n = rng.randint(1, max_n)
    g = random_connected_graph(rng, n, rng.uniform(0.1, 0.5))
    t = rng.randint(1, n)
    omega = tuple(rng.sample(range(n), t))
    return Society(g, omega)


def random_matching_instance(rng: random.Random, max_m: int, max_extra: int = 6) -> PathMatchingInstance:
    size = rng.randint(0, max_m)
    n1 = max(1, size + rng.randint(0, max_extra))
    n2 = max(1, size + rng.randint(0, max_extra))
    ids = list(range(n1 + n2))
    rng.shuffle(ids)
    p1, p2 = ids[:n1], ids[n1:]
    left = rng.sample(p1, size)
    right = rng.sample(p2, size)
    return PathMatchingInstance(PathSeq(tuple(p1)), PathSeq(tuple(p2)), tuple(zip(left, right)))


def _reduction_shaped_instance(rng: random.Random, max_n: int) -> CubicInstance:
    """u-cycle with e = u_0 u_{m-1} and w-vertices on random triples."""
    j = rng.randint(1, max(1, max_n // 4))
    m = 3 * j
    perm = list(range(m))
    rng.shuffle(perm)
    edges = [(i, i + 1) for i in range(m - 1)] + [(0, m - 1)]
    for i in range(j):
        for u in perm[3 * i : 3 * i + 3]:
            edges.append((m + i, u))
    g = Graph.from_edges(m + j, edges)
    return CubicInstance(g, (0, m - 1), CycleSeq(tuple(range(m))))


def _random_cubic_graph(rng: random.Random, n: int) -> Graph | None:
    points = [v for v in range(n) for _ in range(3)]
    rng.shuffle(points)
    edges = set()
    for i in range(0, len(points), 2):
        u, v = points[i], points[i + 1]
        if u == v or (min(u, v), max(u, v)) in edges:
            return None
        edges.add((min(u, v), max(u, v)))
    return Graph.from_edges(n, edges)


def _cycles_through(rng, g: Graph, a: int, b: int, want: int, max_steps: int):
    nbr = _masks(g)
    found = []
    steps = [max_steps]

    def dfs(path, visited):
        steps[0] -= 1
        if steps[0] < 0 or len(found) >= want:
            return
        v = path[-1]
        order = [u for u in range(g.n) if nbr[v] >> u & 1 and not visited >> u & 1]
        rng.shuffle(order)
        for u in order:
            if u == b:
                if len(path) >= 2:
                    cyc = path + [b]
                    rest = set(range(g.n)) - set(cyc)
                    if all(not (g.adj[x] & rest) for x in rest):
                        found.append(tuple(cyc))
                continue
            path.append(u)
            dfs(path, visited | (1 << u))
            path.pop()

    dfs([a], 1 << a)
    return found


def _random_cubic_graph_instance(rng: random.Random, max_n: int) -> CubicInstance | None:
    n = rng.choice([v for v in range(4, max_n + 1, 2)])
    g = _random_cubic_graph(rng, n)
    if g is None or not is_two_connected(g):
        return None
    a, b = rng.choice(g.edges())
    cycles = _cycles_through(rng, g, a, b, want=40, max_steps=20_000)
    if not cycles:
        return None
    # prefer cycles that leave something outside when available
    outside = [c for c in cycles if len(c) < n]
    cyc = rng.choice(outside if outside and rng.random() < 0.8 else cycles)
    return CubicInstance(g, (a, b), CycleSeq(cyc))


def random_cubic_instance(rng: random.Random, max_n: int = 20) -> CubicInstance:
    while True:
        if rng.random() < 0.5:
            inst = _reduction_shaped_instance(rng, max_n)
        else:
            inst = _random_cubic_graph_instance(rng, max_n)
        if inst is not None:
            return inst.validate()
