"""Brute-force oracles used to cross-check the constructive lemma engines."""

from __future__ import annotations

from itertools import combinations, permutations

from .lemmas import CubicInstance, PathMatchingInstance, admissible_placement
from .oracle import _masks


def best_cubic_gain(inst: CubicInstance) -> int:
    """Maximum |V(C) - V(C0)| over all cycles C through e."""
    g = inst.graph
    a, b = inst.e
    c0 = inst.c0.vertex_set()
    nbr = _masks(g)
    best = -1

    def dfs(v, visited, gain):
        nonlocal best
        cand = nbr[v] & ~visited
        while cand:
            low = cand & -cand
            u = low.bit_length() - 1
            cand ^= low
            if u == b:
                if v != a:
                    best = max(best, gain)
                continue
            dfs(u, visited | low, gain + (u not in c0))

    dfs(a, 1 << a, 0)
    return best


def max_matching_path_count(inst: PathMatchingInstance, max_steps: int = 50_000_000) -> int:
    """Maximum number of matching edges on any path of P1 u P2 u M."""
    g = inst.graph()
    nbr = _masks(g)
    medge = {frozenset(e) for e in inst.m}
    partner_mask = 0
    for u, v in inst.m:
        partner_mask |= (1 << u) | (1 << v)
    total = len(inst.m)
    best = 0
    steps = [max_steps]

    def dfs(v, visited, count):
        nonlocal best
        steps[0] -= 1
        if steps[0] < 0:
            raise RuntimeError("matching path oracle exceeded its step budget")
        if count > best:
            best = count
        # each remaining matching edge needs a fresh matched endpoint
        left = bin(partner_mask & ~visited).count("1")
        if count + min(total - count, (left + 1) // 2 + 1) <= best:
            return
        cand = nbr[v] & ~visited
        while cand:
            low = cand & -cand
            u = low.bit_length() - 1
            cand ^= low
            dfs(u, visited | low, count + (frozenset((u, v)) in medge))

    for s in range(g.n):
        dfs(s, 1 << s, 0)
        if best == total:
            break
    return best


def reachable_matching_counts(inst: PathMatchingInstance) -> set[int]:
    """Every matching-edge count realised by some path (small instances only)."""
    g = inst.graph()
    nbr = _masks(g)
    medge = {frozenset(e) for e in inst.m}
    seen = set()

    def dfs(v, visited, count):
        seen.add(count)
        cand = nbr[v] & ~visited
        while cand:
            low = cand & -cand
            u = low.bit_length() - 1
            cand ^= low
            dfs(u, visited | low, count + (frozenset((u, v)) in medge))

    for s in range(g.n):
        dfs(s, 1 << s, 0)
    return seen


def distinct_admissible_placements(t: int, k: int):
    """Every admissible placement of k pairs on the cycle 0..t-1, each once."""
    cycle = tuple(range(t))
    for a_set in combinations(range(t), k):
        rest = [v for v in range(t) if v not in a_set]
        for b_set in combinations(rest, k):
            # separability depends only on the two sets, not on the pairing
            if not admissible_placement(cycle, list(zip(a_set, b_set))):
                continue
            for perm in permutations(b_set):
                yield cycle, list(zip(a_set, perm))
