"""Exact, exponential-time oracles for longest paths and cycles.

These are the ground truth every constructive engine is checked against.
They refuse work beyond explicit caps (vertex count, search steps, family
size) instead of timing out.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .graph import CycleSeq, Graph, PathSeq, bfs_distances, is_connected
from .errors import InputError, OracleInfeasible

PATH = "path"
CYCLE = "cycle"

DEFAULT_CAP = 24
DEFAULT_MAX_MEMBERS = 500_000
DEFAULT_MAX_STEPS = 20_000_000


def _check_kind(kind):
    if kind not in (PATH, CYCLE):
        raise InputError(f"kind must be 'path' or 'cycle', not {kind!r}")


def _masks(g: Graph) -> list[int]:
    out = []
    for v in range(g.n):
        m = 0
        for w in g.adj[v]:
            m |= 1 << w
        out.append(m)
    return out


def _reach_count(start_mask: int, free: int, nbr: list[int]) -> int:
    """Number of vertices of ``free`` reachable from ``start_mask``."""
    seen = 0
    frontier = start_mask
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= nbr[low.bit_length() - 1]
            f ^= low
        nxt &= free & ~seen
        seen |= nxt
        frontier = nxt
    return bin(seen).count("1")


class _Budget:
    def __init__(self, steps):
        self.left = steps

    def tick(self):
        self.left -= 1
        if self.left < 0:
            raise OracleInfeasible("search step budget exhausted")


@dataclass(frozen=True)
class LongestFamily:
    kind: str
    length: int
    members: tuple

    @cached_property
    def masks(self) -> tuple[int, ...]:
        out = []
        for mbr in self.members:
            m = 0
            for v in mbr.vertices:
                m |= 1 << v
            out.append(m)
        return tuple(out)

    def __len__(self):
        return len(self.members)

    def vertex_union(self) -> frozenset:
        out = set()
        for mbr in self.members:
            out.update(mbr.vertices)
        return frozenset(out)

    def to_dict(self):
        return {
            "kind": self.kind,
            "length": self.length,
            "size": len(self.members),
        }


@dataclass(frozen=True)
class HittingSet:
    vertices: frozenset
    optimal: bool

    @property
    def size(self) -> int:
        return len(self.vertices)

    def to_dict(self):
        return {"vertices": sorted(self.vertices), "optimal": self.optimal}


def _guard(g: Graph, cap: int):
    if g.n > cap:
        raise OracleInfeasible(f"oracle infeasible: n={g.n} exceeds cap {cap}")


def _longest_paths(g, max_members, budget, collect=True, stop_at=None):
    nbr = _masks(g)
    full = (1 << g.n) - 1
    best = -1
    found: list[tuple[int, ...]] = []

    def dfs(path, visited):
        nonlocal best, found
        budget.tick()
        k = len(path) - 1
        v = path[-1]
        if k > best:
            best = k
            found = []
        if k == best and collect and path[0] <= v:
            found.append(tuple(path))
            if len(found) > max_members:
                raise OracleInfeasible("longest family exceeds member cap")
        if stop_at is not None and best >= stop_at:
            return True
        free = full & ~visited
        cand = nbr[v] & free
        if not cand:
            return False
        if k + _reach_count(1 << v, free, nbr) < best:
            return False
        while cand:
            low = cand & -cand
            w = low.bit_length() - 1
            cand ^= low
            path.append(w)
            if dfs(path, visited | low):
                return True
            path.pop()
        return False

    for s in range(g.n):
        if dfs([s], 1 << s):
            break
    return best, found


def _longest_cycles(g, max_members, budget, collect=True, stop_at=None):
    nbr = _masks(g)
    best = 0
    found: list[tuple[int, ...]] = []

    def dfs(path, visited, allowed):
        nonlocal best, found
        budget.tick()
        v = path[-1]
        s = path[0]
        k = len(path)
        if k >= 3 and nbr[v] >> s & 1 and path[1] < v:
            if k > best:
                best = k
                found = []
            if k == best and collect:
                found.append(tuple(path))
                if len(found) > max_members:
                    raise OracleInfeasible("longest family exceeds member cap")
            if stop_at is not None and best >= stop_at:
                return True
        free = allowed & ~visited
        cand = nbr[v] & free
        if not cand:
            return False
        # the cycle must still return to s through unvisited vertices
        if k + _reach_count(1 << v, free, nbr) < best:
            return False
        while cand:
            low = cand & -cand
            w = low.bit_length() - 1
            cand ^= low
            path.append(w)
            if dfs(path, visited | low, allowed):
                return True
            path.pop()
        return False

    full = (1 << g.n) - 1
    for s in range(g.n):
        allowed = full & ~((1 << (s + 1)) - 1)
        if dfs([s], 1 << s, allowed | (1 << s)):
            break
    return best, found


def longest_length(g: Graph, kind: str, *, cap: int = 64, max_steps: int = DEFAULT_MAX_STEPS) -> int:
    """Maximum path length (edges) or cycle length; 0 for acyclic graphs and kind=cycle."""
    _check_kind(kind)
    _guard(g, cap)
    budget = _Budget(max_steps)
    if kind == PATH:
        if g.n == 0:
            raise InputError("empty graph")
        best, _ = _longest_paths(g, 0, budget, collect=False, stop_at=g.n - 1)
    else:
        best, _ = _longest_cycles(g, 0, budget, collect=False, stop_at=g.n)
    return best


def enumerate_longest(
    g: Graph,
    kind: str,
    *,
    cap: int = DEFAULT_CAP,
    max_members: int = DEFAULT_MAX_MEMBERS,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> LongestFamily:
    """All longest paths (or cycles) of ``g`` in canonical form and order."""
    _check_kind(kind)
    _guard(g, cap)
    budget = _Budget(max_steps)
    if kind == PATH:
        if g.n == 0:
            raise InputError("empty graph")
        if not is_connected(g):
            raise InputError("longest-path family requires a connected graph")
        best, found = _longest_paths(g, max_members, budget)
        members = tuple(PathSeq(p) for p in sorted(found))
        return LongestFamily(PATH, best, members)
    best, found = _longest_cycles(g, max_members, budget)
    members = tuple(CycleSeq(c) for c in sorted(found))
    return LongestFamily(CYCLE, best, members)


def cycles_of_length(g: Graph, length: int, *, budget: _Budget | None = None) -> Iterator[CycleSeq]:
    """Canonical cycles of exactly ``length`` vertices, in lexicographic order."""
    nbr = _masks(g)
    budget = budget or _Budget(DEFAULT_MAX_STEPS)
    full = (1 << g.n) - 1
    dist_cache: dict[int, dict[int, int]] = {}

    def dfs(path, visited, allowed, s):
        budget.tick()
        v = path[-1]
        k = len(path)
        if k == length:
            if nbr[v] >> s & 1 and path[1] < v:
                yield CycleSeq(tuple(path))
            return
        # distance back to s must fit in the remaining budget of vertices
        if dist_cache[s].get(v, length + 1) > length - k + 1:
            return
        cand = nbr[v] & allowed & ~visited
        while cand:
            low = cand & -cand
            w = low.bit_length() - 1
            cand ^= low
            path.append(w)
            yield from dfs(path, visited | low, allowed, s)
            path.pop()

    for s in range(g.n):
        allowed = full & ~((1 << (s + 1)) - 1)
        sub_removed = frozenset(range(s))
        dist_cache[s] = bfs_distances(g, s, sub_removed)
        yield from dfs([s], 1 << s, allowed, s)


def all_cycles(g: Graph, *, max_steps: int = DEFAULT_MAX_STEPS) -> list[CycleSeq]:
    budget = _Budget(max_steps)
    out = []
    for L in range(3, g.n + 1):
        out.extend(cycles_of_length(g, L, budget=budget))
    return out


def is_transversal(s: Iterable[int], fam: LongestFamily) -> bool:
    mask = 0
    for v in s:
        mask |= 1 << v
    return all(m & mask for m in fam.masks)


def _min_hitting_set(masks: list[int], n: int) -> tuple[int, ...]:
    if not masks:
        return ()
    verts = sorted({v for m in masks for v in range(n) if m >> v & 1})

    def greedy(ms):
        chosen = []
        ms = list(ms)
        while ms:
            v = max(verts, key=lambda x: (sum(1 for m in ms if m >> x & 1), -x))
            chosen.append(v)
            ms = [m for m in ms if not m >> v & 1]
        return chosen

    best = list(greedy(masks))

    def packing_bound(ms):
        used = 0
        count = 0
        for m in sorted(ms, key=lambda m: bin(m).count("1")):
            if not m & used:
                used |= m
                count += 1
        return count

    def rec(ms, chosen):
        nonlocal best
        if not ms:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        if len(chosen) + packing_bound(ms) >= len(best):
            return
        target = min(ms, key=lambda m: (bin(m).count("1"), m))
        cover = {}
        for v in verts:
            if target >> v & 1:
                cover[v] = sum(1 for m in ms if m >> v & 1)
        for v in sorted(cover, key=lambda x: (-cover[x], x)):
            chosen.append(v)
            rec([m for m in ms if not m >> v & 1], chosen)
            chosen.pop()

    rec(list(dict.fromkeys(masks)), [])
    return tuple(sorted(best))


def exact_transversal_number(
    g: Graph,
    kind: str,
    fam: LongestFamily | None = None,
    *,
    cap: int = DEFAULT_CAP,
    max_members: int = DEFAULT_MAX_MEMBERS,
) -> HittingSet:
    """Minimum longest-path (cycle) transversal by branch and bound.

    When longest members are spanning every vertex hits all of them, so the
    answer ``{0}`` is returned without enumerating the family.
    """
    _check_kind(kind)
    if fam is None:
        if kind == PATH and not is_connected(g):
            raise InputError("lpt requires a connected graph")
        ell = longest_length(g, kind, cap=max(cap, g.n))
        if (kind == PATH and ell == g.n - 1) or (kind == CYCLE and ell == g.n):
            return HittingSet(frozenset({0}), True)
        fam = enumerate_longest(g, kind, cap=cap, max_members=max_members)
    if not fam.members:
        return HittingSet(frozenset(), True)
    return HittingSet(frozenset(_min_hitting_set(list(fam.masks), g.n)), True)


def is_locally_longest(p: PathSeq, g: Graph, *, max_steps: int = DEFAULT_MAX_STEPS) -> bool:
    """True iff no longer path shares the endpoints of ``p``."""
    p.validate(g)
    u, v = p.ends
    if u == v:
        return True
    nbr = _masks(g)
    full = (1 << g.n) - 1
    target = p.length
    budget = _Budget(max_steps)

    def dfs(x, visited, k):
        budget.tick()
        if x == v:
            return k > target
        free = full & ~visited
        # remaining vertices reachable must allow exceeding target
        if k + _reach_count(1 << x, free, nbr) <= target:
            return False
        cand = nbr[x] & free
        while cand:
            low = cand & -cand
            w = low.bit_length() - 1
            cand ^= low
            if dfs(w, visited | low, k + 1):
                return True
        return False

    return not dfs(u, 1 << u, 0)


def is_geodetic(c: CycleSeq, g: Graph) -> bool:
    c.validate(g)
    vs = c.vertices
    for x in vs:
        dist = bfs_distances(g, x)
        for y in vs:
            if dist.get(y) != c.dist(x, y):
                return False
    return True


def is_longest(member, g: Graph, kind: str) -> bool:
    return member.length == longest_length(g, kind)
