"""Constructive versions of the auxiliary lemmas, each returning a certificate.

Every guaranteed bound is routed through :func:`lptkit.checks.ensure`, so a
failure raises :class:`BoundViolation` and an active recorder sees the
check either way.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .checks import ensure, ensure_true
from .decomp import CYCLE_TORSO, block_cut_tree, torso, tutte_decomposition
from .errors import InputError, InternalError
from .graph import (
    CutCertificate,
    CycleSeq,
    Graph,
    PathSeq,
    connectivity_class,
    induced_subgraph,
    is_two_connected,
    min_vertex_cut,
)
from .oracle import (
    CYCLE,
    PATH,
    LongestFamily,
    _masks,
    enumerate_longest,
    is_locally_longest,
    is_transversal,
    longest_length,
)

R = 0.8


# --------------------------------------------------------------------------
# intersection of longest paths / cycles


@dataclass(frozen=True)
class IntersectionVerdict:
    disjoint_paths: int
    intersect: bool
    premise: bool
    consistent: bool
    d1: int | None = None
    d2: int | None = None


def _check_longest_like(l, g: Graph):
    if isinstance(l, CycleSeq):
        l.validate(g)
        if l.length != longest_length(g, CYCLE):
            raise InputError(f"{l.vertices} is not a longest cycle")
    elif isinstance(l, PathSeq):
        l.validate(g)
        if not is_locally_longest(l, g):
            raise InputError(f"{l.vertices} is not a locally-longest path")
    else:
        raise InputError("expected a PathSeq or CycleSeq")


def _along(l, x, y):
    if isinstance(l, CycleSeq):
        return l.dist(x, y)
    return abs(l.vertices.index(x) - l.vertices.index(y))


def check_longest_intersection(l1, l2, g: Graph, *, check_pre: bool = True) -> IntersectionVerdict:
    """Two disjoint V(l1)-V(l2) paths force l1 and l2 to share a vertex."""
    if check_pre:
        _check_longest_like(l1, g)
        _check_longest_like(l2, g)
    v1, v2 = l1.vertex_set(), l2.vertex_set()
    cut = min_vertex_cut(g, v1, v2)
    k = cut.size
    inter = bool(v1 & v2)
    premise = k >= 2
    d1 = d2 = None
    if premise and not inter:
        r1, r2 = cut.paths[0], cut.paths[1]
        d1 = _along(l1, r1[0], r2[0])
        d2 = _along(l2, r1[-1], r2[-1])
    verdict = IntersectionVerdict(k, inter, premise, (not premise) or inter, d1, d2)
    ensure_true(
        "lemma.intersect",
        verdict.consistent,
        inputs={"l1": l1.vertices, "l2": l2.vertices},
        outputs={"disjoint_paths": k, "intersect": inter},
        witness={"d1": d1, "d2": d2},
    )
    return verdict


# --------------------------------------------------------------------------
# separating a cycle from a longest path / cycle


def separate_cycle_from_longest(c: CycleSeq, l, g: Graph, *, ell: int | None = None) -> CutCertificate:
    """Minimum cut between a cycle and a disjoint longest member.

    ``ell`` is the known longest length; when omitted it is recomputed.
    """
    c.validate(g)
    kind = CYCLE if isinstance(l, CycleSeq) else PATH
    l.validate(g)
    if ell is None:
        ell = longest_length(g, kind)
    if l.length != ell:
        raise InputError(f"{l.vertices} is not a longest {kind}")
    if c.vertex_set() & l.vertex_set():
        raise InputError("cycle and longest member must be disjoint")
    cut = min_vertex_cut(g, c.vertex_set(), l.vertex_set())
    ensure(
        "lemma.separate",
        cut.size,
        "<=",
        math.sqrt(2 * l.length),
        inputs={"c": c.vertices, "l": l.vertices},
        outputs={"separator": cut.separator},
    )
    return cut


# --------------------------------------------------------------------------
# a single vertex or a cycle meeting all longest members


def nice_hitting_set(g: Graph, kind: str, fam: LongestFamily | None = None):
    """Return a vertex (int) or a CycleSeq meeting every longest path/cycle."""
    if kind == CYCLE:
        if not is_two_connected(g):
            raise InputError("kind=cycle requires a 2-connected graph")
        fam = fam or enumerate_longest(g, CYCLE)
        c = fam.members[0]
        ensure_true("nicehitting.cycle", is_transversal(c.vertices, fam),
                    inputs={"graph": g.to_dict(), "kind": kind})
        return c
    fam = fam or enumerate_longest(g, PATH)
    bct = block_cut_tree(g)
    common = None
    for p in fam.members:
        vs = p.vertex_set()
        nodes = {("v", x) for x in vs}
        nodes |= {("b", i) for i, b in enumerate(bct.blocks) if b & vs}
        common = nodes if common is None else common & nodes
    ensure_true("nicehitting.helly", bool(common), inputs={"graph": g.to_dict()})
    shared = sorted(v for tag, v in common if tag == "v")
    if shared:
        # a tree node of the common subtree that is a vertex hits every member by itself
        result = shared[0]
        ensure_true("nicehitting.transversal", is_transversal([result], fam),
                    inputs={"graph": g.to_dict(), "kind": kind})
        return result
    bi = min(i for tag, i in common if tag == "b")
    block = bct.blocks[bi]
    result = None
    for p in fam.members:
        meet = p.vertex_set() & block
        if len(meet) == 1:
            result = next(iter(meet))
            break
    if result is None and len(block) == 2:
        result = min(block)
    if result is None and len(block) == 1:
        result = next(iter(block))
    if result is None:
        h, ids = induced_subgraph(g, block)
        cyc = enumerate_longest(h, CYCLE).members[0]
        result = CycleSeq(tuple(ids[v] for v in cyc.vertices)).canonical()
    hit = [result] if isinstance(result, int) else result.vertices
    ensure_true("nicehitting.transversal", is_transversal(hit, fam),
                inputs={"graph": g.to_dict(), "kind": kind})
    return result


# --------------------------------------------------------------------------
# distant pairs on a cycle


def admissible_placement(cycle: Sequence[int], pairs) -> bool:
    """Pairs pairwise disjoint and the a's / b's lie on two disjoint segments."""
    pos = {v: i for i, v in enumerate(cycle)}
    flat = [v for pr in pairs for v in pr]
    if len(set(flat)) != len(flat) or any(v not in pos for v in flat):
        return False
    label = {}
    for a, b in pairs:
        label[pos[a]] = "a"
        label[pos[b]] = "b"
    seq = [label[i] for i in sorted(label)]
    switches = sum(1 for i in range(len(seq)) if seq[i] != seq[i - 1])
    return switches <= 2


def distant_pairs_sum(cycle, pairs) -> tuple[int, float, bool]:
    """Sum of cycle distances over the pairs, the k^2/2 bound, and the verdict."""
    vs = cycle.vertices if isinstance(cycle, CycleSeq) else tuple(cycle)
    pairs = [tuple(p) for p in pairs]
    if not pairs:
        raise InputError("need k >= 1 pairs")
    if not admissible_placement(vs, pairs):
        raise InputError("pairs are not a disjoint a/b placement on two disjoint segments")
    t = len(vs)
    pos = {v: i for i, v in enumerate(vs)}
    total = 0
    for a, b in pairs:
        d = abs(pos[a] - pos[b])
        total += min(d, t - d)
    k = len(pairs)
    bound = k * k / 2
    ensure("lemma.distantpairs", total, ">=", bound, inputs={"cycle": vs, "pairs": pairs})
    return total, bound, total >= bound


def extremal_distant_pairs(k: int) -> tuple[tuple[int, ...], list[tuple[int, int]]]:
    """Cycle of length 2k with a_1..a_k, b_k..b_1 in circular order."""
    cycle = tuple(range(2 * k))
    pairs = [(i, 2 * k - 1 - i) for i in range(k)]
    return cycle, pairs


# --------------------------------------------------------------------------
# the numeric inequality


def inequality_check(c: float, x: float, ys: Sequence[float]) -> tuple[float, float, bool]:
    if not (0 < c <= 0.18):
        raise InputError("c must lie in (0, 0.18]")
    if x < 0 or any(y < 0 for y in ys) or not ys:
        raise InputError("x and y_i must be nonnegative, k >= 1")
    xr = 0.9 * x**R
    lhs = max(max(xr + c * y**R for y in ys), c * sum(y**R for y in ys))
    rhs = c * (x + sum(ys)) ** R
    ensure(
        "lemma.inequality",
        lhs,
        ">=",
        rhs * (1 - 1e-9),
        inputs={"c": c, "x": x, "ys": list(ys)},
    )
    return lhs, rhs, lhs >= rhs * (1 - 1e-9)


# --------------------------------------------------------------------------
# maximum-weight cycle through two edges (exact stand-in for the cubic theorem)


@dataclass(frozen=True)
class WeightedGraph:
    graph: Graph
    weight: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "weight", tuple(self.weight))
        if len(self.weight) != self.graph.n or any(w < 0 for w in self.weight):
            raise InputError("weights must be nonnegative and defined on every vertex")

    def total(self, vertices=None) -> int:
        if vertices is None:
            return sum(self.weight)
        return sum(self.weight[v] for v in vertices)


def _reach_mask(start: int, free: int, nbr: list[int]) -> int:
    seen = 0
    frontier = start
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
    return seen


def _best_cycle_through(g: Graph, weight, e, f, max_steps=50_000_000) -> tuple[int, ...] | None:
    """Exact maximum-weight cycle through edges e and f (vertex tuple a..b)."""
    a, b = e
    c, d = f
    f_is_e = {a, b} == {c, d}
    nbr = _masks(g)
    wmask = 0
    for v in range(g.n):
        if weight[v] > 0:
            wmask |= 1 << v
    full = (1 << g.n) - 1
    best_w = -1
    best_path = None
    steps = [max_steps]

    def wsum(mask):
        s = 0
        while mask:
            low = mask & -mask
            s += weight[low.bit_length() - 1]
            mask ^= low
        return s

    def dfs(path, visited, w, used_f):
        nonlocal best_w, best_path
        steps[0] -= 1
        if steps[0] < 0:
            raise InternalError("maximum-weight cycle search exceeded its step budget")
        v = path[-1]
        free = full & ~visited
        reach = _reach_mask(1 << v, free, nbr)
        if not reach >> b & 1:
            return
        if w + wsum(reach & wmask) <= best_w:
            return
        if not used_f:
            # f must still be traversable: an endpoint already passed is fatal
            for x in (c, d):
                if visited >> x & 1 and x != v:
                    return
        cand = nbr[v] & free
        while cand:
            low = cand & -cand
            u = low.bit_length() - 1
            cand ^= low
            uf = used_f or {v, u} == {c, d}
            if u == b:
                if len(path) >= 2 and uf:
                    tot = w + weight[b]
                    if tot > best_w:
                        best_w = tot
                        best_path = tuple(path) + (b,)
                continue
            path.append(u)
            dfs(path, visited | low, w + weight[u], uf)
            path.pop()

    dfs([a], (1 << a), weight[a], f_is_e)
    return best_path


def max_weight_cycle_through_edges(wg: WeightedGraph, e, f, *, check_pre: bool = True) -> CycleSeq:
    g = wg.graph
    if check_pre:
        if any(len(a) != 3 for a in g.adj):
            raise InputError("graph must be cubic")
        if connectivity_class(g) != "3-connected+":
            raise InputError("graph must be 3-connected")
    for u, v in (e, f):
        if not g.has_edge(u, v):
            raise InputError(f"({u}, {v}) is not an edge")
    path = _best_cycle_through(g, wg.weight, tuple(e), tuple(f))
    if path is None:
        raise InternalError("no cycle through the two edges", {"e": e, "f": f})
    cyc = CycleSeq(path)
    ensure(
        "theorem.weighted_cycle",
        wg.total(cyc.vertices),
        ">=",
        0.9 * wg.total() ** R,
        inputs={"graph": g.to_dict(), "weight": wg.weight, "e": e, "f": f},
    )
    return cyc


# --------------------------------------------------------------------------
# cycles gaining many off-cycle vertices in near-cubic graphs


@dataclass(frozen=True)
class CubicInstance:
    graph: Graph
    e: tuple[int, int]
    c0: CycleSeq

    def outside(self) -> frozenset:
        return frozenset(range(self.graph.n)) - self.c0.vertex_set()

    def gain(self, cyc: CycleSeq) -> int:
        return len(cyc.vertex_set() - self.c0.vertex_set())

    def validate(self) -> "CubicInstance":
        g = self.graph
        a, b = self.e
        if not g.has_edge(a, b):
            raise InputError("e is not an edge")
        if not is_two_connected(g):
            raise InputError("graph must be 2-connected")
        if g.max_degree() > 3:
            raise InputError("maximum degree exceeds 3")
        for v in range(g.n):
            if v not in (a, b) and g.degree(v) != 3:
                raise InputError(f"vertex {v} is not an endpoint of e and has degree {g.degree(v)}")
        self.c0.validate(g)
        if (min(a, b), max(a, b)) not in self.c0.edge_set():
            raise InputError("C0 does not pass through e")
        out = self.outside()
        for v in out:
            if g.adj[v] & out:
                raise InputError("V(G) - V(C0) is not independent")
        return self

    def to_dict(self):
        return {"graph": self.graph.to_dict(), "e": list(self.e), "c0": list(self.c0.vertices)}


def _path_through_e(cyc: Sequence[int], a: int, b: int) -> list[int]:
    """Rotate/reflect a cycle containing edge ab into the path a ... b avoiding ab."""
    vs = list(cyc)
    i = vs.index(a)
    vs = vs[i:] + vs[:i]
    if vs[-1] != b:
        vs = [vs[0]] + vs[1:][::-1]
    if vs[-1] != b:
        raise InternalError("cycle does not use edge e", {"cycle": list(cyc), "e": [a, b]})
    return vs


def _torso_cycle_order(h: Graph) -> list[int]:
    order = [0]
    prev = None
    while True:
        v = order[-1]
        nxt = [w for w in sorted(h.adj[v]) if w != prev]
        w = nxt[0]
        if w == 0:
            break
        order.append(w)
        prev = v
    return order


def _cubic(g: Graph, e: tuple[int, int], c0: CycleSeq) -> CycleSeq:
    a, b = e
    c0set = c0.vertex_set()
    outside = g.n - len(c0set)
    td = tutte_decomposition(g)
    t0 = min(t for t, bag in enumerate(td.bags) if a in bag and b in bag)
    h, hids = torso(g, td, t0)
    hindex = {v: i for i, v in enumerate(hids)}
    seq = _path_through_e(c0.vertices, a, b)
    pos = {v: i for i, v in enumerate(seq)}

    # components of T - t0
    adj_t = {t: set() for t in range(len(td.bags))}
    for x, y in td.tree_edges:
        adj_t[x].add(y)
        adj_t[y].add(x)
    children = []
    for t in td.neighbors(t0):
        sub = {t}
        stack = [t]
        while stack:
            s = stack.pop()
            for r in adj_t[s]:
                if r != t0 and r not in sub:
                    sub.add(r)
                    stack.append(r)
        verts = frozenset().union(*(td.bags[s] for s in sub))
        adh = td.bags[t] & td.bags[t0]
        ensure("cubic.child_adhesion", len(adh), "==", 2, inputs={"bag": sorted(td.bags[t])})
        c, d = sorted(adh, key=lambda v: pos.get(v, -1))
        ensure_true("cubic.child_on_c0", c in pos and d in pos, inputs={"adh": [c, d]})
        seg = seq[pos[c] : pos[d] + 1]
        ensure_true(
            "cubic.child_segment",
            len(seg) >= 3 and set(seg) <= verts and not (c0set & verts) - set(seg),
            inputs={"adh": [c, d], "verts": verts},
        )
        ensure_true("cubic.child_avoids_e", {c, d} != {a, b}, inputs={"adh": [c, d]})
        children.append({"adh": (c, d), "verts": verts, "P": seg})
    children.sort(key=lambda ch: pos[ch["adh"][0]])

    # recursive paths Q_i inside the children
    for ch in children:
        c, d = ch["adh"]
        gi, ids = induced_subgraph(g, ch["verts"])
        loc = {v: i for i, v in enumerate(ids)}
        if not gi.has_edge(loc[c], loc[d]):
            gi = gi.add_edges([(loc[c], loc[d])])
        ci = CycleSeq(tuple(loc[v] for v in ch["P"]))
        sub = CubicInstance(gi, (loc[c], loc[d]), ci)
        ci_prime = _cubic(gi, (loc[c], loc[d]), ci)
        q = [ids[v] for v in _path_through_e(ci_prime.vertices, loc[c], loc[d])]
        y = len(ch["verts"] - c0set)
        ensure(
            "cubic.child_gain",
            len(set(q) - c0set),
            ">=",
            0.15 * y**R,
            inputs=sub.to_dict(),
        )
        ch["Q"] = q
        ch["y"] = y

    virtual = {frozenset(ch["adh"]): i for i, ch in enumerate(children)}
    weight = tuple(0 if v in c0set else 1 for v in hids)
    x_count = sum(weight)
    is_cycle_torso = td.torso_kinds[t0] == CYCLE_TORSO
    ea, eb = hindex[a], hindex[b]

    def torso_cycle(f):
        if is_cycle_torso:
            return [hids[v] for v in _torso_cycle_order(h)]
        cyc = max_weight_cycle_through_edges(WeightedGraph(h, weight), (ea, eb), f, check_pre=False)
        return [hids[v] for v in cyc.vertices]

    def expand(cycle_vs, i):
        out = []
        k = len(cycle_vs)
        for idx in range(k):
            x, y = cycle_vs[idx], cycle_vs[(idx + 1) % k]
            out.append(x)
            j = virtual.get(frozenset((x, y)))
            if j is None:
                if not g.has_edge(x, y):
                    raise InternalError("torso edge is neither real nor virtual", {"edge": [x, y]})
                continue
            repl = children[j]["Q"] if j == i else children[j]["P"]
            if repl[0] != x:
                repl = repl[::-1]
            out.extend(repl[1:-1])
        return CycleSeq(tuple(out))

    candidates = []
    if not children:
        cyc = CycleSeq(tuple(torso_cycle((ea, eb))))
        ensure("cubic.torso_gain", len(cyc.vertex_set() - c0set), ">=", 0.9 * x_count**R,
               inputs={"torso": h.to_dict()})
        candidates.append(cyc)
    for i, ch in enumerate(children):
        ci, di = ch["adh"]
        ce = torso_cycle((hindex[ci], hindex[di]))
        ensure("cubic.torso_gain", len(set(ce) - c0set), ">=", 0.9 * x_count**R,
               inputs={"torso": h.to_dict(), "f": [ci, di]})
        candidates.append(expand(ce, i))
    if children:
        star = list(seq)
        for ch in reversed(children):
            c, d = ch["adh"]
            star[pos[c] : pos[d] + 1] = ch["Q"]
        candidates.append(CycleSeq(tuple(star)))

    ekey = (min(a, b), max(a, b))
    for cyc in candidates:
        if not cyc.is_valid_in(g) or ekey not in cyc.edge_set():
            raise InternalError("assembled cycle is invalid", {"cycle": list(cyc.vertices)})
    best = max(candidates, key=lambda cy: (len(cy.vertex_set() - c0set), [-v for v in cy.canonical().vertices]))
    best_gain = len(best.vertex_set() - c0set)
    ties = [cy for cy in candidates if len(cy.vertex_set() - c0set) == best_gain]
    best = min(ties, key=lambda cy: cy.canonical().vertices)
    ensure(
        "lemma.cubic",
        best_gain,
        ">=",
        0.15 * outside**R,
        inputs={"graph": g.to_dict(), "e": list(e), "c0": list(c0.vertices)},
    )
    return best


def cubic_cycle_finder(inst: CubicInstance) -> CycleSeq:
    """Cycle through e gaining at least 0.15 * |V(G) - V(C0)|^0.8 off-cycle vertices."""
    inst.validate()
    return _cubic(inst.graph, tuple(inst.e), inst.c0)


# --------------------------------------------------------------------------
# a path through many edges of a matching between two paths


@dataclass(frozen=True)
class PathMatchingInstance:
    p1: PathSeq
    p2: PathSeq
    m: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(tuple(e) for e in self.m))

    def vertex_count(self) -> int:
        return len(self.p1.vertices) + len(self.p2.vertices)

    def graph(self) -> Graph:
        edges = list(self.p1.edge_set()) + list(self.p2.edge_set()) + list(self.m)
        return Graph.from_edges(self.vertex_count(), edges)

    def validate(self) -> "PathMatchingInstance":
        s1, s2 = set(self.p1.vertices), set(self.p2.vertices)
        if s1 & s2:
            raise InputError("paths are not vertex-disjoint")
        if s1 | s2 != set(range(self.vertex_count())):
            raise InputError("vertex ids must be exactly 0..N-1")
        seen = set()
        for u, v in self.m:
            if not ((u in s1 and v in s2) or (u in s2 and v in s1)):
                raise InputError(f"matching edge ({u}, {v}) does not join the two paths")
            if u in seen or v in seen:
                raise InputError("matching edges share an endpoint")
            seen.update((u, v))
        return self

    def matching_count(self, path: PathSeq) -> int:
        medges = {frozenset(e) for e in self.m}
        vs = path.vertices
        return sum(1 for i in range(len(vs) - 1) if frozenset(vs[i : i + 2]) in medges)

    def to_dict(self):
        return {"p1": list(self.p1.vertices), "p2": list(self.p2.vertices), "m": [list(e) for e in self.m]}


def contract_instance(p1: Sequence[int], p2: Sequence[int], matched: set) -> tuple[list[int], list[int]]:
    """Contract path edges meeting at most one matched vertex, lowest index first.

    Returns the two contracted vertex sequences; each surviving vertex is a
    matched vertex and stands for the run of unmatched vertices merged into it.
    """
    paths = [list(p1), list(p2)]
    while True:
        done = True
        for path in paths:
            for i in range(len(path) - 1):
                x, y = path[i], path[i + 1]
                if x in matched and y in matched:
                    continue
                keep = x if x in matched else y if y in matched else x
                path[i : i + 2] = [keep]
                done = False
                break
            if not done:
                break
        if done:
            return paths[0], paths[1]


def _subpath(seq: Sequence[int], pos: dict, x: int, y: int) -> list[int]:
    i, j = pos[x], pos[y]
    if i <= j:
        return list(seq[i : j + 1])
    return list(seq[j : i + 1])[::-1]


def matching_traverse_path(inst: PathMatchingInstance) -> PathSeq:
    """A path in P1 u P2 u M using at least 0.1 * |M|^0.8 matching edges."""
    inst.validate()
    s1 = set(inst.p1.vertices)
    M = [(u, v) if u in s1 else (v, u) for u, v in inst.m]
    size = len(M)
    bound = 0.1 * size**R
    inputs = inst.to_dict()
    if size == 0:
        path = PathSeq((inst.p1.vertices[0],))
    elif size <= 8:
        path = PathSeq(min(M))
    else:
        path = _matching_reduction(inst, M)
    path.validate(inst.graph())
    count = inst.matching_count(path)
    ensure("lemma.matchings", count, ">=", bound, inputs=inputs, outputs={"count": count})
    return path


def _matching_reduction(inst: PathMatchingInstance, M) -> PathSeq:
    p1, p2 = inst.p1.vertices, inst.p2.vertices
    pos1 = {v: i for i, v in enumerate(p1)}
    pos2 = {v: i for i, v in enumerate(p2)}
    # discard up to two matching edges (latest along P1) to reach a multiple of 3
    M = sorted(M, key=lambda e: pos1[e[0]])
    drop = len(M) % 3
    kept = M[: len(M) - drop]
    matched = {u for u, _ in kept} | {v for _, v in kept}
    U, V = contract_instance(p1, p2, matched)
    m = len(U)
    partner = {}
    for u, v in kept:
        partner[u] = v
        partner[v] = u
    uidx = {u: i for i, u in enumerate(U)}
    edges = [(i, i + 1) for i in range(m - 1)] + [(0, m - 1)]
    triple_of = {}
    for i in range(m // 3):
        w = m + i
        for v in V[3 * i : 3 * i + 3]:
            edges.append((w, uidx[partner[v]]))
            triple_of[v] = i
    aux = Graph.from_edges(m + m // 3, edges)
    c0 = CycleSeq(tuple(range(m)))
    cyc = cubic_cycle_finder(CubicInstance(aux, (0, m - 1), c0))
    gain = len(cyc.vertex_set() - c0.vertex_set())
    ensure("matchings.cubic_gain", gain, ">=", 0.15 * (m / 3) ** R, inputs={"m": m})
    pprime = _path_through_e(cyc.vertices, 0, m - 1)

    out: list[int] = [U[0]]
    for idx in range(1, len(pprime)):
        prev, cur = pprime[idx - 1], pprime[idx]
        if cur >= m:
            continue
        if prev >= m:
            # U[...] - w - U[cur]: go down a matching edge, along P2, and back up
            before = U[pprime[idx - 2]]
            after = U[cur]
            va, vb = partner[before], partner[after]
            if triple_of[va] != triple_of[vb]:
                raise InternalError("w-vertex joins two different triples")
            out.extend(_subpath(p2, pos2, va, vb))
            out.append(after)
        else:
            out.extend(_subpath(p1, pos1, U[prev], U[cur])[1:])
    return PathSeq(tuple(out))


def contracted_instance(inst: PathMatchingInstance) -> PathMatchingInstance:
    """The instance after contraction, relabelled to dense ids (P1 first)."""
    inst.validate()
    matched = {v for e in inst.m for v in e}
    u_seq, v_seq = contract_instance(inst.p1.vertices, inst.p2.vertices, matched)
    relabel = {v: i for i, v in enumerate(u_seq + v_seq)}
    return PathMatchingInstance(
        PathSeq(tuple(range(len(u_seq)))),
        PathSeq(tuple(range(len(u_seq), len(u_seq) + len(v_seq)))),
        tuple((relabel[u], relabel[v]) for u, v in inst.m),
    )
