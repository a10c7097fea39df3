"""Constructive longest path / cycle transversals with certificates.

The pipeline: a minimum-length cycle meeting every longest member, then
either that cycle itself, a split along a shortcut when the cycle is not
geodetic, or a bag boundary of a linear decomposition of the cycle's
society.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .checks import ensure, ensure_true
from .decomp import (
    LinearDecomposition,
    Society,
    build_linear_decomposition,
    max_transaction,
    verify_linear_decomposition,
)
from .errors import InputError, InternalError
from .graph import CycleSeq, Graph, PathSeq, bfs_distances, is_connected, is_two_connected, shortest_path
from .lemmas import nice_hitting_set, separate_cycle_from_longest
from .oracle import (
    CYCLE,
    DEFAULT_CAP,
    PATH,
    LongestFamily,
    _Budget,
    cycles_of_length,
    enumerate_longest,
    is_geodetic,
    is_transversal,
)

SINGLE_VERTEX = "single-vertex"
DIRECT_CYCLE = "direct-cycle"
CASE1_SPLIT = "case1-split"
CASE2_SOCIETY = "case2-society"


def bound_for(kind: str, n: int, ell: int) -> float:
    if kind == PATH:
        return min(math.sqrt(8 * n), 33 * ell ** (5 / 9))
    return math.sqrt(8 * n)


@dataclass(frozen=True)
class TransversalCertificate:
    kind: str
    n: int
    ell: int
    vertices: frozenset
    branch: str
    bound_used: float
    witness: dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def margin(self) -> float:
        return self.bound_used - self.size

    def to_dict(self):
        return {
            "kind": self.kind,
            "n": self.n,
            "ell": self.ell,
            "S": sorted(self.vertices),
            "size": self.size,
            "branch": self.branch,
            "bound": self.bound_used,
            "margin": self.margin,
            "witness": self.witness,
        }


def _check_input(g: Graph, kind: str):
    if kind not in (PATH, CYCLE):
        raise InputError(f"kind must be 'path' or 'cycle', not {kind!r}")
    if g.n < 2:
        raise InputError("need n >= 2")
    if kind == PATH and not is_connected(g):
        raise InputError("kind=path requires a connected graph")
    if kind == CYCLE and not is_two_connected(g):
        raise InputError("kind=cycle requires a 2-connected graph")


def min_hitting_cycle(g: Graph, kind: str, fam: LongestFamily | None = None):
    """A vertex meeting every longest member, or a shortest cycle that does."""
    fam = fam or enumerate_longest(g, kind)
    nice = nice_hitting_set(g, kind, fam)
    if isinstance(nice, int):
        return nice
    budget = _Budget(50_000_000)
    for length in range(3, nice.length + 1):
        for cyc in cycles_of_length(g, length, budget=budget):
            if is_transversal(cyc.vertices, fam):
                return cyc
    raise InternalError("no hitting cycle up to the length of the guaranteed one",
                        {"guaranteed": list(nice.vertices)})


# --------------------------------------------------------------------------
# case 1: the hitting cycle has a shortcut


def _shortcut(g: Graph, c: CycleSeq):
    """(x, y, P') with P' internally disjoint from c and shorter than dist_c(x, y)."""
    vs = c.vertices
    on_c = c.vertex_set()
    for i, u in enumerate(vs):
        dist = bfs_distances(g, u)
        for v in vs[i + 1 :]:
            if dist[v] < c.dist(u, v):
                path = shortest_path(g, u, v)
                cuts = [j for j, w in enumerate(path) if w in on_c]
                for j0, j1 in zip(cuts, cuts[1:]):
                    x, y = path[j0], path[j1]
                    if j1 - j0 < c.dist(x, y):
                        return x, y, tuple(path[j0 : j1 + 1])
                raise InternalError("triangle inequality walk found no short segment",
                                    {"u": u, "v": v, "path": path})
    return None


def _split_cycle(c: CycleSeq, x: int, y: int, pprime: tuple[int, ...]) -> tuple[CycleSeq, CycleSeq]:
    vs = list(c.vertices)
    i = vs.index(x)
    vs = vs[i:] + vs[:i]
    j = vs.index(y)
    inner = list(pprime[1:-1])
    c1 = vs[: j + 1] + inner[::-1]
    c2 = vs[j:] + [x] + inner
    return CycleSeq(tuple(c1)), CycleSeq(tuple(c2))


def case1_split(g: Graph, c: CycleSeq, fam: LongestFamily) -> tuple[frozenset, dict]:
    found = _shortcut(g, c)
    if found is None:
        raise InputError("case 1 needs a non-geodetic cycle")
    x, y, pprime = found
    c1, c2 = _split_cycle(c, x, y, pprime)
    for ci in (c1, c2):
        ci.validate(g)
        ensure("case1.shorter", ci.length, "<=", c.length - 1, inputs={"c": c.vertices, "ci": ci.vertices})
    avoiding = []
    for ci in (c1, c2):
        cset = ci.vertex_set()
        pick = next((mbr for mbr in fam.members if not (mbr.vertex_set() & cset)), None)
        if pick is None:
            raise InternalError(
                "shorter cycle meets every longest member; the hitting cycle was not minimal",
                {"c": list(c.vertices), "ci": list(ci.vertices)},
            )
        avoiding.append(pick)
    cuts = [separate_cycle_from_longest(ci, li, g, ell=fam.length) for ci, li in zip((c1, c2), avoiding)]
    s = cuts[0].separator | cuts[1].separator
    ensure(
        "case1.size",
        len(s),
        "<=",
        math.sqrt(8 * fam.length),
        inputs={"graph": g.to_dict(), "c": c.vertices},
        outputs={"S": s},
    )
    witness = {
        "cycle": list(c.vertices),
        "x": x,
        "y": y,
        "p_prime": list(pprime),
        "c1": list(c1.vertices),
        "c2": list(c2.vertices),
        "p1": list(avoiding[0].vertices),
        "p2": list(avoiding[1].vertices),
        "k1": sorted(cuts[0].separator),
        "k2": sorted(cuts[1].separator),
    }
    return frozenset(s), witness


# --------------------------------------------------------------------------
# case 2: geodetic hitting cycle, society route


def _index_sets(ld: LinearDecomposition, fam: LongestFamily) -> list[list[int]]:
    out = []
    for mbr in fam.members:
        vs = mbr.vertex_set()
        out.append([i for i, bag in enumerate(ld.bags, start=1) if bag & vs])
    return out


def case2_society(g: Graph, c: CycleSeq, fam: LongestFamily, *, kind: str = PATH) -> tuple[frozenset, dict]:
    soc = Society(g, c.vertices)
    tr = max_transaction(soc)
    p = tr.order
    ld = build_linear_decomposition(soc, bound=p)
    ok, adhesion, violations = verify_linear_decomposition(soc, ld)
    ensure_true("case2.decomposition", ok, inputs={"omega": c.vertices}, witness={"violations": violations})
    ensure("case2.adhesion", adhesion, "<=", p, inputs={"omega": c.vertices})
    t = len(ld.bags)
    intervals = _index_sets(ld, fam)
    lo, hi = 1, t
    for idx in intervals:
        ensure_true(
            "case2.interval",
            bool(idx) and idx[-1] - idx[0] + 1 == len(idx),
            inputs={"omega": c.vertices},
            outputs={"indices": idx},
        )
        lo, hi = max(lo, idx[0]), min(hi, idx[-1])
    ensure_true("case2.helly", lo <= hi, inputs={"omega": c.vertices}, outputs={"lo": lo, "hi": hi})
    i = lo
    bags = (frozenset(),) + ld.bags + (frozenset(),)
    v_i = ld.omega_order[i - 1]
    s = (bags[i] & bags[i - 1]) | (bags[i] & bags[i + 1]) | {v_i}
    ensure("case2.size_2p_plus_1", len(s), "<=", 2 * p + 1, inputs={"omega": c.vertices}, outputs={"S": s, "p": p})
    n = g.n
    if kind == PATH:
        ensure("case2.transaction_order", p, "<=", 16 * fam.length ** (5 / 9), inputs={"omega": c.vertices})
    if c.length > math.sqrt(8 * n):
        ensure("case2.sqrt2n", p, "<=", math.isqrt(2 * n) - 1, inputs={"omega": c.vertices, "n": n})
    witness = {
        "cycle": list(c.vertices),
        "transaction": tr.to_dict(),
        "decomposition": ld.to_dict(),
        "index": i,
        "p": p,
        "intervals": [[idx[0], idx[-1]] for idx in intervals],
    }
    return frozenset(s), witness


# --------------------------------------------------------------------------
# orchestration


def transversal(
    g: Graph,
    kind: str = PATH,
    *,
    fam: LongestFamily | None = None,
    force_split: bool = False,
    cap: int = DEFAULT_CAP,
) -> TransversalCertificate:
    """Certified transversal of the longest paths (or cycles) of ``g``.

    ``force_split`` skips the short-cycle exit so the geodetic case split
    runs even when the hitting cycle is already within the bound.
    """
    _check_input(g, kind)
    fam = fam or enumerate_longest(g, kind, cap=cap)
    ell = fam.length
    bound = bound_for(kind, g.n, ell)
    hit = min_hitting_cycle(g, kind, fam)
    if isinstance(hit, int):
        s, branch, witness = frozenset({hit}), SINGLE_VERTEX, {"vertex": hit}
    elif hit.length <= bound and not force_split:
        s, branch, witness = hit.vertex_set(), DIRECT_CYCLE, {"cycle": list(hit.vertices)}
    elif not is_geodetic(hit, g):
        s, witness = case1_split(g, hit, fam)
        branch = CASE1_SPLIT
    else:
        s, witness = case2_society(g, hit, fam, kind=kind)
        branch = CASE2_SOCIETY
    cert = TransversalCertificate(kind, g.n, ell, s, branch, bound, witness)
    inputs = {"graph": g.to_dict(), "kind": kind, "force_split": force_split}
    ensure_true("theorem.transversal", is_transversal(s, fam), inputs=inputs, outputs={"S": s})
    ensure("theorem.bound", len(s), "<=", bound, inputs=inputs, outputs={"S": s, "branch": branch})
    return cert


def verify_certificate(g: Graph, cert: TransversalCertificate, fam: LongestFamily) -> list[str]:
    """Re-validate a certificate from scratch; returns a list of problems."""
    problems = []
    if not is_transversal(cert.vertices, fam):
        problems.append("S misses a longest member")
    if cert.size > cert.bound_used + 1e-9:
        problems.append("S exceeds the bound")
    w = cert.witness
    if cert.branch == SINGLE_VERTEX:
        if cert.vertices != {w["vertex"]}:
            problems.append("single-vertex witness mismatch")
    elif cert.branch == DIRECT_CYCLE:
        c = CycleSeq(tuple(w["cycle"]))
        if not c.is_valid_in(g) or c.vertex_set() != cert.vertices:
            problems.append("direct cycle witness mismatch")
    elif cert.branch == CASE1_SPLIT:
        c = CycleSeq(tuple(w["cycle"]))
        for key, pkey, kkey in (("c1", "p1", "k1"), ("c2", "p2", "k2")):
            ci = CycleSeq(tuple(w[key]))
            if not ci.is_valid_in(g) or ci.length >= c.length:
                problems.append(f"{key} is not a shorter cycle")
            member = PathSeq(tuple(w[pkey])) if cert.kind == PATH else CycleSeq(tuple(w[pkey]))
            if member.vertex_set() & ci.vertex_set():
                problems.append(f"{pkey} meets {key}")
            if not _separates(g, set(w[kkey]), ci.vertex_set(), member.vertex_set()):
                problems.append(f"{kkey} does not separate")
        if set(w["k1"]) | set(w["k2"]) != set(cert.vertices):
            problems.append("S differs from K1 u K2")
    elif cert.branch == CASE2_SOCIETY:
        soc = Society(g, tuple(w["cycle"]))
        ld = LinearDecomposition(
            tuple(w["decomposition"]["omega_order"]),
            tuple(frozenset(b) for b in w["decomposition"]["bags"]),
        )
        ok, adhesion, _ = verify_linear_decomposition(soc, ld)
        if not ok or adhesion > w["p"]:
            problems.append("linear decomposition witness invalid")
        if cert.size > 2 * w["p"] + 1:
            problems.append("S exceeds 2p+1")
    else:
        problems.append(f"unknown branch {cert.branch}")
    return problems


def _separates(g: Graph, s: set, a: frozenset, b: frozenset) -> bool:
    a, b = a - s, b - s
    if not a or not b:
        return True
    seen = set(a)
    stack = list(a)
    while stack:
        v = stack.pop()
        if v in b:
            return False
        for w in g.adj[v]:
            if w not in seen and w not in s:
                seen.add(w)
                stack.append(w)
    return True
