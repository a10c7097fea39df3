"""Vertex-transitive graph families and checks of the longest-path length chain."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

from .checks import ensure, ensure_true
from .decomp import is_cycle_graph
from .errors import InputError, ParseError
from .graph import Graph, is_connected, petersen_graph, vertex_connectivity
from .oracle import CYCLE, PATH, enumerate_longest, exact_transversal_number, longest_length

CIRCULANT = "circulant"
CAYLEY = "cayley"
NAMED = "named"

ORBIT_CHECK_MAX_N = 12


@dataclass(frozen=True)
class VTInstance:
    graph: Graph
    family: str
    params: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def degree(self) -> int:
        return self.graph.degree(0) if self.graph.n else 0

    @property
    def name(self) -> str:
        if self.family == CIRCULANT:
            return f"C{self.n}({','.join(map(str, self.params['connection']))})"
        if self.family == CAYLEY:
            return f"Cay{self.n}({','.join(map(str, self.params['generators']))})"
        return self.params.get("name", f"{self.family}{self.n}")


def gen_circulant(n: int, connection) -> VTInstance:
    conn = sorted(set(connection))
    if not conn:
        raise InputError("connection set must be nonempty")
    if n < 2 or any(not 1 <= s <= n // 2 for s in conn):
        raise InputError(f"connection set must lie in 1..{n // 2}")
    edges = {(min(i, (i + s) % n), max(i, (i + s) % n)) for i in range(n) for s in conn}
    g = Graph.from_edges(n, edges)
    if not is_connected(g):
        raise InputError(f"circulant C{n}{tuple(conn)} is disconnected")
    return VTInstance(g, CIRCULANT, {"connection": conn})


def connected_circulants(max_n: int, min_n: int = 3) -> list[VTInstance]:
    out = []
    for n in range(min_n, max_n + 1):
        half = n // 2
        for mask in range(1, 1 << half):
            conn = [s + 1 for s in range(half) if mask >> s & 1]
            if math.gcd(n, *conn) != 1:
                continue
            out.append(gen_circulant(n, conn))
    return out


def petersen() -> VTInstance:
    return VTInstance(petersen_graph(), NAMED, {"name": "petersen"})


# --------------------------------------------------------------------------
# Cayley graphs from explicit multiplication tables


@dataclass(frozen=True)
class GroupTable:
    table: tuple[tuple[int, ...], ...]
    generators: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.table)

    def identity(self) -> int:
        for e in range(self.order):
            if all(self.table[e][j] == j for j in range(self.order)):
                return e
        raise InputError("table has no identity")

    def inverse(self, x: int) -> int:
        e = self.identity()
        return next(y for y in range(self.order) if self.table[x][y] == e)

    def validate(self) -> "GroupTable":
        k = self.order
        if k < 1 or any(len(row) != k for row in self.table):
            raise InputError("multiplication table must be k x k")
        if any(not 0 <= x < k for row in self.table for x in row):
            raise InputError("table entries must be indices 0..k-1")
        cols = [sorted(self.table[i][j] for i in range(k)) for j in range(k)]
        if any(sorted(row) != list(range(k)) for row in self.table) or any(c != list(range(k)) for c in cols):
            raise InputError("table is not a Latin square")
        t = self.table
        for a in range(k):
            for b in range(k):
                for c in range(k):
                    if t[t[a][b]][c] != t[a][t[b][c]]:
                        raise InputError(f"table is not associative at ({a}, {b}, {c})")
        e = self.identity()
        gens = set(self.generators)
        if not gens:
            raise InputError("generator set must be nonempty")
        if any(not 0 <= s < k for s in gens):
            raise InputError("generator out of range")
        if e in gens:
            raise InputError("generator set must not contain the identity")
        for s in gens:
            if self.inverse(s) not in gens:
                raise InputError(f"generator set is not closed under inverses ({s})")
        return self


def parse_group_table(text: str) -> GroupTable:
    lines = [(i, ln.split()) for i, ln in enumerate(text.splitlines(), start=1) if ln.strip()]
    if not lines:
        raise ParseError("empty group table", 1)
    try:
        k = int(lines[0][1][0])
    except (ValueError, IndexError):
        raise ParseError("first line must be the group order", lines[0][0]) from None
    if len(lines) != k + 2:
        raise ParseError(f"expected {k} table rows and one generator line", lines[-1][0])
    rows = []
    for lineno, parts in lines[1 : k + 1]:
        try:
            row = tuple(int(x) for x in parts)
        except ValueError:
            raise ParseError("table entries must be integers", lineno) from None
        if len(row) != k:
            raise ParseError(f"row has {len(row)} entries, expected {k}", lineno)
        rows.append(row)
    lineno, parts = lines[-1]
    try:
        gens = tuple(int(x) for x in parts)
    except ValueError:
        raise ParseError("generators must be integers", lineno) from None
    return GroupTable(tuple(rows), gens).validate()


def gen_cayley(group: GroupTable) -> VTInstance:
    group.validate()
    k = group.order
    edges = set()
    for x in range(k):
        for s in group.generators:
            y = group.table[x][s]
            edges.add((min(x, y), max(x, y)))
    g = Graph.from_edges(k, edges)
    if not is_connected(g):
        raise InputError("generators do not generate the group (Cayley graph disconnected)")
    return VTInstance(g, CAYLEY, {"generators": sorted(group.generators)})


def cyclic_group_table(k: int, generators) -> GroupTable:
    table = tuple(tuple((i + j) % k for j in range(k)) for i in range(k))
    return GroupTable(table, tuple(generators))


def load_group_table(path) -> GroupTable:
    return parse_group_table(Path(path).read_text())


# --------------------------------------------------------------------------
# automorphisms


def find_automorphism(g: Graph, src: int, dst: int) -> tuple[int, ...] | None:
    """An automorphism mapping ``src`` to ``dst``, by backtracking."""
    n = g.n
    order = [src] + [v for v in _bfs_order(g, src) if v != src]
    image: dict[int, int] = {}
    used = set()

    def ok(v, w):
        if g.degree(v) != g.degree(w):
            return False
        for x, y in image.items():
            if g.has_edge(v, x) != g.has_edge(w, y):
                return False
        return True

    def rec(k):
        if k == n:
            return True
        v = order[k]
        cands = [dst] if k == 0 else range(n)
        for w in cands:
            if w in used or not ok(v, w):
                continue
            image[v] = w
            used.add(w)
            if rec(k + 1):
                return True
            del image[v]
            used.discard(w)
        return False

    if not rec(0):
        return None
    return tuple(image[v] for v in range(n))


def _bfs_order(g: Graph, s: int) -> list[int]:
    seen = [s]
    mark = {s}
    i = 0
    while i < len(seen):
        for w in sorted(g.adj[seen[i]]):
            if w not in mark:
                mark.add(w)
                seen.append(w)
        i += 1
    seen.extend(v for v in range(g.n) if v not in mark)
    return seen


def is_vertex_transitive(g: Graph) -> bool:
    if g.n > ORBIT_CHECK_MAX_N:
        raise InputError(f"orbit check limited to n <= {ORBIT_CHECK_MAX_N}")
    return all(find_automorphism(g, 0, v) is not None for v in range(g.n))


# --------------------------------------------------------------------------
# the longest-path length chain


def corollary_check(inst: VTInstance) -> dict:
    g = inst.graph
    n = g.n
    d = inst.degree
    if n < 3:
        raise InputError("need n >= 3")
    if any(g.degree(v) != d for v in range(n)):
        raise InputError("instance is not regular")
    if inst.family == NAMED and n <= ORBIT_CHECK_MAX_N:
        ensure_true("vt.orbit", is_vertex_transitive(g), inputs={"instance": inst.name})
    ins = {"instance": inst.name, "graph": g.to_dict()}
    ell = longest_length(g, PATH, cap=max(64, n))
    ell_c = longest_length(g, CYCLE, cap=max(64, n))
    if ell == n - 1:
        covered = True
    else:
        covered = enumerate_longest(g, PATH, cap=max(24, n)).vertex_union() == frozenset(range(n))
    ensure_true("vt.every_vertex_on_longest_path", covered, inputs=ins)
    lpt = exact_transversal_number(g, PATH, cap=max(24, n)).size
    ensure("corollary.ell_lower", ell, ">=", n / lpt - 1, inputs=ins)
    ensure("corollary.n_upper", n, "<=", 66 * ell ** (14 / 9), inputs=ins)
    report = {
        "instance": inst.name,
        "family": inst.family,
        "n": n,
        "m": g.m,
        "degree": d,
        "ell": ell,
        "ell_cycle": ell_c,
        "lpt": lpt,
    }
    if d >= 3:
        kappa = vertex_connectivity(g)
        ensure("corollary.vt_connectivity", kappa, ">=", math.floor(2 * d / 3) + 1, inputs=ins)
        ensure("corollary.three_connected", kappa, ">=", 3, inputs=ins)
        ensure("corollary.cycle_vs_path", ell_c, ">=", 0.4 * ell, inputs=ins)
        report["kappa"] = kappa
    elif d == 2:
        ensure_true("corollary.cycle", is_cycle_graph(g), inputs=ins)
    return report
