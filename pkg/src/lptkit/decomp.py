"""Block-cut trees, 2-separator tree decompositions, societies and linear decompositions."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import InputError, InternalError
from .graph import (
    THREE_CONNECTED,
    Graph,
    PathSeq,
    articulation_points,
    components,
    connectivity_class,
    induced_subgraph,
    is_connected,
    vertex_flow,
)

# --------------------------------------------------------------------------
# block-cut tree


@dataclass(frozen=True)
class BlockCutTree:
    blocks: tuple[frozenset, ...]
    cut_vertices: frozenset
    # (vertex, block index) incidences of the vertex-block tree
    incidences: tuple[tuple[int, int], ...]

    def blocks_of(self, v: int) -> list[int]:
        return [b for (x, b) in self.incidences if x == v]

    def to_dict(self):
        return {
            "blocks": [sorted(b) for b in self.blocks],
            "cut_vertices": sorted(self.cut_vertices),
        }


def _biconnected_edge_groups(g: Graph) -> list[set[tuple[int, int]]]:
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    groups = []
    counter = 0
    for root in range(g.n):
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        edge_stack: list[tuple[int, int]] = []
        stack = [(root, -1, iter(sorted(g.adj[root])))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if w in disc:
                    if disc[w] < disc[v]:
                        edge_stack.append((v, w))
                        low[v] = min(low[v], disc[w])
                else:
                    disc[w] = low[w] = counter
                    counter += 1
                    edge_stack.append((v, w))
                    stack.append((w, v, iter(sorted(g.adj[w]))))
                    advanced = True
                    break
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[v])
                if low[v] >= disc[p]:
                    group = set()
                    while True:
                        e = edge_stack.pop()
                        group.add(e)
                        if e == (p, v):
                            break
                    groups.append(group)
    return groups


def block_cut_tree(g: Graph) -> BlockCutTree:
    if g.n == 0 or not is_connected(g):
        raise InputError("block-cut tree requires a connected graph")
    if g.n == 1:
        return BlockCutTree((frozenset({0}),), frozenset(), ((0, 0),))
    blocks = []
    for group in _biconnected_edge_groups(g):
        verts = set()
        for u, v in group:
            verts.update((u, v))
        blocks.append(frozenset(verts))
    blocks.sort(key=lambda b: sorted(b))
    count: dict[int, int] = {}
    for b in blocks:
        for v in b:
            count[v] = count.get(v, 0) + 1
    cuts = frozenset(v for v, c in count.items() if c > 1)
    inc = tuple(sorted((v, i) for i, b in enumerate(blocks) for v in b))
    return BlockCutTree(tuple(blocks), cuts, inc)


# --------------------------------------------------------------------------
# tree decompositions along 2-separators

CYCLE_TORSO = "cycle"
THREE_CONNECTED_TORSO = "3-connected"


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[frozenset, ...]
    tree_edges: tuple[tuple[int, int], ...]
    torso_kinds: tuple[str, ...]

    def neighbors(self, t: int) -> list[int]:
        out = []
        for a, b in self.tree_edges:
            if a == t:
                out.append(b)
            elif b == t:
                out.append(a)
        return sorted(out)

    def adhesion(self) -> int:
        return max((len(self.bags[a] & self.bags[b]) for a, b in self.tree_edges), default=0)

    def to_dict(self):
        return {
            "bags": [sorted(b) for b in self.bags],
            "tree_edges": [list(e) for e in self.tree_edges],
            "torso_kinds": list(self.torso_kinds),
        }


def torso(g: Graph, td: TreeDecomposition, t: int) -> tuple[Graph, tuple[int, ...]]:
    """Torso of bag ``t`` on local ids, with the id map back to ``g``."""
    h, ids = induced_subgraph(g, td.bags[t])
    index = {v: i for i, v in enumerate(ids)}
    extra = []
    for s in td.neighbors(t):
        adh = sorted(td.bags[t] & td.bags[s])
        for x, y in itertools.combinations(adh, 2):
            if not h.has_edge(index[x], index[y]):
                extra.append((index[x], index[y]))
    return (h.add_edges(extra) if extra else h), ids


def is_cycle_graph(h: Graph) -> bool:
    return h.n >= 3 and all(len(a) == 2 for a in h.adj) and is_connected(h)


def _classify(h: Graph) -> str | None:
    if is_cycle_graph(h):
        return CYCLE_TORSO
    if h.n >= 4 and connectivity_class(h) == THREE_CONNECTED:
        return THREE_CONNECTED_TORSO
    return None


def _first_two_separator(h: Graph):
    """Lexicographically smallest pair {a, b} with h - {a, b} disconnected."""
    for a in range(h.n):
        cuts = [b for b in articulation_points(h, removed=[a]) if b > a]
        if cuts:
            return a, min(cuts)
    return None


def tutte_decomposition(g: Graph) -> TreeDecomposition:
    """A tree decomposition of adhesion 2 whose torsos are cycles or 3-connected.

    Pieces are split along their smallest 2-separator until each piece is a
    cycle or has no 2-separator left.  Each piece keeps the virtual edges of
    its adhesion pairs, so a piece's graph is exactly its torso.
    """
    if g.n < 3 or connectivity_class(g) not in ("2-connected", THREE_CONNECTED):
        raise InputError("tutte_decomposition requires a 2-connected graph on >= 3 vertices")
    # piece = (vertex set in g ids, edge set in g ids)
    pieces: list[tuple[frozenset, set]] = [(frozenset(range(g.n)), set(g.edges()))]
    tree: list[tuple[int, int]] = []
    done: set[int] = set()
    while True:
        todo = [i for i in range(len(pieces)) if i not in done]
        if not todo:
            break
        i = todo[0]
        verts, edges = pieces[i]
        ids = sorted(verts)
        index = {v: k for k, v in enumerate(ids)}
        h = Graph.from_edges(len(ids), [(index[u], index[v]) for u, v in edges])
        if is_cycle_graph(h):
            done.add(i)
            continue
        sep = _first_two_separator(h)
        if sep is None:
            done.add(i)
            continue
        a, b = ids[sep[0]], ids[sep[1]]
        comps = components(h, removed=[sep[0], sep[1]])
        first = {ids[v] for v in comps[0]}
        side1 = frozenset(first | {a, b})
        side2 = frozenset((verts - first) | {a, b})
        virtual = (min(a, b), max(a, b))
        e1 = {e for e in edges if e[0] in side1 and e[1] in side1 and e != virtual}
        e2 = {e for e in edges if e[0] in side2 and e[1] in side2 and e != virtual}
        e1.add(virtual)
        e2.add(virtual)
        pieces[i] = (side1, e1)
        j = len(pieces)
        pieces.append((side2, e2))
        # re-hang tree neighbours of i on whichever side holds their adhesion pair
        new_tree = []
        for x, y in tree:
            if i in (x, y):
                other = y if x == i else x
                adh = pieces[other][0] & verts
                target = i if adh <= side1 else j
                new_tree.append((min(target, other), max(target, other)))
            else:
                new_tree.append((x, y))
        new_tree.append((i, j))
        tree = new_tree
    bags = tuple(p[0] for p in pieces)
    td = TreeDecomposition(bags, tuple(sorted(tree)), tuple("?" for _ in bags))
    kinds = []
    for t in range(len(bags)):
        kind = _classify(torso(g, td, t)[0])
        if kind is None:
            raise InternalError("piece is neither a cycle nor 3-connected", {"bag": sorted(bags[t])})
        kinds.append(kind)
    td = TreeDecomposition(bags, td.tree_edges, tuple(kinds))
    ok, report = verify_tree_decomposition(g, td)
    if not ok:
        raise InternalError("tutte_decomposition produced an invalid decomposition", report)
    return td


def verify_tree_decomposition(g: Graph, td: TreeDecomposition, *, max_adhesion: int = 2,
                              check_torsos: bool = True) -> tuple[bool, dict]:
    """Check the tree-decomposition axioms, adhesion and torso kinds.

    Returns ``(ok, report)``; the report lists every violation found.
    """
    violations: list[dict] = []
    k = len(td.bags)
    if k == 0:
        return False, {"violations": [{"kind": "no bags"}]}
    # T is a tree
    parent = list(range(k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in td.tree_edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            violations.append({"kind": "tree has a cycle", "edge": [a, b]})
        parent[ra] = rb
    if len(td.tree_edges) != k - 1:
        violations.append({"kind": "tree is not connected"})
    covered = set().union(*td.bags)
    missing = sorted(set(range(g.n)) - covered)
    if missing:
        violations.append({"kind": "vertices not covered", "vertices": missing})
    for u, v in g.edges():
        if not any(u in b and v in b for b in td.bags):
            violations.append({"kind": "edge not in any bag", "edge": [u, v]})
    adj_t = {t: set() for t in range(k)}
    for a, b in td.tree_edges:
        adj_t[a].add(b)
        adj_t[b].add(a)
    for v in range(g.n):
        hold = {t for t in range(k) if v in td.bags[t]}
        if not hold:
            continue
        start = min(hold)
        seen = {start}
        stack = [start]
        while stack:
            t = stack.pop()
            for s in adj_t[t]:
                if s in hold and s not in seen:
                    seen.add(s)
                    stack.append(s)
        if seen != hold:
            violations.append({"kind": "bags of vertex not a subtree", "vertex": v})
    adhesion = td.adhesion()
    if adhesion > max_adhesion:
        violations.append({"kind": "adhesion too large", "adhesion": adhesion})
    if check_torsos:
        if len(td.torso_kinds) != k:
            violations.append({"kind": "torso kind list has wrong length"})
        else:
            for t in range(k):
                actual = _classify(torso(g, td, t)[0])
                if actual != td.torso_kinds[t]:
                    violations.append(
                        {"kind": "torso kind mismatch", "bag": t,
                         "declared": td.torso_kinds[t], "actual": actual}
                    )
    return not violations, {"adhesion": adhesion, "violations": violations}


# --------------------------------------------------------------------------
# societies, transactions, linear decompositions


@dataclass(frozen=True)
class Society:
    graph: Graph
    omega: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "omega", tuple(self.omega))
        if len(set(self.omega)) != len(self.omega):
            raise InputError("omega repeats a vertex")
        for v in self.omega:
            self.graph.check_vertex(v)

    @property
    def t(self) -> int:
        return len(self.omega)

    def segment(self, start: int, length: int) -> tuple[int, ...]:
        t = self.t
        return tuple(self.omega[(start + j) % t] for j in range(length))


@dataclass(frozen=True)
class Transaction:
    paths: tuple[PathSeq, ...]
    segment_a: tuple[int, ...]
    segment_b: tuple[int, ...]
    # segment descriptors (start index, length) in omega
    descriptor: tuple[tuple[int, int], tuple[int, int]] = ((0, 0), (0, 0))

    @property
    def order(self) -> int:
        return len(self.paths)

    def to_dict(self):
        return {
            "order": self.order,
            "segment_a": list(self.segment_a),
            "segment_b": list(self.segment_b),
            "paths": [list(p.vertices) for p in self.paths],
        }


def is_transaction(s: Society, tr: Transaction) -> bool:
    omega = set(s.omega)
    a, b = set(tr.segment_a), set(tr.segment_b)
    if a & b:
        return False
    used = set()
    for p in tr.paths:
        if not p.is_valid_in(s.graph) or p.length < 1:
            return False
        x, y = p.ends
        if not ((x in a and y in b) or (x in b and y in a)):
            return False
        if any(v in omega for v in p.vertices[1:-1]):
            return False
        if used & set(p.vertices):
            return False
        used.update(p.vertices)
    return True


def _transaction_for(s: Society, seg_a, seg_b) -> list[tuple[int, ...]]:
    a, b = set(seg_a), set(seg_b)
    blocked = set(s.omega) - a - b
    res = vertex_flow(s.graph, a, b, blocked=blocked, terminal_interior=False)
    return list(res.paths)


def _segments(t):
    return [(i, L) for L in range(1, t) for i in range(t)]


def _disjoint(t, sa, sb):
    ia = {(sa[0] + j) % t for j in range(sa[1])}
    ib = {(sb[0] + j) % t for j in range(sb[1])}
    return not (ia & ib)


def max_transaction(s: Society, *, exhaustive: bool = False) -> Transaction:
    """A transaction of maximum order.

    Enlarging either segment never lowers the packing (Omega-vertices outside
    A and B can serve only as endpoints anyway), so by default only pairs of
    complementary arcs are searched; ``exhaustive=True`` scans every ordered
    pair of disjoint segments.
    """
    t = s.t
    if t < 2:
        raise InputError("a transaction needs |V(Omega)| >= 2")
    if exhaustive:
        pairs = [(sa, sb) for sa in _segments(t) for sb in _segments(t) if _disjoint(t, sa, sb)]
    else:
        pairs = [((i, L), ((i + L) % t, t - L)) for L in range(1, t) for i in range(t)]
    best = None
    best_key = None
    for sa, sb in sorted(pairs):
        paths = _transaction_for(s, s.segment(*sa), s.segment(*sb))
        key = (-len(paths), sa, sb)
        if best_key is None or key < best_key:
            best_key = key
            best = (paths, sa, sb)
    paths, sa, sb = best
    a = set(s.segment(*sa))
    oriented = tuple(PathSeq(p if p[0] in a else p[::-1]) for p in paths)
    tr = Transaction(oriented, s.segment(*sa), s.segment(*sb), (sa, sb))
    if not is_transaction(s, tr):
        raise InternalError("max_transaction built an invalid transaction", tr.to_dict())
    return tr


@dataclass(frozen=True)
class LinearDecomposition:
    omega_order: tuple[int, ...]
    bags: tuple[frozenset, ...]

    def adhesion(self) -> int:
        return max(
            (len(self.bags[i] & self.bags[i + 1]) for i in range(len(self.bags) - 1)), default=0
        )

    def to_dict(self):
        return {"omega_order": list(self.omega_order), "bags": [sorted(b) for b in self.bags]}


def _is_cyclic_relabel(omega, order):
    t = len(omega)
    if sorted(omega) != sorted(order) or len(order) != t:
        return False
    if t == 0:
        return True
    start = omega.index(order[0])
    return all(omega[(start + j) % t] == order[j] for j in range(t))


def verify_linear_decomposition(s: Society, ld: LinearDecomposition) -> tuple[bool, int, list[dict]]:
    """Check the four linear-decomposition conditions; return (ok, adhesion, violations)."""
    g = s.graph
    violations: list[dict] = []
    t = len(ld.bags)
    if not _is_cyclic_relabel(s.omega, ld.omega_order):
        violations.append({"kind": "labeling does not follow omega's cyclic order"})
    if t != len(ld.omega_order):
        violations.append({"kind": "bag count differs from |V(Omega)|"})
    for i, v in enumerate(ld.omega_order[:t]):
        if v not in ld.bags[i]:
            violations.append({"kind": "v_i not in X_i", "index": i + 1, "vertex": v})
    covered = set().union(*ld.bags) if ld.bags else set()
    missing = sorted(set(range(g.n)) - covered)
    if missing:
        violations.append({"kind": "vertices not covered", "vertices": missing})
    for u, v in g.edges():
        if not any(u in b and v in b for b in ld.bags):
            violations.append({"kind": "edge not in any bag", "edge": [u, v]})
    for x in sorted(covered):
        idx = [i for i, b in enumerate(ld.bags) if x in b]
        if idx[-1] - idx[0] + 1 != len(idx):
            violations.append({"kind": "indices not an interval", "vertex": x,
                               "indices": [i + 1 for i in idx]})
    return not violations, ld.adhesion(), violations


def _nested_cut_decomposition(s: Society, order: tuple[int, ...]) -> LinearDecomposition:
    g = s.graph
    t = len(order)
    # L_i: closed left side (reached v_in), R_i: open left side (reached v_out)
    L = [frozenset()] * (t + 1)
    R = [frozenset()] * (t + 1)
    for i in range(1, t):
        res = vertex_flow(g, order[:i], order[i:])
        L[i] = res.reach_in
        R[i] = res.reach_out
    L[t] = frozenset(range(g.n))
    R[t] = frozenset(range(g.n))
    bags = tuple(L[i] - R[i - 1] for i in range(1, t + 1))
    return LinearDecomposition(tuple(order), bags)


def build_linear_decomposition(s: Society, bound: int | None = None) -> LinearDecomposition:
    """Linear decomposition with adhesion at most the maximum transaction order.

    Cut i is the leftmost minimum vertex cut between the first i labels and
    the rest; leftmost cuts of nested terminal sets are nested, and bag X_i is
    the region between cut i-1 (open side) and cut i (closed side).  The
    result is validated; if validation fails the other rotations of the
    labeling are tried before giving up.
    """
    g = s.graph
    if s.t == 0:
        raise InputError("omega must be nonempty")
    if not is_connected(g):
        raise InputError("society graph must be connected")
    if s.t == 1:
        return LinearDecomposition(s.omega, (frozenset(range(g.n)),))
    if bound is None:
        bound = max_transaction(s).order
    t = s.t
    attempts = []
    for i in range(t):
        order = s.omega[i:] + s.omega[:i]
        ld = _nested_cut_decomposition(s, order)
        ok, adhesion, violations = verify_linear_decomposition(s, ld)
        if ok and adhesion <= bound:
            return ld
        attempts.append({"order": list(order), "adhesion": adhesion, "violations": violations})
    raise InternalError("linear decomposition construction defect", {"attempts": attempts[:3]})
