"""Simple undirected graphs on dense integer ids, plus flow-based cuts.

Vertices are ``0..n-1``.  Everything here is immutable; functions that
build subgraphs also hand back the id map so results can be lifted to the
host graph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InputError


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[frozenset, ...]

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise InputError("adjacency length does not match vertex count")
        for v, nbrs in enumerate(self.adj):
            if v in nbrs:
                raise InputError(f"self-loop at vertex {v}")
            for w in nbrs:
                if not (0 <= w < self.n):
                    raise InputError(f"invalid neighbor id {w} of vertex {v}")
                if v not in self.adj[w]:
                    raise InputError(f"asymmetric adjacency {v}-{w}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        sets = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            sets[u].add(v)
            sets[v].add(u)
        return cls(n, tuple(frozenset(s) for s in sets))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, tuple(frozenset() for _ in range(n)))

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def add_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        return Graph.from_edges(self.n, list(self.edges()) + list(edges))

    def add_vertex(self, neighbors: Iterable[int]) -> "Graph":
        """Copy with a new vertex ``n`` joined to ``neighbors``."""
        return Graph.from_edges(self.n + 1, list(self.edges()) + [(v, self.n) for v in neighbors])

    def check_vertex(self, v: int):
        if not isinstance(v, int) or not (0 <= v < self.n):
            raise InputError(f"invalid vertex id {v!r}")

    def to_dict(self):
        return {"n": self.n, "edges": self.edges()}


def _norm(u, v):
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class PathSeq:
    vertices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        if not self.vertices:
            raise InputError("a path needs at least one vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError(f"repeated vertex in path {self.vertices}")

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def ends(self) -> tuple[int, int]:
        return self.vertices[0], self.vertices[-1]

    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    def edge_set(self) -> frozenset:
        vs = self.vertices
        return frozenset(_norm(vs[i], vs[i + 1]) for i in range(len(vs) - 1))

    def canonical(self) -> "PathSeq":
        vs = self.vertices
        return self if vs[0] <= vs[-1] else PathSeq(vs[::-1])

    def is_valid_in(self, g: Graph) -> bool:
        vs = self.vertices
        if any(not (0 <= v < g.n) for v in vs):
            return False
        return all(g.has_edge(vs[i], vs[i + 1]) for i in range(len(vs) - 1))

    def validate(self, g: Graph) -> "PathSeq":
        if not self.is_valid_in(g):
            raise InputError(f"{self.vertices} is not a path of the graph")
        return self

    def __len__(self):
        return len(self.vertices)


@dataclass(frozen=True)
class CycleSeq:
    vertices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        if len(self.vertices) < 3:
            raise InputError("a cycle needs at least three vertices")
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError(f"repeated vertex in cycle {self.vertices}")

    @property
    def length(self) -> int:
        return len(self.vertices)

    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    def edge_set(self) -> frozenset:
        vs = self.vertices
        k = len(vs)
        return frozenset(_norm(vs[i], vs[(i + 1) % k]) for i in range(k))

    def canonical(self) -> "CycleSeq":
        vs = self.vertices
        i = vs.index(min(vs))
        rot = vs[i:] + vs[:i]
        if rot[1] > rot[-1]:
            rot = (rot[0],) + rot[1:][::-1]
        return CycleSeq(rot)

    def dist(self, x: int, y: int) -> int:
        k = len(self.vertices)
        d = abs(self.vertices.index(x) - self.vertices.index(y))
        return min(d, k - d)

    def is_valid_in(self, g: Graph) -> bool:
        vs = self.vertices
        if any(not (0 <= v < g.n) for v in vs):
            return False
        k = len(vs)
        return all(g.has_edge(vs[i], vs[(i + 1) % k]) for i in range(k))

    def validate(self, g: Graph) -> "CycleSeq":
        if not self.is_valid_in(g):
            raise InputError(f"{self.vertices} is not a cycle of the graph")
        return self

    def __len__(self):
        return len(self.vertices)


def induced_subgraph(g: Graph, keep: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Return ``(G[keep], ids)`` where ``ids[new] == old``."""
    keep = sorted(set(keep))
    for v in keep:
        g.check_vertex(v)
    index = {v: i for i, v in enumerate(keep)}
    adj = tuple(frozenset(index[w] for w in g.adj[v] if w in index) for v in keep)
    return Graph(len(keep), adj), tuple(keep)


def bfs_distances(g: Graph, source: int, removed: frozenset = frozenset()) -> dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in g.adj[v]:
            if w not in dist and w not in removed:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def distance(g: Graph, u: int, v: int) -> int | None:
    """Shortest-path length, or ``None`` when ``v`` is unreachable from ``u``."""
    g.check_vertex(u)
    g.check_vertex(v)
    if u == v:
        return 0
    return bfs_distances(g, u).get(v)


def shortest_path(g: Graph, u: int, v: int) -> list[int] | None:
    parent = {u: None}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == v:
            break
        for w in sorted(g.adj[x]):
            if w not in parent:
                parent[w] = x
                queue.append(w)
    if v not in parent:
        return None
    out = [v]
    while parent[out[-1]] is not None:
        out.append(parent[out[-1]])
    return out[::-1]


def components(g: Graph, removed: Iterable[int] = ()) -> list[list[int]]:
    removed = frozenset(removed)
    seen = set(removed)
    comps = []
    for s in range(g.n):
        if s in seen:
            continue
        comp = sorted(bfs_distances(g, s, removed))
        seen.update(comp)
        comps.append(comp)
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(bfs_distances(g, 0)) == g.n


def articulation_points(g: Graph, removed: Iterable[int] = ()) -> set[int]:
    """Cut vertices of ``g - removed`` (iterative low-point DFS)."""
    removed = set(removed)
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    cuts = set()
    counter = 0
    for root in range(g.n):
        if root in removed or root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        root_children = 0
        stack = [(root, -1, iter(sorted(g.adj[root])))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w in removed or w == parent:
                    continue
                if w in disc:
                    low[v] = min(low[v], disc[w])
                else:
                    disc[w] = low[w] = counter
                    counter += 1
                    if v == root:
                        root_children += 1
                    stack.append((w, v, iter(sorted(g.adj[w]))))
                    advanced = True
                    break
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[v])
                if p != root and low[v] >= disc[p]:
                    cuts.add(p)
        if root_children > 1:
            cuts.add(root)
    return cuts


# --------------------------------------------------------------------------
# Unit-vertex-capacity max flow on the split digraph.
#
# Vertex v becomes v_in = 2v and v_out = 2v+1 joined by an arc of capacity 1
# (or "infinite" for protected vertices).  Graph edges become out->in arcs of
# infinite capacity, so every finite cut consists of vertex arcs only.


@dataclass(frozen=True)
class FlowResult:
    paths: tuple[tuple[int, ...], ...]
    reach_in: frozenset
    reach_out: frozenset

    @property
    def value(self) -> int:
        return len(self.paths)

    @property
    def separator(self) -> frozenset:
        return self.reach_in - self.reach_out


def vertex_flow(
    g: Graph,
    sources: Iterable[int],
    sinks: Iterable[int],
    *,
    blocked: Iterable[int] = (),
    protected: Iterable[int] = (),
    terminal_interior: bool = True,
) -> FlowResult:
    """Maximum family of vertex-disjoint source-sink paths, with the leftmost min cut.

    ``terminal_interior=False`` forbids paths from passing through a source or
    sink as an internal vertex (used for Omega-paths).
    """
    sources = frozenset(sources)
    sinks = frozenset(sinks)
    blocked = frozenset(blocked)
    protected = frozenset(protected)
    inf = 2 * g.n + 5
    S, T = 2 * g.n, 2 * g.n + 1
    cap: dict[int, dict[int, int]] = {x: {} for x in range(2 * g.n + 2)}

    def arc(x, y, c):
        cap[x][y] = cap[x].get(y, 0) + c
        cap[y].setdefault(x, 0)

    for v in range(g.n):
        if v in blocked:
            continue
        arc(2 * v, 2 * v + 1, inf if v in protected else 1)
        for w in sorted(g.adj[v]):
            if w in blocked:
                continue
            if not terminal_interior:
                if v in sinks or w in sources:
                    continue
            arc(2 * v + 1, 2 * w, inf)
    for v in sorted(sources - blocked):
        arc(S, 2 * v, inf)
    for v in sorted(sinks - blocked):
        arc(2 * v + 1, T, inf)

    flow_value = 0
    while True:
        parent = {S: None}
        queue = deque([S])
        while queue and T not in parent:
            x = queue.popleft()
            for y, c in cap[x].items():
                if c > 0 and y not in parent:
                    parent[y] = x
                    queue.append(y)
        if T not in parent:
            break
        y = T
        while parent[y] is not None:
            x = parent[y]
            cap[x][y] -= 1
            cap[y][x] += 1
            y = x
        flow_value += 1
        if flow_value > g.n + 1:
            raise RuntimeError("flow exceeded vertex count; capacities are wrong")

    reach = set(parent)
    reach_in = frozenset(x // 2 for x in reach if x < 2 * g.n and x % 2 == 0)
    reach_out = frozenset(x // 2 for x in reach if x < 2 * g.n and x % 2 == 1)

    # Flow on an original arc x->y equals the residual capacity of y->x minus
    # whatever y->x had originally; rebuild it from the final residuals.
    flow: dict[int, dict[int, int]] = {x: {} for x in cap}
    original: dict[tuple[int, int], int] = {}
    for v in range(g.n):
        if v in blocked:
            continue
        original[(2 * v, 2 * v + 1)] = inf if v in protected else 1
        for w in g.adj[v]:
            if w in blocked or (not terminal_interior and (v in sinks or w in sources)):
                continue
            original[(2 * v + 1, 2 * w)] = inf
    for v in sources - blocked:
        original[(S, 2 * v)] = inf
    for v in sinks - blocked:
        original[(2 * v + 1, T)] = inf
    for (x, y), c in original.items():
        used = c - cap[x][y]
        if used > 0:
            flow[x][y] = used

    paths = []
    for _ in range(flow_value):
        walk = [S]
        while walk[-1] != T:
            x = walk[-1]
            y = min(k for k, f in flow[x].items() if f > 0)
            flow[x][y] -= 1
            walk.append(y)
        verts = []
        for x in walk[1:-1]:
            if x % 2 == 0:
                verts.append(x // 2)
        paths.append(_shortcut(verts))
    paths.sort()
    return FlowResult(tuple(paths), reach_in, reach_out)


def _shortcut(verts: list[int]) -> tuple[int, ...]:
    # protected vertices may be revisited by a flow walk; drop any loops.
    out: list[int] = []
    pos: dict[int, int] = {}
    for v in verts:
        if v in pos:
            cut = pos[v]
            for u in out[cut + 1 :]:
                del pos[u]
            out = out[: cut + 1]
        else:
            pos[v] = len(out)
            out.append(v)
    return tuple(out)


@dataclass(frozen=True)
class CutCertificate:
    separator: frozenset
    side_a: frozenset
    side_b: frozenset
    paths: tuple[tuple[int, ...], ...] = ()

    @property
    def size(self) -> int:
        return len(self.separator)

    def separates(self, g: Graph) -> bool:
        """No path from side_a - S to side_b - S in G - S."""
        start = self.side_a - self.separator
        goal = self.side_b - self.separator
        seen = set(start)
        queue = deque(start)
        while queue:
            v = queue.popleft()
            if v in goal:
                return False
            for w in g.adj[v]:
                if w not in seen and w not in self.separator:
                    seen.add(w)
                    queue.append(w)
        return True

    def to_dict(self):
        return {
            "separator": sorted(self.separator),
            "paths": [list(p) for p in self.paths],
        }


def min_vertex_cut(g: Graph, a: Iterable[int], b: Iterable[int]) -> CutCertificate:
    """Minimum set S separating ``a`` from ``b`` (S may meet ``a`` and ``b``).

    The certificate also carries a family of ``|S|`` vertex-disjoint a-b paths.
    """
    a = frozenset(a)
    b = frozenset(b)
    for v in a | b:
        g.check_vertex(v)
    res = vertex_flow(g, a, b)
    paths = tuple(_trim_ab(p, a, b) for p in res.paths)
    return CutCertificate(res.separator, a, b, paths)


def _trim_ab(path, a, b):
    # shorten a flow path to a proper a-b path (no internal vertex in a or b)
    last_a = max(i for i, v in enumerate(path) if v in a)
    first_b = min(i for i, v in enumerate(path) if v in b and i >= last_a)
    return tuple(path[last_a : first_b + 1])


def local_connectivity(g: Graph, u: int, v: int) -> int:
    """Maximum number of internally disjoint u-v paths (u, v nonadjacent)."""
    return vertex_flow(g, [u], [v], protected=[u, v]).value


def vertex_connectivity(g: Graph) -> int:
    """Exact vertex connectivity (Even's pair scan)."""
    n = g.n
    if n <= 1:
        return 0
    if not is_connected(g):
        return 0
    if all(len(a) == n - 1 for a in g.adj):
        return n - 1
    best = n - 1
    i = 0
    while i <= best and i < n:
        for j in range(i + 1, n):
            if not g.has_edge(i, j):
                best = min(best, local_connectivity(g, i, j))
        i += 1
    return best


DISCONNECTED = "disconnected"
CONNECTED = "connected"
TWO_CONNECTED = "2-connected"
THREE_CONNECTED = "3-connected+"


def connectivity_class(g: Graph) -> str:
    if g.n < 1:
        raise InputError("empty graph")
    if not is_connected(g):
        return DISCONNECTED
    if g.n >= 3 and not articulation_points(g):
        # 2-connected; decide 3-connectivity exactly
        if g.n >= 4 and vertex_connectivity(g) >= 3:
            return THREE_CONNECTED
        return TWO_CONNECTED
    return CONNECTED


def is_two_connected(g: Graph) -> bool:
    return connectivity_class(g) in (TWO_CONNECTED, THREE_CONNECTED)


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for h in graphs:
        edges.extend((u + offset, v + offset) for u, v in h.edges())
        offset += h.n
    return Graph.from_edges(offset, edges)
