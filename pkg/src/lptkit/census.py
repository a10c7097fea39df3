"""Isomorphism-free enumeration of small connected graphs.

Graphs of order n are grown from order n-1 by adding a vertex with every
nonempty neighbourhood (every connected graph has a vertex whose removal
keeps it connected) and deduplicated by a canonical form computed with
colour refinement plus individualisation backtracking.
"""

from __future__ import annotations

from .errors import InternalError
from .graph import Graph, is_two_connected

# connected unlabeled graphs of order 0..10
CONNECTED_COUNTS = (1, 1, 1, 2, 6, 21, 112, 853, 11117, 261080, 11716571)


def _refine(g: Graph, cells: list[list[int]]) -> list[list[int]]:
    while True:
        sets = [frozenset(c) for c in cells]
        new = []
        for cell in cells:
            if len(cell) == 1:
                new.append(cell)
                continue
            sig = {v: tuple(len(g.adj[v] & s) for s in sets) for v in cell}
            for key in sorted(set(sig.values())):
                new.append([v for v in cell if sig[v] == key])
        if len(new) == len(cells):
            return new
        cells = new


def _code(g: Graph, order: list[int]) -> int:
    pos = {v: i for i, v in enumerate(order)}
    code = 0
    n = g.n
    for u, v in g.edges():
        i, j = sorted((pos[u], pos[v]))
        code |= 1 << (i * n + j)
    return code


def canonical_labeling(g: Graph) -> tuple[int, list[int]]:
    """(code, order): isomorphic graphs get equal codes; order[i] is new vertex i."""
    best: list = [None, None]

    def search(cells):
        cells = _refine(g, cells)
        k = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if k is None:
            order = [c[0] for c in cells]
            code = _code(g, order)
            if best[0] is None or code > best[0]:
                best[0], best[1] = code, order
            return
        for v in cells[k]:
            rest = [w for w in cells[k] if w != v]
            search(cells[:k] + [[v], rest] + cells[k + 1 :])

    search([list(range(g.n))])
    return best[0], best[1]


def canonical_form(g: Graph) -> tuple[int, int]:
    return g.n, canonical_labeling(g)[0]


def relabel(g: Graph, order: list[int]) -> Graph:
    pos = {v: i for i, v in enumerate(order)}
    return Graph.from_edges(g.n, [(pos[u], pos[v]) for u, v in g.edges()])


def connected_graphs(n: int) -> list[Graph]:
    """One canonically labelled representative per connected graph of order n."""
    if n < 1:
        return []
    level = {canonical_form(Graph.empty(1)): Graph.empty(1)}
    for size in range(2, n + 1):
        nxt: dict = {}
        for g in level.values():
            for mask in range(1, 1 << g.n):
                nbrs = [v for v in range(g.n) if mask >> v & 1]
                h = g.add_vertex(nbrs)
                code, order = canonical_labeling(h)
                if (size, code) not in nxt:
                    nxt[(size, code)] = relabel(h, order)
        level = nxt
    graphs = [level[k] for k in sorted(level)]
    if n < len(CONNECTED_COUNTS) and len(graphs) != CONNECTED_COUNTS[n]:
        raise InternalError("connected graph count mismatch", {"n": n, "found": len(graphs)})
    return graphs


def connected_graphs_upto(n: int, *, minimum: int = 1) -> list[Graph]:
    out = []
    for k in range(minimum, n + 1):
        out.extend(connected_graphs(k))
    return out


def two_connected_graphs_upto(n: int) -> list[Graph]:
    return [g for g in connected_graphs_upto(n, minimum=3) if is_two_connected(g)]
