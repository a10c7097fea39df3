"""Reading and writing graphs: edge lists and graph6."""

from __future__ import annotations

from pathlib import Path

from .errors import ParseError
from .graph import Graph

EDGELIST = "edgelist"
GRAPH6 = "graph6"
G6_HEADER = ">>graph6<<"


def parse_edgelist(text: str) -> Graph:
    """Parse ``n m`` followed by m lines ``u v`` (0-indexed).

    Blank lines and lines starting with ``#`` are ignored.
    """
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected two integers, got {line!r}", lineno)
        try:
            rows.append((lineno, int(parts[0]), int(parts[1])))
        except ValueError:
            raise ParseError(f"expected two integers, got {line!r}", lineno) from None
    if not rows:
        raise ParseError("missing 'n m' header", 1)
    hline, n, m = rows[0]
    if n < 0 or m < 0:
        raise ParseError("n and m must be nonnegative", hline)
    if len(rows) - 1 != m:
        line = rows[-1][0] if len(rows) > 1 else hline
        raise ParseError(f"header announces {m} edges, found {len(rows) - 1}", line)
    seen = set()
    edges = []
    for lineno, u, v in rows[1:]:
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex out of range 0..{n - 1}", lineno)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"duplicate edge {key}", lineno)
        seen.add(key)
        edges.append(key)
    return Graph.from_edges(n, edges)


def format_edgelist(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def _n_field(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n < 68719476736:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise ValueError("graph too large for graph6")


def to_graph6(g: Graph) -> str:
    bits = []
    for j in range(1, g.n):
        for i in range(j):
            bits.append(1 if g.has_edge(i, j) else 0)
    bits.extend([0] * (-len(bits) % 6))
    body = []
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k : k + 6]:
            val = (val << 1) | b
        body.append(chr(val + 63))
    return _n_field(g.n) + "".join(body)


def parse_graph6(text: str, line: int | None = None) -> Graph:
    s = text.strip()
    if s.startswith(G6_HEADER):
        s = s[len(G6_HEADER) :]
    if not s:
        raise ParseError("empty graph6 string", line)
    data = []
    for ch in s:
        code = ord(ch) - 63
        if not 0 <= code <= 63:
            raise ParseError(f"invalid graph6 character {ch!r}", line)
        data.append(code)
    if data[0] != 63:
        n, pos = data[0], 1
    elif len(data) >= 2 and data[1] == 63:
        if len(data) < 8:
            raise ParseError("truncated graph6 size field", line)
        n = 0
        for x in data[2:8]:
            n = (n << 6) | x
        pos = 8
    else:
        if len(data) < 4:
            raise ParseError("truncated graph6 size field", line)
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        pos = 4
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[pos:]
    if len(body) != need:
        raise ParseError(f"graph6 body has {len(body)} bytes, expected {need} for n={n}", line)
    bits = []
    for x in body:
        bits.extend((x >> s) & 1 for s in range(5, -1, -1))
    if any(bits[nbits:]):
        raise ParseError("nonzero graph6 padding bits", line)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph.from_edges(n, edges)


def parse_graph6_lines(text: str) -> list[Graph]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if raw.strip():
            out.append(parse_graph6(raw, lineno))
    return out


def detect_format(text: str, name: str | None = None) -> str:
    if name and name.endswith((".g6", ".graph6")):
        return GRAPH6
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) == 2 and all(p.lstrip("-").isdigit() for p in parts):
            return EDGELIST
        return GRAPH6
    return EDGELIST


def parse_graph(source, fmt: str | None = None) -> Graph:
    """Parse a graph from a path or from text; ``fmt`` is edgelist, graph6 or None (detect)."""
    name = None
    if isinstance(source, Path) or (isinstance(source, str) and "\n" not in source and Path(source).is_file()):
        name = str(source)
        text = Path(source).read_text()
    else:
        text = str(source)
    fmt = fmt or detect_format(text, name)
    if fmt == EDGELIST:
        return parse_edgelist(text)
    if fmt == GRAPH6:
        graphs = parse_graph6_lines(text)
        if len(graphs) != 1:
            raise ParseError(f"expected one graph6 line, found {len(graphs)}")
        return graphs[0]
    raise ParseError(f"unknown format {fmt!r}")
