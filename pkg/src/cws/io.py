"""Text formats for graphs and arrangements (1-indexed on disk, 0-indexed in memory).

Graph file::

    c optional comment
    p graph <n> <m>
    e <u> <v>

Arrangement file: one line of ``n`` space-separated vertex ids.
"""

from __future__ import annotations

from .graph import Arrangement, Graph, GraphError


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("c"):
            yield lineno, line


def parse_graph(text: str) -> Graph:
    n = m = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, line in _content_lines(text):
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise GraphError(f"line {lineno}: second header")
            if len(parts) != 4 or parts[1] != "graph":
                raise GraphError(f"line {lineno}: expected 'p graph <n> <m>'")
            n, m = _ints(parts[2:], lineno)
            if n < 0 or m < 0:
                raise GraphError(f"line {lineno}: negative count")
        elif parts[0] == "e":
            if n is None:
                raise GraphError(f"line {lineno}: edge before header")
            if len(parts) != 3:
                raise GraphError(f"line {lineno}: expected 'e <u> <v>'")
            u, v = _ints(parts[1:], lineno)
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphError(f"line {lineno}: vertex out of range 1..{n}")
            if u == v:
                raise GraphError(f"line {lineno}: loop at vertex {u}")
            if (min(u, v), max(u, v)) in seen:
                raise GraphError(f"line {lineno}: duplicate edge {u} {v}")
            seen.add((min(u, v), max(u, v)))
            edges.append((u - 1, v - 1))
        else:
            raise GraphError(f"line {lineno}: unknown line type {parts[0]!r}")
    if n is None:
        raise GraphError("missing 'p graph' header")
    if len(edges) != m:
        raise GraphError(f"header announces {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges, strict=True)


def format_graph(g: Graph) -> str:
    lines = [f"p graph {g.n} {g.m}"] + [f"e {u + 1} {v + 1}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def parse_arrangement(text: str, n: int | None = None) -> Arrangement:
    """Parse a 1-indexed vertex order; with ``n`` the order must cover exactly ``1..n``."""
    tokens = [tok for _, line in _content_lines(text) for tok in line.split()]
    ids = _ints(tokens, None)
    if n is not None and len(ids) != n:
        raise GraphError(f"arrangement lists {len(ids)} vertices, graph has {n}")
    if len(set(ids)) != len(ids):
        raise GraphError("arrangement repeats a vertex")
    if any(not 1 <= v <= len(ids) for v in ids):
        raise GraphError("arrangement is not a permutation of 1..n")
    return Arrangement.of([v - 1 for v in ids])


def format_arrangement(order: Arrangement) -> str:
    return " ".join(str(v + 1) for v in order.order) + "\n"


def _ints(tokens, lineno: int | None) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        where = f"line {lineno}: " if lineno else ""
        raise GraphError(f"{where}expected integers, got {' '.join(tokens)!r}") from None
