"""Graphs, linear arrangements, cut profiles, 2-subdivision and path decompositions.

Vertices are dense integer ids ``0..n-1``.  Positions in an arrangement are
0-based as well; ``v_i`` below is the vertex at position ``i``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Malformed graph, arrangement or decomposition."""


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[tuple[int, int]]
    adj: tuple[frozenset[int], ...] = field(repr=False, compare=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], strict: bool = True) -> "Graph":
        """Build a simple graph; with ``strict`` duplicates raise instead of merging."""
        if n < 0:
            raise GraphError("negative vertex count")
        seen: set[tuple[int, int]] = set()
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            e = _norm(u, v)
            if e in seen:
                if strict:
                    raise GraphError(f"duplicate edge {e}")
                continue
            seen.add(e)
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, frozenset(seen), tuple(frozenset(s) for s in nbrs))

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def induced_edges(self, vertices: Iterable[int]) -> list[tuple[int, int]]:
        vs = set(vertices)
        return [e for e in self.sorted_edges() if e[0] in vs and e[1] in vs]

    def is_connected_subset(self, vertices: Iterable[int]) -> bool:
        """Whether ``G[vertices]`` is connected; empty and singleton sets count as connected."""
        vs = set(vertices)
        if len(vs) <= 1:
            return True
        start = next(iter(vs))
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for w in self.adj[u]:
                if w in vs and w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(vs)

    def is_connected(self) -> bool:
        return self.is_connected_subset(range(self.n))


@dataclass(frozen=True)
class Arrangement:
    """A linear arrangement: ``order[i]`` is the vertex at position ``i``."""

    order: tuple[int, ...]
    pos: tuple[int, ...] = field(repr=False, compare=False)

    @classmethod
    def of(cls, order: Sequence[int]) -> "Arrangement":
        order = tuple(order)
        n = len(order)
        pos = [-1] * n
        for i, v in enumerate(order):
            if not 0 <= v < n or pos[v] != -1:
                raise GraphError("arrangement is not a permutation of the vertices")
            pos[v] = i
        return cls(order, tuple(pos))

    @classmethod
    def identity(cls, n: int) -> "Arrangement":
        return cls.of(range(n))

    def __len__(self) -> int:
        return len(self.order)


def _check(g: Graph, order: Arrangement) -> None:
    if len(order) != g.n:
        raise GraphError(f"arrangement has {len(order)} vertices, graph has {g.n}")


@dataclass(frozen=True)
class CutProfile:
    """Boundary sets of the cut after position ``i``."""

    i: int
    cut_edges: frozenset[tuple[int, int]]
    left: frozenset[int]
    right: frozenset[int]
    extended_left: frozenset[int] | None


def cut_sizes(g: Graph, order: Arrangement) -> list[int]:
    """``|E_i|`` for every position ``i``."""
    _check(g, order)
    delta = [0] * (g.n + 1)
    for u, v in g.edges:
        a, b = sorted((order.pos[u], order.pos[v]))
        delta[a] += 1
        delta[b] -= 1
    sizes, run = [], 0
    for i in range(g.n):
        run += delta[i]
        sizes.append(run)
    return sizes


def cutwidth_of(g: Graph, order: Arrangement) -> int:
    return max(cut_sizes(g, order), default=0)


def cut_profile(g: Graph, order: Arrangement, i: int) -> CutProfile:
    _check(g, order)
    if not 0 <= i < g.n:
        raise GraphError(f"position {i} out of range")
    pos = order.pos
    cut = frozenset(e for e in g.edges if min(pos[e[0]], pos[e[1]]) <= i < max(pos[e[0]], pos[e[1]]))
    left = {u if pos[u] <= i else w for u, w in cut}
    right = {w if pos[u] <= i else u for u, w in cut}
    left.add(order.order[i])
    ext = None
    if i >= 1:
        ext = cut_profile(g, order, i - 1).left | {order.order[i]}
    return CutProfile(i, cut, frozenset(left), frozenset(right), ext)


def boundaries(g: Graph, order: Arrangement) -> list[tuple[list[int], list[int]]]:
    """For every position ``i`` the pair ``(X_i, Y_i)``, each sorted by position."""
    _check(g, order)
    pos = order.pos
    last = [pos[v] for v in range(g.n)]
    first = [pos[v] for v in range(g.n)]
    for u, w in g.edges:
        for a, b in ((u, w), (w, u)):
            last[a] = max(last[a], pos[b])
            first[a] = min(first[a], pos[b])
    out = []
    for i, vi in enumerate(order.order):
        xs = [v for v in order.order[:i] if last[v] > i] + [vi]
        ys = [v for v in order.order[i + 1:] if first[v] <= i]
        out.append((xs, ys))
    return out


def exact_cutwidth(g: Graph, limit: int = 20) -> tuple[int, Arrangement]:
    """Minimum cutwidth over all orders by dynamic programming over prefix sets."""
    n = g.n
    if n > limit:
        raise GraphError(f"exact cutwidth limited to {limit} vertices, got {n}")
    if n == 0:
        return 0, Arrangement.identity(0)
    nbr = [sum(1 << w for w in g.adj[v]) for v in range(n)]
    full = (1 << n) - 1
    cut = [0] * (1 << n)
    best = [0] * (1 << n)
    choice = [0] * (1 << n)
    for s in range(1, 1 << n):
        low = (s & -s).bit_length() - 1
        prev = s ^ (1 << low)
        inside = bin(nbr[low] & prev).count("1")
        cut[s] = cut[prev] + g.degree(low) - 2 * inside
        val, arg = None, -1
        rest = s
        while rest:
            b = rest & -rest
            v = b.bit_length() - 1
            rest ^= b
            cand = max(best[s ^ b], cut[s] if s != full else 0)
            if val is None or cand < val:
                val, arg = cand, v
        best[s] = val
        choice[s] = arg
    order = []
    s = full
    while s:
        v = choice[s]
        order.append(v)
        s ^= 1 << v
    return best[full], Arrangement.of(reversed(order))


@dataclass(frozen=True)
class SubdividedGraph:
    base: Graph
    graph: Graph
    originals: frozenset[int]
    subdivision: frozenset[int]
    origin: dict[int, tuple[int, int]] = field(compare=False)

    def path_of(self, w: int) -> tuple[int, int, int, int]:
        """The ``P_4`` through subdivision vertex ``w``."""
        u, v = self.origin[w]
        a = next(x for x in self.graph.adj[u] if self.origin.get(x) == (u, v))
        b = next(x for x in self.graph.adj[v] if self.origin.get(x) == (u, v))
        return (u, a, b, v)


def subdivide_twice(g: Graph, order: Arrangement) -> tuple[SubdividedGraph, Arrangement]:
    """Replace every edge by a ``P_4`` and place each new vertex next to its original neighbour."""
    _check(g, order)
    pos = order.pos
    edges = []
    origin: dict[int, tuple[int, int]] = {}
    before: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    after: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    nxt = g.n
    for u, v in g.sorted_edges():
        a, b = nxt, nxt + 1
        nxt += 2
        if pos[u] > pos[v]:
            u, v = v, u
        # a hangs off the earlier endpoint u, b off the later endpoint v
        edges += [(u, a), (a, b), (b, v)]
        origin[a] = origin[b] = _norm(u, v)
        after[u].append((pos[v], a))
        before[v].append((pos[u], b))
    seq: list[int] = []
    for v in order.order:
        seq += [w for _, w in sorted(before[v])]
        seq.append(v)
        seq += [w for _, w in sorted(after[v])]
    hat = Graph.from_edges(nxt, edges)
    sub = SubdividedGraph(g, hat, frozenset(range(g.n)), frozenset(range(g.n, nxt)), origin)
    return sub, Arrangement.of(seq)


@dataclass(frozen=True)
class PathDecomposition:
    bags: tuple[frozenset[int], ...]
    nice: bool = False
    degenerate: bool = False

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def kinds(self) -> list[str | None]:
        """``introduce``/``forget`` for every bag after the first of a nice decomposition."""
        out: list[str | None] = [None]
        for prev, cur in zip(self.bags, self.bags[1:]):
            out.append("introduce" if prev <= cur else "forget")
        return out

    def validate(self, g: Graph) -> None:
        covered = set().union(*self.bags) if self.bags else set()
        if covered != set(range(g.n)):
            raise GraphError("bags do not cover all vertices")
        for u, v in g.edges:
            if not any(u in b and v in b for b in self.bags):
                raise GraphError(f"edge {(u, v)} not inside any bag")
        for v in range(g.n):
            idx = [i for i, b in enumerate(self.bags) if v in b]
            if idx and idx[-1] - idx[0] + 1 != len(idx):
                raise GraphError(f"occurrences of {v} are not contiguous")
        if self.nice:
            if self.bags and (self.bags[0] or self.bags[-1]):
                raise GraphError("nice decomposition must start and end with empty bags")
            for a, b in zip(self.bags, self.bags[1:]):
                if len(a ^ b) != 1:
                    raise GraphError("consecutive nice bags must differ by one vertex")


def path_decomposition_from_arrangement(g: Graph, order: Arrangement) -> PathDecomposition:
    """Bag ``i`` holds ``v_i`` plus every earlier vertex with a neighbour at position ``>= i``."""
    _check(g, order)
    if g.m == 0:
        return PathDecomposition(tuple(frozenset({v}) for v in order.order), degenerate=True)
    pos = order.pos
    last = list(pos)
    for u, w in g.edges:
        last[u] = max(last[u], pos[w])
        last[w] = max(last[w], pos[u])
    bags = []
    for i, vi in enumerate(order.order):
        bags.append(frozenset([vi] + [v for v in order.order[:i] if last[v] >= i]))
    return PathDecomposition(tuple(bags))


def make_nice(pd: PathDecomposition) -> PathDecomposition:
    """Insert single introduce/forget steps; forgets happen before introduces."""
    bags: list[frozenset[int]] = [frozenset()]
    cur: list[int] = []
    for target in list(pd.bags) + [frozenset()]:
        for v in reversed(cur[:]):
            if v not in target:
                cur.remove(v)
                bags.append(frozenset(cur))
        for v in sorted(target):
            if v not in cur:
                cur.append(v)
                bags.append(frozenset(cur))
    return PathDecomposition(tuple(bags), nice=True, degenerate=pd.degenerate)


def enumerate_cycles(g: Graph, limit: int = 100_000) -> list[tuple[int, ...]]:
    """All simple cycles, each once: it starts at its smallest vertex and its second vertex is below its last."""
    cycles: list[tuple[int, ...]] = []
    for s in range(g.n):
        path = [s]
        on_path = {s}

        def extend(u: int) -> None:
            for w in sorted(g.adj[u]):
                if w == s and len(path) >= 3 and path[1] < path[-1]:
                    cycles.append(tuple(path))
                    if len(cycles) > limit:
                        raise GraphError(f"more than {limit} cycles")
                elif w > s and w not in on_path:
                    path.append(w)
                    on_path.add(w)
                    extend(w)
                    path.pop()
                    on_path.discard(w)

        extend(s)
    return cycles


def all_graphs(n: int) -> Iterable[Graph]:
    """Every labelled graph on ``n`` vertices."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [p for b, p in enumerate(pairs) if mask >> b & 1])
