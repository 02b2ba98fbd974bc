"""Counting list colorings constrained by a consistency matrix along a linear arrangement.

Tables are indexed by colorings of the left boundary ``X_i`` (tuples ordered by
position).  Each row is a block of cells over the order ``k`` of the coloring
and its weight ``w``, managed by a backend from :mod:`cws.algebra`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .algebra import ExactBackend
from .graph import Arrangement, Graph, boundaries
from .linalg import BasisRepresentation, Matrix, as_matrix, basis_representation


@dataclass(frozen=True)
class ColoringInstance:
    graph: Graph
    order: Arrangement
    num_colors: int
    special: frozenset[int]
    matrix: Matrix
    lists: tuple[frozenset[int], ...]
    weights: tuple[int, ...]
    target_order: int = 0
    target_weight: int = 0
    p: int | None = None

    @classmethod
    def build(
        cls,
        graph: Graph,
        order: Arrangement,
        matrix: Sequence[Sequence[int]],
        special: Iterable[int] = (),
        lists: Sequence[Iterable[int]] | None = None,
        weights: Sequence[int] | None = None,
        target_order: int = 0,
        target_weight: int = 0,
        p: int | None = None,
    ) -> "ColoringInstance":
        m = as_matrix(matrix)
        q = len(m)
        full = frozenset(range(q))
        lists = tuple(frozenset(a) for a in lists) if lists is not None else (full,) * graph.n
        weights = tuple(weights) if weights is not None else (1,) * graph.n
        if len(lists) != graph.n or len(weights) != graph.n:
            raise ValueError("lists and weights need one entry per vertex")
        if any(not a <= full for a in lists):
            raise ValueError("list contains an unknown color")
        if any(w < 1 for w in weights):
            raise ValueError("weights must be positive")
        return cls(graph, order, q, frozenset(special), m, lists, weights, target_order, target_weight, p)

    @property
    def weight_bound(self) -> int:
        return max(self.weights, default=1)


@dataclass
class Table:
    """A DP table over colorings of ``domain`` (vertices ordered by position)."""

    domain: tuple[int, ...]
    keys: list[tuple[int, ...]]
    values: np.ndarray
    reduced: frozenset[int] = frozenset()
    index: dict[tuple[int, ...], int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.index:
            self.index = {k: r for r, k in enumerate(self.keys)}

    def __len__(self) -> int:
        return len(self.keys)

    def row(self, key: tuple[int, ...]) -> np.ndarray | None:
        r = self.index.get(key)
        return None if r is None else self.values[r]


def compact(domain, keys, values, backend, reduced) -> Table:
    keep = np.flatnonzero(backend.nonzero_rows(values))
    return Table(tuple(domain), [keys[r] for r in keep], values[keep], frozenset(reduced))


def compatible(x: dict[int, int], y: dict[int, int], g: Graph, matrix: Matrix) -> bool:
    """``x ~ y``: agreement on common vertices and consistency on edges into ``Y \\ X``."""
    for v in x.keys() & y.keys():
        if x[v] != y[v]:
            return False
    for u, cu in x.items():
        for v in g.adj[u]:
            if v in y and v not in x and not matrix[cu][y[v]]:
                return False
    return True


class RowMerger:
    """Accumulates (target key, source row) pairs and assigns target rows."""

    def __init__(self) -> None:
        self.keys: list[tuple[int, ...]] = []
        self.index: dict[tuple[int, ...], int] = {}
        self.groups: dict[object, tuple[list[int], list[int]]] = {}

    def add(self, key: tuple[int, ...], src: int, group: object) -> None:
        r = self.index.get(key)
        if r is None:
            r = self.index[key] = len(self.keys)
            self.keys.append(key)
        dst, srcs = self.groups.setdefault(group, ([], []))
        dst.append(r)
        srcs.append(src)


def initial_table(backend) -> Table:
    return Table((), [()], backend.unit())


def extend(prev: Table, inst: ColoringInstance, i: int, new_domain: Sequence[int], backend) -> Table:
    """Table for ``X_i`` from a table for ``X_{i-1}`` (naive and reduced step alike)."""
    g, m = inst.graph, inst.matrix
    v = inst.order.order[i]
    where = {u: j for j, u in enumerate(prev.domain)}
    proj = [where[u] for u in new_domain if u != v]
    nbrs = [where[u] for u in prev.domain if u in g.adj[v]]
    keyer = RowMerger()
    colors = sorted(inst.lists[v])
    for r, z in enumerate(prev.keys):
        base = tuple(z[j] for j in proj)
        for s in colors:
            if all(m[z[j]][s] for j in nbrs):
                keyer.add(base + (s,), r, s in inst.special)
    vals = backend.zeros(len(keyer.keys))
    for special, (dst, src) in keyer.groups.items():
        source = backend.shift(prev.values, (1,), inst.weights[v]) if special else prev.values
        backend.scatter(vals, dst, source, src)
    return compact(new_domain, keyer.keys, vals, backend, prev.reduced & set(new_domain))


def recolor(table: Table, v: int, images, backend, reduced: Iterable[int] = ()) -> Table:
    """Apply a linear map on the color of ``v``: ``images[c]`` lists ``(new color, coefficient)`` pairs.

    Colors missing from ``images`` map to themselves.
    """
    j = table.domain.index(v)
    keyer = RowMerger()
    for r, x in enumerate(table.keys):
        for b, coeff in images.get(x[j], ((x[j], 1),)):
            keyer.add(x[:j] + (b,) + x[j + 1:], r, coeff)
    vals = backend.zeros(len(keyer.keys))
    for coeff, (dst, src) in keyer.groups.items():
        backend.scatter(vals, dst, table.values, src, coeff)
    return compact(table.domain, keyer.keys, vals, backend, table.reduced | set(reduced))


def project(table: Table, new_domain: Sequence[int], backend) -> Table:
    """Sum out every vertex of the domain that is not in ``new_domain``."""
    where = {u: j for j, u in enumerate(table.domain)}
    proj = [where[u] for u in new_domain]
    keyer = RowMerger()
    for r, x in enumerate(table.keys):
        keyer.add(tuple(x[j] for j in proj), r, 1)
    vals = backend.zeros(len(keyer.keys))
    for dst, src in keyer.groups.values():
        backend.scatter(vals, dst, table.values, src)
    return compact(new_domain, keyer.keys, vals, backend, table.reduced & set(new_domain))


def reduce(table: Table, v: int, rep: BasisRepresentation, backend, g: Graph | None = None, right: Iterable[int] | None = None) -> Table:
    """Move all mass on non-basis colors of ``v`` onto basis colors.

    When ``g`` and ``right`` are given the precondition (exactly one neighbour of
    ``v`` in ``right``) is checked.
    """
    if v not in table.domain:
        raise ValueError(f"vertex {v} is not in the table domain")
    if v in table.reduced:
        raise ValueError(f"vertex {v} is already reduced")
    if g is not None and right is not None:
        deg = len(g.adj[v] & set(right))
        if deg != 1:
            raise ValueError(f"vertex {v} has {deg} neighbours on the right side, expected 1")
    images = {c: tuple(rep.coefficients.get(c, {}).items()) for c in rep.reduced}
    return recolor(table, v, images, backend, reduced=(v,))


def reduce_all(table: Table, xs: Sequence[int], ys: Sequence[int], g: Graph, rep: BasisRepresentation, backend) -> Table:
    """Reduce every unreduced vertex of ``xs`` with exactly one neighbour in ``ys``, ascending by id."""
    yset = set(ys)
    for u in sorted(xs):
        if u not in table.reduced and len(g.adj[u] & yset) == 1:
            table = reduce(table, u, rep, backend)
    return table


@dataclass
class RunStats:
    max_support: int = 0
    violations: list[tuple[int, int, int]] = field(default_factory=list)
    supports: list[int] = field(default_factory=list)

    def record(self, i: int, size: int, bound: int) -> None:
        self.supports.append(size)
        self.max_support = max(self.max_support, size)
        if size > bound:
            self.violations.append((i, size, bound))


def run(
    inst: ColoringInstance,
    backend,
    rep: BasisRepresentation | None = None,
    stats: RunStats | None = None,
    keep_tables: list | None = None,
) -> np.ndarray:
    """Run the DP and return the summed final row (cells over order and weight).

    With ``rep`` every vertex of degree one in the cut graph is reduced after
    each step, vertices in ascending id order.
    """
    g = inst.graph
    if g.n == 0:
        return backend.unit()[0]
    bounds = boundaries(g, inst.order)
    table = initial_table(backend)
    q = inst.num_colors
    for i in range(g.n):
        xs, ys = bounds[i]
        table = extend(table, inst, i, xs, backend)
        if rep is not None:
            table = reduce_all(table, xs, ys, g, rep, backend)
        if keep_tables is not None:
            keep_tables.append(table)
        if stats is not None:
            r = rep.rank if rep is not None else q
            nred = len(table.reduced)
            stats.record(i, len(table), r**nred * q ** (len(xs) - nred))
    return backend.total(table.values)


def reduced_sets(g: Graph, order: Arrangement, i: int) -> frozenset[int]:
    """``X_i`` minus vertices with two right neighbours, right-degree-one neighbours of ``v_i`` and ``v_i``."""
    xs, ys = boundaries(g, order)[i]
    vi = order.order[i]
    yset = set(ys)
    out = set()
    for u in xs:
        if u == vi:
            continue
        deg = len(g.adj[u] & yset)
        if deg >= 2 or (deg == 1 and vi in g.adj[u]):
            continue
        out.add(u)
    return frozenset(out)


def _exact_backend(inst: ColoringInstance) -> ExactBackend | None:
    if inst.target_order < 0 or inst.target_weight < 0:
        return None
    return ExactBackend((inst.target_order + 1,), inst.target_weight, inst.p)


def naive_solve(inst: ColoringInstance, stats: RunStats | None = None) -> int:
    backend = _exact_backend(inst)
    if backend is None:
        return 0
    row = run(inst, backend, stats=stats)
    return backend.cell(row, (inst.target_order,), inst.target_weight)


def reduction_applies(inst: ColoringInstance) -> BasisRepresentation | None:
    if inst.p is None:
        return None
    rep = basis_representation(inst.matrix, inst.p)
    if math.sqrt(inst.num_colors) > rep.rank:
        return None
    return rep


def solve_reduced(inst: ColoringInstance, stats: RunStats | None = None) -> int:
    """Rank-reduced DP; falls back to :func:`naive_solve` without a prime or with too small a rank."""
    rep = reduction_applies(inst)
    if rep is None:
        return naive_solve(inst, stats)
    backend = _exact_backend(inst)
    if backend is None:
        return 0
    row = run(inst, backend, rep=rep, stats=stats)
    return backend.cell(row, (inst.target_order,), inst.target_weight)


def boundary_sums(table: Table, right: Sequence[int], inst: ColoringInstance, backend) -> dict[tuple[int, ...], np.ndarray]:
    """For every coloring ``y`` of ``right`` the sum of rows ``x`` with ``x ~ y``."""
    out = {}
    g, m = inst.graph, inst.matrix
    right = list(right)
    for y in itertools.product(range(inst.num_colors), repeat=len(right)):
        ymap = dict(zip(right, y))
        rows = [r for r, x in enumerate(table.keys) if compatible(dict(zip(table.domain, x)), ymap, g, m)]
        acc = backend.zeros(1)
        backend.scatter(acc, [0] * len(rows), table.values, rows)
        out[y] = acc[0]
    return out
