"""Odd cycle transversal and feedback vertex set through the twice-subdivided graph.

Subdividing every edge twice keeps the cutwidth and turns the arrangement into
a nice path decomposition whose bags hold at most one original vertex.  Since
subdivision vertices never need to be deleted, they carry only two states in
the dynamic programs below, giving tables of size ``O(2^pw)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .algebra import EvalBackend, ExactBackend
from .cutcount import DEFAULT_REPEATS, SolveReport, stream
from .graph import Arrangement, Graph, PathDecomposition, make_nice, path_decomposition_from_arrangement, subdivide_twice

DELETED, SIDE_L, SIDE_R = 0, 1, 2


@dataclass
class DpStats:
    max_support: int = 0
    max_bag: int = 0
    max_free: int = 0  # most vertices in one bag that may take every state
    supports: list[int] = field(default_factory=list)

    def record(self, bag: Sequence[int], size: int, free: Iterable[int]) -> None:
        self.supports.append(size)
        self.max_support = max(self.max_support, size)
        self.max_bag = max(self.max_bag, len(bag))
        self.max_free = max(self.max_free, len(set(bag) & set(free)))


@dataclass(frozen=True)
class Pipeline:
    """A graph, its two-subdivision and the derived nice decomposition."""

    base: Graph
    graph: Graph
    originals: frozenset[int]
    subdivision: frozenset[int]
    decomposition: PathDecomposition

    @property
    def pathwidth(self) -> int:
        return self.decomposition.width


def build_pipeline(g: Graph, order: Arrangement) -> Pipeline:
    sub, hat_order = subdivide_twice(g, order)
    nice = make_nice(path_decomposition_from_arrangement(sub.graph, hat_order))
    return Pipeline(g, sub.graph, sub.originals, sub.subdivision, nice)


def _transitions(pd: PathDecomposition):
    """Yield ``(kind, vertex, bag domain after the step)``; domains keep insertion order."""
    domain: list[int] = []
    for prev, cur in zip(pd.bags, pd.bags[1:]):
        if prev <= cur:
            (v,) = cur - prev
            domain.append(v)
            yield "introduce", v, tuple(domain)
        else:
            (v,) = prev - cur
            domain.remove(v)
            yield "forget", v, tuple(domain)


# Odd cycle transversal

def solve_oct_prime(
    g: Graph,
    pd: PathDecomposition,
    k: int,
    forced: Iterable[int] = (),
    forbidden: Iterable[int] = (),
    stats: DpStats | None = None,
) -> bool:
    """Is there an odd cycle transversal of size ``<= k`` containing ``forced`` and avoiding ``forbidden``?

    States per bag vertex: deleted, or one of the two color classes.  Each
    table maps a valid state assignment to its fewest deletions.
    """
    forced, forbidden = frozenset(forced), frozenset(forbidden)
    if forced & forbidden:
        raise ValueError("forced and forbidden sets intersect")
    if not pd.nice:
        raise ValueError("a nice path decomposition is required")
    if g.n == 0:
        return k >= 0
    table: dict[tuple[int, ...], int] = {(): 0}
    domain: tuple[int, ...] = ()
    free = set(range(g.n)) - forbidden
    for kind, v, new_domain in _transitions(pd):
        nxt: dict[tuple[int, ...], int] = {}
        if kind == "introduce":
            nbrs = [j for j, u in enumerate(domain) if u in g.adj[v]]
            if v in forced:
                states = (DELETED,)
            elif v in forbidden:
                states = (SIDE_L, SIDE_R)
            else:
                states = (DELETED, SIDE_L, SIDE_R)
            for s, cost in table.items():
                for x in states:
                    if x != DELETED and any(s[j] == x for j in nbrs):
                        continue
                    c = cost + (x == DELETED)
                    if c <= k:
                        key = s + (x,)
                        if c < nxt.get(key, k + 1):
                            nxt[key] = c
        else:
            j = domain.index(v)
            for s, cost in table.items():
                key = s[:j] + s[j + 1:]
                if cost < nxt.get(key, k + 1):
                    nxt[key] = cost
        table, domain = nxt, new_domain
        if stats is not None:
            stats.record(domain, len(table), free)
    return bool(table)


def solve_oct(g: Graph, order: Arrangement, k: int, stats: DpStats | None = None) -> bool:
    if k < 0:
        raise ValueError("budget must be nonnegative")
    p = build_pipeline(g, order)
    return solve_oct_prime(p.graph, p.decomposition, k, forbidden=p.subdivision, stats=stats)


# Feedback vertex set

@dataclass(frozen=True)
class FvsWeights:
    forest: tuple[int, ...]  # weight of a vertex kept in the forest
    marker: tuple[int, ...]  # weight of a vertex used as a component marker

    @classmethod
    def draw(cls, n: int, rng: random.Random, bound: int | None = None, always_kept: Iterable[int] = ()) -> "FvsWeights":
        """Uniform weights in ``[1, bound]``; vertices that are always kept get forest weight 0.

        Such a vertex adds the same amount to every solution, so it plays no
        part in isolating one.
        """
        bound = 4 * n if bound is None else bound
        fixed = frozenset(always_kept)
        forest = tuple(rng.randint(1, bound) for _ in range(n))
        marker = tuple(rng.randint(1, bound) for _ in range(n))
        return cls(tuple(0 if v in fixed else w for v, w in enumerate(forest)), marker)


class _FullCounters:
    """Counters ``(|X|, |E(G[X])|, |M|)`` with the weight as an exact axis."""

    def __init__(self, g: Graph, weights: FvsWeights, p: int | None = 2):
        wmax = sum(weights.forest) + sum(weights.marker)
        self.backend = ExactBackend((g.n + 1, g.m + 1, g.n + 1), wmax, p)
        self.origin = (0, 0, 0)

    @staticmethod
    def keep(d: int) -> tuple[int, ...]:
        return (1, d, 0)

    delete = (0, 0, 0)
    mark = (0, 0, 1)

    @staticmethod
    def cell(row: np.ndarray, counters: tuple[int, ...], weight: int):
        if not 0 <= weight < row.shape[-1]:
            return 0
        if any(not 0 <= c < s for c, s in zip(counters, row.shape)):
            return 0
        return row[tuple(counters) + (weight,)]


class _WindowCounters:
    """Counters ``(deletions, |E(G[X])| + |M| - |X|)``, the second shifted into ``[0, window]``.

    Any object that survives to an odd final count has, at every bag, a
    second counter equal to minus the number of unmarked partial components,
    all of which meet the bag.  Values outside the window are dropped; the
    dropped set depends only on ``(X, M)`` so flipping cut sides still pairs
    up the remaining even contributions.
    """

    def __init__(self, k: int, window: int, rng: random.Random):
        self.window = window
        self.backend = EvalBackend((k + 1, window + 1), rng=rng)
        self.origin = (0, window)

    @staticmethod
    def keep(d: int) -> tuple[int, ...]:
        return (0, d - 1)

    delete = (1, 0)
    mark = (0, 1)


# Bag states are packed into one integer, digit ``j`` (base 3) for the ``j``-th domain vertex.
_MAX_DOMAIN = 39


class _Boxed:
    """Cells restricted to a box of the counter axes: ``vals[:, i, ...]`` is counter ``lo + i``.

    Only the box holding nonzero cells is stored, which keeps the arithmetic
    proportional to the live part of the counters.
    """

    def __init__(self, backend, lo: tuple[int, ...], vals: np.ndarray):
        self.backend, self.lo, self.vals = backend, lo, vals

    @property
    def sizes(self) -> tuple[int, ...]:
        return self.backend.counters

    def shifted(self, offsets: tuple[int, ...], weight: int = 0) -> "_Boxed":
        nc = len(self.sizes)
        vals = self.backend.shift(self.vals, (0,) * nc, weight) if weight else self.vals
        lo, cut = [], [slice(None)]
        for ax, (l, off, size) in enumerate(zip(self.lo, offsets, self.sizes)):
            start, stop = l + off, l + off + vals.shape[ax + 1]
            a, b = max(start, 0), min(stop, size)
            if a >= b:
                return _Boxed(self.backend, (0,) * nc, self.backend.zeros(len(vals))[(slice(None),) + (slice(0, 0),) * nc])
            lo.append(a)
            cut.append(slice(a - start, b - start))
        return _Boxed(self.backend, tuple(lo), vals[tuple(cut)])

    def rows(self, idx) -> "_Boxed":
        return _Boxed(self.backend, self.lo, self.vals[idx])

    def reshaped(self, lo: tuple[int, ...], shape: tuple[int, ...]) -> np.ndarray:
        """Values placed in the box starting at ``lo`` with extent ``shape``, which must contain this box."""
        if lo == self.lo and shape == self.vals.shape[1:len(lo) + 1]:
            return self.vals
        out = self.backend.zeros(len(self.vals))
        out = out[(slice(None),) + tuple(slice(0, e) for e in shape)].copy()
        place = tuple(slice(a - l, a - l + e) for a, l, e in zip(self.lo, lo, self.vals.shape[1:]))
        out[(slice(None),) + place] = self.vals
        return out

    @staticmethod
    def hull(parts: Sequence["_Boxed"]) -> tuple[tuple[int, ...], tuple[int, ...]]:
        parts = [p for p in parts if all(e > 0 for e in p.vals.shape[1:len(p.lo) + 1])]
        if not parts:
            return (), ()
        nc = len(parts[0].lo)
        lo = tuple(min(p.lo[ax] for p in parts) for ax in range(nc))
        hi = tuple(max(p.lo[ax] + p.vals.shape[ax + 1] for p in parts) for ax in range(nc))
        return lo, tuple(h - l for h, l in zip(hi, lo))

    def cropped(self) -> "_Boxed":
        nc = len(self.lo)
        if not len(self.vals) or not self.vals.size:
            return self
        live = (self.vals != 0).reshape(self.vals.shape[:nc + 1] + (-1,)).any(axis=(0, nc + 1))
        if not live.any():
            return _Boxed(self.backend, self.lo, self.vals[(slice(None),) + (slice(0, 0),) * nc])
        lo, cut = [], [slice(None)]
        for ax in range(nc):
            hit = np.flatnonzero(live.any(axis=tuple(x for x in range(nc) if x != ax)))
            lo.append(self.lo[ax] + int(hit[0]))
            cut.append(slice(int(hit[0]), int(hit[-1]) + 1))
        return _Boxed(self.backend, tuple(lo), self.vals[tuple(cut)])

    def full(self) -> np.ndarray:
        return self.reshaped((0,) * len(self.lo), self.sizes)


def _concat(parts: Sequence[_Boxed], backend) -> _Boxed:
    lo, shape = _Boxed.hull(parts)
    nc = len(backend.counters)
    if not shape:
        return _Boxed(backend, (0,) * nc, backend.zeros(sum(len(p.vals) for p in parts))[(slice(None),) + (slice(0, 0),) * nc])
    return _Boxed(backend, lo, np.concatenate([p.reshaped(lo, shape) for p in parts]))


def _fvs_dp(g: Graph, pd: PathDecomposition, keep_set: frozenset[int], weights: FvsWeights, counters, stats: DpStats | None):
    backend = counters.backend
    keys = np.zeros(1, dtype=np.int64)
    nc = len(backend.counters)
    origin = tuple(counters.origin)
    table = _Boxed(backend, origin, backend.unit(origin)[(slice(None),) + tuple(slice(c, c + 1) for c in origin)])
    domain: tuple[int, ...] = ()
    free = set(range(g.n)) - keep_set
    for kind, v, new_domain in _transitions(pd):
        if kind == "introduce":
            if len(domain) >= _MAX_DOMAIN:
                raise ValueError(f"bags larger than {_MAX_DOMAIN} are not supported")
            place = 3 ** len(domain)
            nbrs = [j for j, u in enumerate(domain) if u in g.adj[v]]
            digits = np.stack([(keys // 3**j) % 3 for j in nbrs]) if nbrs else np.zeros((0, len(keys)), dtype=np.int64)
            kept = (digits != DELETED).sum(axis=0)
            allowed = {SIDE_L: ~(digits == SIDE_R).any(axis=0), SIDE_R: ~(digits == SIDE_L).any(axis=0)}
            new_keys, parts = [], []
            if v not in keep_set:
                new_keys.append(keys + DELETED * place)
                parts.append(table.shifted(counters.delete))
            either = allowed[SIDE_L] | allowed[SIDE_R]
            for d in np.unique(kept[either]):
                idx = np.flatnonzero(either & (kept == d))
                block = table.rows(idx).shifted(counters.keep(int(d)), weights.forest[v])
                for side in (SIDE_L, SIDE_R):
                    sel = allowed[side][idx]
                    new_keys.append(keys[idx[sel]] + side * place)
                    parts.append(block.rows(sel))
            keys = np.concatenate(new_keys) if new_keys else np.zeros(0, dtype=np.int64)
            table = _concat(parts, backend)
        else:
            j = domain.index(v)
            low = 3**j
            digit = (keys // low) % 3
            reduced = keys % low + (keys // (3 * low)) * low
            uniq, inv = np.unique(reduced, return_inverse=True)
            left = np.flatnonzero(digit == SIDE_L)
            marked = table.rows(left).shifted(counters.mark, weights.marker[v])
            lo, shape = _Boxed.hull([table, marked])
            if shape:
                out = backend.zeros(len(uniq))[(slice(None),) + tuple(slice(0, e) for e in shape)].copy()
                plain = table.reshaped(lo, shape)
                # rows sharing a digit at position j map to distinct reduced keys
                for c in (DELETED, SIDE_L, SIDE_R):
                    sel = np.flatnonzero(digit == c)
                    backend.scatter(out, inv[sel], plain, sel, unique=True)
                backend.scatter(out, inv[left], marked.reshaped(lo, shape), unique=True)
                table = _Boxed(backend, lo, out)
            else:
                table = _Boxed(backend, table.lo, backend.zeros(len(uniq))[(slice(None),) + (slice(0, 0),) * nc])
            keys = uniq
        table = table.cropped()
        live = backend.nonzero_rows(table.vals) if table.vals.size else np.zeros(len(keys), dtype=bool)
        if not live.all():
            keys, table = keys[live], table.rows(live)
        domain = new_domain
        if stats is not None:
            stats.record(domain, len(keys), free)
    return backend.total(table.full())


def fvs_count_table(
    g: Graph, pd: PathDecomposition, keep_set: Iterable[int], weights: FvsWeights, p: int | None = 2
) -> np.ndarray:
    """Counts of ``((X, M), (L, R))`` indexed by ``[|X|][|E(G[X])|][|M|][weight]``.

    ``keep_set`` lies inside ``X`` and ``M`` inside ``L``; entries are reduced
    modulo ``p`` (parity by default, exact when ``p`` is None).
    """
    if not pd.nice:
        raise ValueError("a nice path decomposition is required")
    counters = _FullCounters(g, weights, p)
    return _fvs_dp(g, pd, frozenset(keep_set), weights, counters, None)


def count_fvs_cuts(
    g: Graph,
    pd: PathDecomposition,
    keep_set: Iterable[int],
    weights: FvsWeights,
    a: int,
    b: int,
    c: int,
    w: int,
    p: int | None = 2,
) -> int:
    """One entry of :func:`fvs_count_table`; out-of-range counters give 0."""
    row = fvs_count_table(g, pd, keep_set, weights, p)
    return _FullCounters.cell(row, (a, b, c), w)


def fvs_repeat(p: Pipeline, k: int, seed: int, repeat: int, stats: DpStats | None = None) -> list[int]:
    """Deletion counts ``<= k`` with odd parity for one draw of weights."""
    rng = stream(seed, repeat, 0)
    weights = FvsWeights.draw(p.graph.n, rng, always_kept=p.subdivision)
    counters = _WindowCounters(k, p.pathwidth + 1, rng)
    row = _fvs_dp(p.graph, p.decomposition, p.subdivision, weights, counters, stats)
    return [s for s in range(k + 1) if row[s, counters.window] != 0]


def solve_fvs(
    g: Graph, order: Arrangement, k: int, seed: int = 0, repeats: int = DEFAULT_REPEATS
) -> SolveReport:
    if k < 0:
        raise ValueError("budget must be nonnegative")
    pipe = build_pipeline(g, order)
    budget = min(k, len(pipe.originals))
    report = SolveReport(False)
    for r in range(repeats):
        stats = DpStats()
        found = fvs_repeat(pipe, budget, seed, r, stats)
        report.repeats_run += 1
        report.max_support = max(report.max_support, stats.max_support)
        if found:
            report.answer, report.detected = True, found[0]
            break
    return report
