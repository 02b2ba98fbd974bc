"""Randomized cut-and-count decision procedures for connected vertex cover and connected dominating set.

Both solvers count pairs (solution, consistent cut) modulo 2 with the
rank-reduced coloring engine.  Connected solutions contribute an odd number of
cuts, disconnected ones an even number, and random isolation weights make a
unique minimum-weight solution likely.  The solvers never report a solution
that does not exist.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .algebra import EvalBackend, ExactBackend
from .coloring import ColoringInstance, RunStats, Table, extend, initial_table, project, recolor, reduce_all, run
from .graph import Arrangement, Graph, boundaries
from .linalg import CDS_MATRIX, CVC_MATRIX, basis_representation

# CVC colors: not in the cover, left side, right side.
CVC_X, CVC_L, CVC_R = 0, 1, 2
# CDS intermediate colors plus the final "dominated" color.
CDS_L, CDS_R, CDS_A, CDS_F, CDS_D = 0, 1, 2, 3, 4

DEFAULT_REPEATS = 20


def isolation_weights(n: int, rng: random.Random) -> list[int]:
    """Weights drawn uniformly from ``[1, 2n]``."""
    return [rng.randint(1, 2 * n) for _ in range(n)]


def stream(seed: int, repeat: int, anchor: int) -> random.Random:
    return random.Random(f"{seed}/{repeat}/{anchor}")


@dataclass
class SolveReport:
    answer: bool
    repeats_run: int = 0
    max_support: int = 0
    max_ctw: int = 0
    detected: int | None = None  # smallest order with odd parity seen
    violations: list = field(default_factory=list)

    def absorb(self, stats: RunStats) -> None:
        self.max_support = max(self.max_support, stats.max_support)
        self.violations += stats.violations


def _detected_orders(row: np.ndarray) -> list[int]:
    nz = row.reshape(row.shape[0], -1) != 0
    return [k for k in range(row.shape[0]) if nz[k].any()]


# Connected vertex cover

def cvc_instance(g: Graph, order: Arrangement, anchor: int, weights: Sequence[int], budget: int) -> ColoringInstance:
    full = {CVC_X, CVC_L, CVC_R}
    lists = [{CVC_L} if v == anchor else full for v in range(g.n)]
    return ColoringInstance.build(g, order, CVC_MATRIX, {CVC_L, CVC_R}, lists, weights, budget, 0, 2)


def cvc_anchors(g: Graph) -> tuple[int, ...]:
    u, v = g.sorted_edges()[0]
    return (u, v)


def cvc_parities(g: Graph, order: Arrangement, anchor: int, weights: Sequence[int], budget: int) -> np.ndarray:
    """Exact parities ``[K][W]`` of consistent cuts of vertex covers through ``anchor``."""
    inst = cvc_instance(g, order, anchor, weights, budget)
    backend = ExactBackend((budget + 1,), budget * max(weights, default=1), 2)
    return run(inst, backend, rep=basis_representation(CVC_MATRIX, 2))


def cvc_repeat(g: Graph, order: Arrangement, budget: int, seed: int, repeat: int, stats: RunStats | None = None) -> list[int]:
    """Orders ``K <= budget`` for which one repeat finds odd parity (over all anchors)."""
    rep = basis_representation(CVC_MATRIX, 2)
    found: set[int] = set()
    for anchor in cvc_anchors(g):
        rng = stream(seed, repeat, anchor)
        weights = isolation_weights(g.n, rng)
        backend = EvalBackend((budget + 1,), rng=rng)
        row = run(cvc_instance(g, order, anchor, weights, budget), backend, rep=rep, stats=stats)
        found.update(_detected_orders(row))
    return sorted(found)


def solve_cvc(
    g: Graph, order: Arrangement, k: int, seed: int = 0, repeats: int = DEFAULT_REPEATS
) -> SolveReport:
    if k < 0:
        raise ValueError("budget must be nonnegative")
    if g.m == 0:
        return SolveReport(True, detected=0)
    report = SolveReport(False)
    budget = min(k, g.n)
    for r in range(repeats):
        stats = RunStats()
        found = cvc_repeat(g, order, budget, seed, r, stats)
        report.repeats_run += 1
        report.absorb(stats)
        if found:
            report.answer, report.detected = True, found[0]
            break
    return report


# Connected dominating set

_FINALIZE_EXACT = {CDS_A: ((CDS_D, 1),), CDS_F: ((CDS_D, -1),)}


def cds_anchors(g: Graph) -> tuple[int, ...]:
    """Closed neighbourhood of a minimum-degree vertex: every dominating set meets it."""
    v = min(range(g.n), key=lambda u: (g.degree(u), u))
    return tuple(sorted(g.adj[v] | {v}))


@dataclass
class CdsStats:
    t_support: RunStats = field(default_factory=RunStats)
    max_intermediate: int = 0
    leaked: int = 0  # keys with A or F on a finalized vertex


def cds_run(
    g: Graph,
    order: Arrangement,
    anchor: int,
    weights: Sequence[int],
    backend,
    reduced: bool = True,
    stats: CdsStats | None = None,
) -> np.ndarray:
    """Summed final row of the CDS table family for one anchor.

    Per position: extend to ``Z_i``, finalize forgotten vertices in ascending
    id order (``D = A - F``), project to ``X_i``, then reduce.
    """
    inst = ColoringInstance.build(
        g, order, CDS_MATRIX, {CDS_L, CDS_R},
        [{CDS_L} if v == anchor else {CDS_L, CDS_R, CDS_A, CDS_F} for v in range(g.n)],
        weights,
    )
    rep = basis_representation(CDS_MATRIX, 2) if reduced else None
    bounds = boundaries(g, order)
    table: Table = initial_table(backend)
    prev_x: tuple[int, ...] = ()
    for i in range(g.n):
        xs, ys = bounds[i]
        z = prev_x + (order.order[i],)
        table = extend(table, inst, i, z, backend)
        table = _finalize(table, sorted(set(prev_x) - set(xs)), backend, stats)
        table = project(table, xs, backend)
        if rep is not None:
            table = reduce_all(table, xs, ys, g, rep, backend)
        if stats is not None:
            r = len(table.reduced)
            stats.t_support.record(i, len(table), 3**r * 4 ** (len(xs) - r))
        prev_x = tuple(xs)
    table = _finalize(table, sorted(prev_x), backend, stats)
    return backend.total(table.values)


def _finalize(table: Table, vertices: Sequence[int], backend, stats: CdsStats | None) -> Table:
    for w in vertices:
        table = recolor(table, w, _FINALIZE_EXACT, backend)
        if stats is not None:
            stats.max_intermediate = max(stats.max_intermediate, len(table))
            done = [table.domain.index(u) for u in vertices[: vertices.index(w) + 1]]
            stats.leaked += sum(1 for x in table.keys if any(x[j] in (CDS_A, CDS_F) for j in done))
    return table


def cds_parities(g: Graph, order: Arrangement, anchor: int, weights: Sequence[int], budget: int, reduced: bool = True) -> np.ndarray:
    backend = ExactBackend((budget + 1,), budget * max(weights, default=1), 2)
    return cds_run(g, order, anchor, weights, backend, reduced)


def cds_repeat(g: Graph, order: Arrangement, budget: int, seed: int, repeat: int, stats: CdsStats | None = None) -> list[int]:
    found: set[int] = set()
    for anchor in cds_anchors(g):
        rng = stream(seed, repeat, anchor)
        weights = isolation_weights(g.n, rng)
        backend = EvalBackend((budget + 1,), rng=rng)
        found.update(_detected_orders(cds_run(g, order, anchor, weights, backend, stats=stats)))
    return sorted(found)


def solve_cds(
    g: Graph, order: Arrangement, k: int, seed: int = 0, repeats: int = DEFAULT_REPEATS
) -> SolveReport:
    if g.n == 0:
        raise ValueError("connected dominating set needs a nonempty graph")
    if k < 0:
        raise ValueError("budget must be nonnegative")
    report = SolveReport(False)
    budget = min(k, g.n)
    for r in range(repeats):
        stats = CdsStats()
        found = cds_repeat(g, order, budget, seed, r, stats)
        report.repeats_run += 1
        report.absorb(stats.t_support)
        if found:
            report.answer, report.detected = True, found[0]
            break
    return report
