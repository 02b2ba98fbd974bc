"""Brute-force ground truth used by the tests and the ``oracle`` subcommand."""

from __future__ import annotations

import itertools
import os
from typing import Iterable, Sequence

from .cnf import CnfFormula
from .graph import Graph

PROBLEMS = ("cvc", "cds", "oct", "fvs", "st", "coct")


class LimitExceeded(ValueError):
    pass


def size_limit(default: int = 20) -> int:
    return int(os.environ.get("CWS_LIMIT", default))


# Feasibility checks.  These stay independent of every solver.

def is_vertex_cover(g: Graph, s: set[int]) -> bool:
    return all(u in s or v in s for u, v in g.edges)


def is_dominating(g: Graph, s: set[int]) -> bool:
    return all(v in s or g.adj[v] & s for v in range(g.n))


def is_bipartite_without(g: Graph, s: set[int]) -> bool:
    side: dict[int, int] = {}
    for root in range(g.n):
        if root in s or root in side:
            continue
        side[root] = 0
        stack = [root]
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if w in s:
                    continue
                if w not in side:
                    side[w] = 1 - side[u]
                    stack.append(w)
                elif side[w] == side[u]:
                    return False
    return True


def is_forest_without(g: Graph, s: set[int]) -> bool:
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges:
        if u in s or v in s:
            continue
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def feasible(problem: str, g: Graph, s: Iterable[int], terminals: Iterable[int] = ()) -> bool:
    s = set(s)
    if problem == "cvc":
        return is_vertex_cover(g, s) and g.is_connected_subset(s)
    if problem == "cds":
        return is_dominating(g, s) and g.is_connected_subset(s)
    if problem == "oct":
        return is_bipartite_without(g, s)
    if problem == "fvs":
        return is_forest_without(g, s)
    if problem == "st":
        return set(terminals) <= s and g.is_connected_subset(s)
    if problem == "coct":
        return is_bipartite_without(g, s) and g.is_connected_subset(s)
    raise ValueError(f"unknown problem {problem!r}")


def brute_solve(
    problem: str, g: Graph, k: int, terminals: Sequence[int] = (), limit: int | None = None
) -> tuple[bool, frozenset[int] | None]:
    """Smallest feasible set of size at most ``k``, found by increasing-size enumeration."""
    limit = size_limit() if limit is None else limit
    if g.n > limit:
        raise LimitExceeded(f"brute force limited to {limit} vertices, got {g.n}")
    if problem == "st" and not set(terminals) <= set(range(g.n)):
        raise ValueError("terminals must be vertices of the graph")
    if problem not in PROBLEMS:
        raise ValueError(f"unknown problem {problem!r}")
    for size in range(0, min(k, g.n) + 1):
        for combo in itertools.combinations(range(g.n), size):
            if feasible(problem, g, combo, terminals):
                return True, frozenset(combo)
    return False, None


def brute_minimum(problem: str, g: Graph, terminals: Sequence[int] = ()) -> int | None:
    ok, wit = brute_solve(problem, g, g.n, terminals)
    return len(wit) if ok else None


def brute_sat(f: CnfFormula, mode: str = "sat", limit: int = 24) -> tuple[bool, tuple[bool, ...] | None]:
    if f.n > limit:
        raise LimitExceeded(f"SAT enumeration limited to {limit} variables, got {f.n}")
    check = f.satisfies if mode == "sat" else f.nae_satisfies
    if mode not in ("sat", "nae"):
        raise ValueError(f"unknown mode {mode!r}")
    for bits in itertools.product((False, True), repeat=f.n):
        if check(bits):
            return True, bits
    return False, None


def all_assignments(f: CnfFormula, mode: str = "sat") -> list[tuple[bool, ...]]:
    check = f.satisfies if mode == "sat" else f.nae_satisfies
    return [bits for bits in itertools.product((False, True), repeat=f.n) if check(bits)]


def brute_coloring_count(inst, limit: int = 1 << 20):
    """Count admissible colorings of a coloring-like instance by full enumeration."""
    g = inst.graph
    if inst.num_colors ** g.n > limit:
        raise LimitExceeded("too many colorings to enumerate")
    total = 0
    for c in itertools.product(range(inst.num_colors), repeat=g.n):
        if any(c[v] not in inst.lists[v] for v in range(g.n)):
            continue
        if any(not inst.matrix[c[u]][c[v]] for u, v in g.edges):
            continue
        special = [v for v in range(g.n) if c[v] in inst.special]
        if len(special) != inst.target_order:
            continue
        if sum(inst.weights[v] for v in special) != inst.target_weight:
            continue
        total += 1
    return total % inst.p if inst.p else total
