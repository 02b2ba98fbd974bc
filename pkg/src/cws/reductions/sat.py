"""Generators for connected vertex cover, feedback vertex set (from SAT) and odd cycle transversal (from NAE-SAT).

Clauses narrower than ``d`` are handled natively: a clause of width ``w``
gets a clique of its own width and its budget share is computed from ``w``.
"""

from __future__ import annotations

from math import comb
from typing import Sequence

from ..cnf import CnfFormula
from .core import Builder, ReductionOutput, finish, thread_path


def _width(f: CnfFormula, d: int | None) -> int:
    d = f.width if d is None else d
    if any(len(c) > d for c in f.clauses):
        raise ValueError(f"a clause is wider than d={d}")
    return d


def _literal_side(lit: int) -> int:
    """Pair member hit by a literal: the first vertex for negative literals, the second for positive ones."""
    return 1 if lit > 0 else 0


def _check_assignment(f: CnfFormula, assignment: Sequence[bool], nae: bool = False) -> None:
    if len(assignment) != f.n:
        raise ValueError(f"assignment has {len(assignment)} values, formula has {f.n} variables")
    ok = f.nae_satisfies(assignment) if nae else f.satisfies(assignment)
    if not ok:
        raise ValueError("assignment does not satisfy the formula")


def _true_literal(clause: Sequence[int], assignment: Sequence[bool]) -> int:
    return next(z for z, lit in enumerate(clause) if assignment[abs(lit) - 1] == (lit > 0))


# Connected vertex cover

def generate_cvc(f: CnfFormula, d: int | None = None) -> ReductionOutput:
    d = _width(f, d)
    n, m = f.n, f.m
    b = Builder()
    order: list[int] = []
    packing = []
    pairs = {}
    for r in range(n + 1):
        for j, clause in enumerate(f.clauses):
            for i in range(n):
                pair = [b.add("u", i, r, j, h) for h in (0, 1)]
                order += pair
                packing.append((pair, 1))
                pairs[i, r, j] = pair
            q = [b.add("q", r, j, z) for z in range(len(clause))]
            b.clique(q)
            for z, lit in enumerate(clause):
                b.edge(q[z], pairs[abs(lit) - 1, r, j][_literal_side(lit)])
            order += q
            packing.append((q, len(clause) - 1))
    for i in range(n):
        b.path([v for r in range(n + 1) for j in range(m) for v in pairs[i, r, j]])

    root: list[int] = []

    def make(x: int):
        name = b.names[x]
        if name[0] == "u":
            _, i, r, j, h = name
            p = 2 * i + h
        else:
            _, r, j, z = name
            p = 2 * n + z
        w = b.add("w", r, j, p)
        w2 = b.add("w'", r, j, p)
        b.edge(w, w2)
        root.append(w)
        return [w2, w], w

    order = thread_path(order, order, make, b)
    packing.append((root, len(root)))
    widths = [len(c) for c in f.clauses]
    closed = sum((n + 1) * (2 * n + w) for w in widths) + m * (n + 1) * n + sum((n + 1) * (w - 1) for w in widths)
    budget = sum(p for _, p in packing)
    return finish("cvc", f, b, order, budget, n + comb(d, 2) + d + 2, packing, closed_form=closed, d=d)


def witness_cvc(out: ReductionOutput, assignment: Sequence[bool]) -> set[int]:
    f = out.formula
    _check_assignment(f, assignment)
    s = set(out.named("w"))
    for i in range(f.n):
        h = int(assignment[i])
        s |= {v for v in out.named("u") if out.names[v][1] == i and out.names[v][4] == h}
    for r in range(f.n + 1):
        for j, clause in enumerate(f.clauses):
            keep = _true_literal(clause, assignment)
            s |= {out.vertex("q", r, j, z) for z in range(len(clause)) if z != keep}
    return s


# Feedback vertex set

def generate_fvs(f: CnfFormula, d: int | None = None) -> ReductionOutput:
    d = _width(f, d)
    n, m = f.n, f.m
    b = Builder()
    order: list[int] = []
    packing = []
    pairs = {}
    for r in range(n + 1):
        for j, clause in enumerate(f.clauses):
            for i in range(n):
                u0 = b.add("u", i, r, j, 0)
                z = b.add("z", i, r, j)
                u1 = b.add("u", i, r, j, 1)
                b.path([u0, z, u1])  # the path below closes the triangle
                pairs[i, r, j] = (u0, u1)
                order += [u0, z, u1]
                packing.append(([u0, z, u1], 1))
            width = len(clause)
            q = [b.add("q", r, j, t) for t in range(width + 1)]
            b.clique(q)
            block = []
            for t, lit in enumerate(clause):
                u = pairs[abs(lit) - 1, r, j][_literal_side(lit)]
                y = b.add("y", r, j, t)
                b.clique([q[t], y, u])
                block += [q[t], y]
            order += block + [q[width]]
            packing.append((q, width - 1))
    for i in range(n):
        b.path([v for r in range(n + 1) for j in range(m) for v in pairs[i, r, j]])

    def make(x: int):
        _, i, r, j, h = b.names[x]
        w = b.add("w", r, j, 2 * i + h)
        return [w], w

    order = thread_path(order, [v for v, nm in enumerate(b.names) if nm[0] == "u"], make, b)
    budget = sum(p for _, p in packing)
    closed = (n + 1) * m * n + sum((n + 1) * (len(c) - 1) for c in f.clauses)
    return finish("fvs", f, b, order, budget, n + comb(d + 1, 2) + 3 * d + 3, packing, closed_form=closed, d=d)


def witness_fvs(out: ReductionOutput, assignment: Sequence[bool]) -> set[int]:
    f = out.formula
    _check_assignment(f, assignment)
    s = {v for v in out.named("u") if out.names[v][4] == int(assignment[out.names[v][1]])}
    for r in range(f.n + 1):
        for j, clause in enumerate(f.clauses):
            keep = _true_literal(clause, assignment)
            s |= {out.vertex("q", r, j, t) for t in range(len(clause)) if t != keep}
    return s


# Odd cycle transversal

def generate_oct(f: CnfFormula, d: int | None = None) -> ReductionOutput:
    """Instance equivalent to NAE-satisfiability of ``f``."""
    d = _width(f, d)
    if any(len(c) < 2 for c in f.clauses):
        raise ValueError("every clause needs at least two literals")
    n, m = f.n, f.m
    b = Builder()
    order: list[int] = []
    packing = []
    for j, clause in enumerate(f.clauses):
        first = [b.add("u", i, j, 1) for i in range(n)]
        q = [b.add("q", j, t) for t in range(len(clause))]
        second = [b.add("u", i, j, 2) for i in range(n)]
        b.clique(q)
        for t, lit in enumerate(clause):
            side = first if lit > 0 else second
            b.edge(q[t], side[abs(lit) - 1])
        order += first + q + second
        packing.append((q, len(clause) - 2))
    for i in range(n):
        b.path([b["u", i, j, h] for j in range(m) for h in (1, 2)])
    closed = sum(len(c) - 2 for c in f.clauses)
    return finish("oct", f, b, order, closed, n + comb(d, 2) + d, packing, d=d)


def witness_oct(out: ReductionOutput, assignment: Sequence[bool]) -> set[int]:
    f = out.formula
    _check_assignment(f, assignment, nae=True)
    s: set[int] = set()
    for j, clause in enumerate(f.clauses):
        values = [assignment[abs(lit) - 1] == (lit > 0) for lit in clause]
        keep = {values.index(True), values.index(False)}
        s |= {out.vertex("q", j, t) for t in range(len(clause)) if t not in keep}
    return s
