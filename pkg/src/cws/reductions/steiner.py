"""Generators for Steiner tree and connected dominating set.

Variables are split into groups of ``t0``; each group drives ``t`` paths of
three-state gadgets, with ``3^t >= 2^t0`` so every partial assignment of a
group has its own state tuple.
"""

from __future__ import annotations

import itertools
from math import ceil
from typing import Sequence

from ..cnf import CnfFormula
from .core import Builder, ReductionOutput, finish, thread_path
from .sat import _check_assignment, _width

STATES = ("C", "D", "O")

# Vertex sets taken from a path gadget in each state.
GADGET_STATE_SETS = {
    "D": ("v", "w2", "C", "O", "w1'", "v'"),
    "C": ("v", "w1", "D", "O", "w2'", "v'"),
    "O": ("u", "w1", "D", "C", "w1'", "u'"),
}


def st_parameters(n: int, t0: int) -> tuple[int, int, int]:
    """``(s, t, n')``: group count, paths per group (least ``t`` with ``3^t >= 2^t0``), path count."""
    if t0 < 1:
        raise ValueError("t0 must be at least 1")
    s = ceil(n / t0) if n else 0
    t = 0
    while 3**t < 2**t0:
        t += 1
    return s, t, s * t


def groups(n: int, t0: int) -> list[list[int]]:
    return [list(range(a, min(a + t0, n))) for a in range(0, n, t0)]


def phi(bits: Sequence[bool], t0: int, t: int) -> tuple[str, ...]:
    """Injective map from a group assignment (first variable most significant) to a state tuple."""
    value = sum(1 << (t0 - 1 - l) for l, bit in enumerate(bits) if bit)
    digits = []
    for _ in range(t):
        value, rem = divmod(value, 3)
        digits.append(STATES[rem])
    return tuple(reversed(digits))


def st_budgets(n_prime: int, s: int, t: int, m: int) -> tuple[int, int, int]:
    """``(k', k'', k)``: terminal count, root-path length and budget."""
    cols = (2 * n_prime + 1) * m
    k2 = 2 + (5 * n_prime + 2 * 3**t * s) * cols
    k1 = (13 * n_prime + 3**t * (2 * t + 1) * s + 1) * cols + 2 + k2
    k = k1 + k2 + 2 + (6 * n_prime + 3**t * s) * cols
    return k1, k2, k


def st_cutwidth_bound(n_prime: int, t: int, d: int) -> int:
    return n_prime + (2 * t + d) * 3**t + 5


def _build(f: CnfFormula, d: int | None, t0: int, chords: bool):
    """Shared construction; with ``chords`` the connected dominating set edges are added."""
    d = _width(f, d)
    n, m = f.n, f.m
    s, t, n_prime = st_parameters(n, t0)
    parts = groups(n, t0)
    b = Builder()
    packing = []
    sub_terminals: list[int] = []

    def term(*name) -> int:
        return b.add("T", *name, terminal=True)

    def split(u: int, v: int, *name) -> int:
        x = b.subdivide(u, v, "T", *name, terminal=True)
        sub_terminals.append(x)
        if chords:
            b.edge(u, v)
        return x

    rooted: list[int] = []
    order: list[int] = []
    cols = [(r, j) for r in range(2 * n_prime + 1) for j in range(m)]
    for r, j in cols:
        for i in range(s):
            for q in range(t):
                key = (i, q, r, j)
                x = {nm: b.add("X", *key, nm) for nm in ("v", "u", "w1", "w2", "D", "O", "C", "w2'", "w1'", "u'", "v'")}
                tv_u = split(x["v"], x["u"], "vu", *key)
                tv_w1 = split(x["v"], x["w1"], "vw1", *key)
                tw = split(x["w1"], x["w2"], "w1w2", *key)
                tw_d = split(x["w2"], x["D"], "w2D", *key)
                tau = term("tau", *key)
                for y in ("u", "w2", "O"):
                    b.edge(tau, x[y])
                tdo = split(x["D"], x["O"], "DO", *key)
                tdc = split(x["D"], x["C"], "DC", *key)
                toc = split(x["O"], x["C"], "OC", *key)
                tau2 = term("tau'", *key)
                for y in ("u'", "w2'", "O"):
                    b.edge(tau2, x[y])
                tw2c = split(x["w2'"], x["C"], "w2'C", *key)
                tw1 = split(x["w1'"], x["w2'"], "w1'w2'", *key)
                tv_w1p = split(x["v'"], x["w1'"], "v'w1'", *key)
                tv_up = split(x["v'"], x["u'"], "v'u'", *key)
                b.edge(x["u"], x["D"])
                b.edge(x["u'"], x["C"])
                if chords:
                    b.clique([x["O"], x["w2"], x["u"]])
                    b.clique([x["O"], x["w2'"], x["u'"]])
                order += [
                    x["v"], tv_u, x["u"], tv_w1, x["w1"], tw, x["w2"], tw_d, tau, x["D"], tdo, x["O"],
                    tdc, toc, x["C"], tau2, tw2c, x["w2'"], tw1, x["w1'"], tv_w1p, x["u'"], tv_up, x["v'"],
                ]
                rooted += [x["C"], x["D"], x["O"], x["w1"], x["w1'"]]
                packing += [
                    ([x["C"], x["D"], x["O"]], 2),
                    ([x["w1"], x["w2"]], 1),
                    ([x["u"], x["v"]], 1),
                    ([x["w1'"], x["w2'"]], 1),
                    ([x["u'"], x["v'"]], 1),
                ]
            for sigma in itertools.product(STATES, repeat=t):
                key = (i, r, j, sigma)
                vs = b.add("Y", *key, "v")
                us = b.add("Y", *key, "u")
                links = []
                for q in range(t):
                    for state in STATES:
                        if state != sigma[q]:
                            links.append(split(vs, b["X", i, q, r, j, state], "link", *key, q, state))
                tm = split(vs, us, "match", *key)
                order += links + [vs, tm, us]
                rooted += [vs, us]
                packing.append(([us, vs], 1))
        w = term("clause", r, j)
        clause = f.clauses[j]
        for i, group in enumerate(parts):
            lits = [lit for lit in clause if abs(lit) - 1 in group]
            if not lits:
                continue
            for bits in itertools.product((False, True), repeat=len(group)):
                value = dict(zip(group, bits))
                if any(value[abs(lit) - 1] == (lit > 0) for lit in lits):
                    b.edge(w, b["Y", i, r, j, phi(bits, t0, t), "u"])
        order.append(w)

    g1, g2 = b.add("g"), b.add("g'")
    tg1, tg2 = term("g"), term("g'")
    b.edge(g1, tg1)
    b.edge(g2, tg2)
    for i in range(s):
        for q in range(t):
            gadgets = [(i, q, r, j) for r, j in cols]
            if not gadgets:
                continue
            b.edge(g1, b[("X", *gadgets[0], "v")])
            b.edge(g2, b[("X", *gadgets[-1], "v'")])
            for a, c in zip(gadgets, gadgets[1:]):
                b.edge(b[("X", *a, "v'")], b[("X", *c, "v")])
    order = [tg1, g1] + order + [g2, tg2]
    rooted += [g1, g2]

    root: list[int] = []

    def make(x: int):
        rho = b.add("R", *b.names[x])
        tr = term("root", *b.names[x])
        b.edge(rho, tr)
        root.append(rho)
        return [tr, rho], rho

    order = thread_path(order, rooted, make, b)
    packing.append((root + [g1, g2], len(root) + 2))
    k1, k2, k = st_budgets(n_prime, s, t, m)
    packing.append((b.terminals, len(b.terminals)))
    params = dict(d=d, t0=t0, s=s, t=t, n_prime=n_prime, k_terminals=k1, k_root=k2, subdividing_terminals=len(sub_terminals))
    return b, order, packing, k, params


def generate_st(f: CnfFormula, d: int | None = None, t0: int = 1) -> ReductionOutput:
    b, order, packing, k, params = _build(f, d, t0, chords=False)
    budget = sum(p for _, p in packing)
    bound = st_cutwidth_bound(params["n_prime"], params["t"], params["d"])
    return finish("st", f, b, order, budget, bound, packing, terminals=b.terminals, closed_form=k, **params)


def cds_cutwidth_bound(n_prime: int, t: int, d: int) -> int:
    # chords along decoding links, one matching chord and 17 chord or triangle edges inside one path gadget
    return st_cutwidth_bound(n_prime, t, d) + 2 * t * 3**t + 18


def generate_cds(f: CnfFormula, d: int | None = None, t0: int = 1) -> ReductionOutput:
    """Same vertex set as the Steiner tree instance with triangle-closing chords; terminals become ordinary vertices."""
    b, order, packing, k, params = _build(f, d, t0, chords=True)
    terminals = set(b.terminals)
    packing = [(c, p) for c, p in packing if not set(c) <= terminals]
    budget = sum(p for _, p in packing)
    bound = cds_cutwidth_bound(params["n_prime"], params["t"], params["d"])
    params["former_terminals"] = len(terminals)
    return finish("cds", f, b, order, budget, bound, packing, closed_form=k - params["k_terminals"], **params)


def _steiner_core(out: ReductionOutput, assignment: Sequence[bool]) -> set[int]:
    f = out.formula
    _check_assignment(f, assignment)
    t0, t = out.params["t0"], out.params["t"]
    parts = groups(f.n, t0)
    delta = [phi([assignment[v] for v in group], t0, t) for group in parts]
    chosen = set(out.named("R")) | {out.vertex("g"), out.vertex("g'")}
    for v, name in enumerate(out.names):
        if name[0] == "X":
            _, i, q, _, _, member = name
            if member in GADGET_STATE_SETS[delta[i][q]]:
                chosen.add(v)
        elif name[0] == "Y":
            _, i, _, _, sigma, side = name
            if (side == "u") == (sigma == delta[i]):
                chosen.add(v)
    return chosen


def witness_st(out: ReductionOutput, assignment: Sequence[bool]) -> set[int]:
    return _steiner_core(out, assignment) | set(out.terminals)


def witness_cds(out: ReductionOutput, assignment: Sequence[bool]) -> set[int]:
    return _steiner_core(out, assignment)
