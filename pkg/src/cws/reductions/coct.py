"""Generator for connected odd cycle transversal.

Variables are paired; each pair drives one path of four-state gadgets.  The
root path gets one vertex per root-connected vertex, which includes the eight
decoding vertices of every decoding gadget, so the budget counts them too.
"""

from __future__ import annotations

import itertools
from typing import Sequence

from ..cnf import CnfFormula
from .core import Builder, ReductionOutput, finish, thread_path
from .sat import _check_assignment, _width

STATES = ("B", "W", "C", "D")

GADGET_STATE_SETS = {
    "C": ("W", "B", "D", "v", "v'", "w1", "w2'"),
    "D": ("W", "B", "C", "v", "v'", "w1'", "w2"),
    "W": ("B", "C", "D", "u", "u'", "w1", "w1'"),
    "B": ("W", "C", "D", "u", "u'", "w1", "w1'"),
}

# Edges induced by one path gadget and its decoding gadget, clause edges excluded.
BLOCK_EDGES = 112


def phi(bits: Sequence[bool]) -> str:
    return STATES[2 * bits[0] + bits[1]]


def coct_budget(n_prime: int, m: int) -> int:
    """Packing sum when every root-connected vertex, decoding vertices included, has a root-path vertex."""
    gadgets = n_prime * (2 * n_prime + 1) * m
    return 7 * gadgets + 4 * gadgets + 2 + (2 + 14 * gadgets)


def coct_reference_budget(n_prime: int, m: int) -> int:
    """Reference closed form, whose root-path term counts six root-connected vertices per gadget."""
    gadgets = n_prime * (2 * n_prime + 1) * m
    return 7 * gadgets + 4 * gadgets + 2 + (2 + 6 * gadgets)


def coct_cutwidth_bound(n_prime: int) -> int:
    # one block, two clause-cycle edges, root and color paths with their attachments, guard triangles
    return n_prime + BLOCK_EDGES + 2 + 5 + 2


def generate_coct(f: CnfFormula, d: int | None = None) -> ReductionOutput:
    d = _width(f, d)
    n_vars = f.n + f.n % 2
    n_prime, m = n_vars // 2, f.m
    b = Builder()
    packing = []
    rooted: list[int] = []
    black: list[int] = []
    white: list[int] = []

    def tri(u: int, v: int, *name) -> int:
        x = b.add("t", *name)
        b.clique([u, v, x])
        return x

    order: list[int] = []
    cols = [(r, j) for r in range(2 * n_prime + 1) for j in range(m)]
    for r, j in cols:
        cycle: list[int] = []
        for i in range(n_prime):
            key = (i, r, j)
            x = {nm: b.add("X", *key, nm) for nm in ("v", "u", "w1", "w2", "B", "W", "C", "D", "w2'", "w1'", "u'", "v'")}
            k_tri = {}
            for a, c in itertools.combinations(STATES, 2):
                k_tri[a, c] = tri(x[a], x[c], *key, a + c)
            t_vu = tri(x["v"], x["u"], *key, "vu")
            t_vw1 = tri(x["v"], x["w1"], *key, "vw1")
            t_w = tri(x["w1"], x["w2"], *key, "w1w2")
            t_w2d = tri(x["w2"], x["D"], *key, "w2D")
            t_vup = tri(x["v'"], x["u'"], *key, "v'u'")
            t_vw1p = tri(x["v'"], x["w1'"], *key, "v'w1'")
            t_wp = tri(x["w1'"], x["w2'"], *key, "w1'w2'")
            t_w2c = tri(x["w2'"], x["C"], *key, "w2'C")
            for a, c in (("u", "D"), ("u", "W"), ("u", "B"), ("w2", "W"), ("w2", "B"), ("u", "w2"),
                         ("u'", "C"), ("u'", "W"), ("u'", "B"), ("w2'", "W"), ("w2'", "B"), ("u'", "w2'")):
                b.edge(x[a], x[c])
            s_vw = b.subdivide(x["v"], x["W"], "s", *key, "vW")
            s_vb = b.subdivide(x["v"], x["B"], "s", *key, "vB")
            s_pw1 = b.add("s", *key, "v'W", 1)
            s_pw2 = b.add("s", *key, "v'W", 2)
            s_pb1 = b.add("s", *key, "v'B", 1)
            s_pb2 = b.add("s", *key, "v'B", 2)
            b.path([x["v'"], s_pw1, s_pw2, x["W"]])
            b.path([x["v'"], s_pb1, s_pb2, x["B"]])
            order += [
                x["v"], t_vu, x["u"], t_vw1, x["w1"], t_w, x["w2"], s_vw, s_vb, t_w2d, x["D"],
                k_tri["B", "D"], x["B"], k_tri["B", "W"], k_tri["W", "D"], x["W"],
                k_tri["B", "C"], k_tri["W", "C"], k_tri["C", "D"], x["C"], t_w2c, x["w2'"],
                t_wp, x["w1'"], t_vw1p, s_pw2, s_pb2, s_pw1, s_pb1, x["u'"], t_vup, x["v'"],
            ]
            rooted += [x["B"], x["W"], x["C"], x["D"], x["w1"], x["w1'"]]
            black.append(x["B"])
            white.append(x["W"])
            packing += [
                ([x["v"], x["u"], t_vu], 1),
                ([x["w1"], x["w2"], t_w], 1),
                ([x["v'"], x["u'"], t_vup], 1),
                ([x["w1'"], x["w2'"], t_wp], 1),
                ([x[a] for a in STATES] + list(k_tri.values()), 3),
            ]

            group = [2 * i, 2 * i + 1]
            lits = [lit for lit in f.clauses[j] if abs(lit) - 1 in group]
            satisfying = set()
            for bits in itertools.product((False, True), repeat=2):
                value = dict(zip(group, bits))
                if any(value[abs(lit) - 1] == (lit > 0) for lit in lits):
                    satisfying.add(phi(bits))
            for state in STATES:
                ykey = (i, r, j, state)
                vy = b.add("Y", *ykey, "v")
                uy = b.add("Y", *ykey, "u")
                links = [tri(vy, x[other], *ykey, "v" + other) for other in STATES if other != state]
                t_uv = tri(uy, vy, *ykey, "uv")
                order += links + [vy, t_uv, uy]
                rooted += [vy, uy]
                packing.append(([uy, vy, t_uv], 1))
                if state in satisfying:
                    cycle.append(uy)
        if len(cycle) % 2 == 0:
            w = b.add("Z", r, j)
            cycle.append(w)
            order.append(w)
        if len(cycle) < 3:
            raise ValueError(f"clause {j + 1} yields a clause cycle of length {len(cycle)}")
        b.path(cycle + [cycle[0]])

    g1, g2 = b.add("g"), b.add("g'")
    tg1 = [b.add("t", "g", a) for a in (1, 2)]
    tg2 = [b.add("t", "g'", a) for a in (1, 2)]
    b.clique([g1] + tg1)
    b.clique([g2] + tg2)
    packing += [([g1] + tg1, 1), ([g2] + tg2, 1)]
    for i in range(n_prime):
        gadgets = [(i, r, j) for r, j in cols]
        if not gadgets:
            continue
        b.edge(g1, b[("X", *gadgets[0], "v")])
        b.edge(g2, b[("X", *gadgets[-1], "v'")])
        for a, c in zip(gadgets, gadgets[1:]):
            b.edge(b[("X", *a, "v'")], b[("X", *c, "v")])
    order = [g1] + tg1 + order + [g2] + tg2
    rooted += [g1, g2]

    root: list[int] = []

    def make_root(x: int):
        rho = b.add("R", *b.names[x])
        extra = [b.add("t", "R", a, *b.names[x]) for a in (1, 2)]
        b.clique([rho] + extra)
        root.append(rho)
        packing.append(([rho] + extra, 1))
        return extra + [rho], rho

    order = thread_path(order, rooted, make_root, b)

    blackset = set(black)
    colored = blackset | set(white)
    color_path: list[int] = []

    def make_color(x: int):
        cp = b.add("P", *b.names[x])
        if color_path:
            sep = b.add("P", "sep", len(color_path))
            b.path([color_path[-1], sep, cp])
            block = [sep, cp]
        else:
            block = [cp]
        color_path.append(cp)
        if x in blackset:
            w = b.add("b", *b.names[x])
            b.path([cp, w, x])
            block.append(w)
        else:
            b.edge(cp, x)
        return block, cp

    order = _thread_color(order, colored, make_color)
    budget = sum(p for _, p in packing)
    return finish(
        "coct", f, b, order, budget, coct_cutwidth_bound(n_prime), packing,
        closed_form=coct_budget(n_prime, m), reference_budget=coct_reference_budget(n_prime, m),
        d=d, n_prime=n_prime, padded=f.n % 2 == 1, root_length=len(root), color_length=2 * len(color_path) - 1 if color_path else 0,
    )


def _thread_color(order: list[int], colored: set[int], make) -> list[int]:
    """Insert the color path; ``make`` adds the path edges itself."""
    out: list[int] = []
    for x in order:
        if x in colored:
            block, _ = make(x)
            out.extend(block)
        out.append(x)
    return out


def witness_coct(out: ReductionOutput, assignment: Sequence[bool]) -> set[int]:
    f = out.formula
    _check_assignment(f, assignment)
    values = list(assignment) + [False] * (2 * out.params["n_prime"] - f.n)
    state = [phi(values[2 * i: 2 * i + 2]) for i in range(out.params["n_prime"])]
    chosen = set(out.named("R")) | {out.vertex("g"), out.vertex("g'")}
    for v, name in enumerate(out.names):
        if name[0] == "X":
            _, i, _, _, member = name
            if member in GADGET_STATE_SETS[state[i]]:
                chosen.add(v)
        elif name[0] == "Y":
            _, i, _, _, x, side = name
            if (side == "u") == (x == state[i]):
                chosen.add(v)
    return chosen
