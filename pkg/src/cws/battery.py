"""Deterministic formula families used by the acceptance suite and the benchmark."""

from __future__ import annotations

import random

from .cnf import CnfFormula

# Small formulas whose answers are known; they cover the unsatisfiable side.
FIXED = (
    CnfFormula.of(1, [(1,), (-1,)]),
    CnfFormula.of(2, [(2,), (-2,)]),
    CnfFormula.of(3, [(-1,), (1,)]),
    CnfFormula.of(2, [(1, 2), (1, -2)]),  # satisfiable, not NAE-satisfiable
    CnfFormula.of(3, [(1, -3), (-1, 3)]),
    CnfFormula.of(3, [(1, 2, 3), (-1, -2, -3)]),
)


def random_formula(rng: random.Random, n: int, m: int, min_width: int = 1, max_width: int = 3) -> CnfFormula:
    """Clauses of random width in ``[min_width, max_width]`` over distinct variables."""
    clauses = []
    for _ in range(m):
        w = rng.randint(min(min_width, n), min(max_width, n))
        vars_ = rng.sample(range(1, n + 1), w)
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vars_))
    return CnfFormula.of(n, clauses)


def formula_battery(count: int = 60, max_n: int = 3, max_m: int = 2, seed: int = 0) -> list[CnfFormula]:
    """The fixed formulas followed by random ones with clauses of width at least two."""
    rng = random.Random(f"battery/{seed}")
    out = [f for f in FIXED if f.n <= max_n and f.m <= max_m][:count]
    while len(out) < count:
        n = rng.randint(2, max_n) if max_n >= 2 else 1
        m = rng.randint(1, max_m)
        out.append(random_formula(rng, n, m, min_width=2))
    return out
