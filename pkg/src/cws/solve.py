"""One entry point for the four decision procedures, with their observed table sizes."""

from __future__ import annotations

from dataclasses import dataclass

from .cutcount import DEFAULT_REPEATS, solve_cds, solve_cvc
from .graph import Arrangement, Graph, cutwidth_of
from .subdivision import DpStats, build_pipeline, solve_fvs, solve_oct

SOLVERS = ("cvc", "cds", "oct", "fvs")
RANDOMIZED = ("cvc", "cds", "fvs")


@dataclass(frozen=True)
class Outcome:
    problem: str
    answer: bool
    repeats_run: int
    max_support: int
    ctw: int  # cutwidth of the given arrangement
    pw: int  # width of the derived decomposition (subdivision-based solvers), else 0

    @property
    def support_bound(self) -> int:
        return support_bound(self.problem, self.ctw, self.pw)


def support_bound(problem: str, ctw: int, pw: int) -> int:
    """Largest table the solver may hold: its base raised to the width, times a small constant."""
    if problem == "cvc":
        return 3 * 2**ctw
    if problem == "cds":
        return 4 * 3**ctw
    if problem == "oct":
        return 3 * 2**pw
    if problem == "fvs":
        return 9 * 2**pw
    raise ValueError(f"unknown problem {problem!r}")


def solve(problem: str, g: Graph, order: Arrangement, k: int, seed: int = 0, repeats: int = DEFAULT_REPEATS) -> Outcome:
    if problem not in SOLVERS:
        raise ValueError(f"unknown problem {problem!r}; expected one of {', '.join(SOLVERS)}")
    if repeats < 1:
        raise ValueError("repeats must be at least 1")
    if k < 0:
        raise ValueError("budget must be nonnegative")
    ctw = cutwidth_of(g, order)
    if problem == "oct":
        stats = DpStats()
        answer = solve_oct(g, order, k, stats=stats)
        pw = build_pipeline(g, order).pathwidth
        return Outcome(problem, answer, 1, stats.max_support, ctw, pw)
    if problem == "fvs":
        report = solve_fvs(g, order, k, seed=seed, repeats=repeats)
        pw = build_pipeline(g, order).pathwidth
    elif problem == "cvc":
        report = solve_cvc(g, order, k, seed=seed, repeats=repeats)
        pw = 0
    else:
        report = solve_cds(g, order, k, seed=seed, repeats=repeats)
        pw = 0
    return Outcome(problem, report.answer, report.repeats_run, report.max_support, ctw, pw)
