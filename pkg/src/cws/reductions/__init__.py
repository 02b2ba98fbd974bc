"""Instance generators turning (NAE-)SAT formulas into small-cutwidth graph problems."""

from __future__ import annotations

from typing import Sequence

from ..cnf import CnfFormula
from .coct import coct_budget, coct_reference_budget, generate_coct, witness_coct
from .core import Builder, ReductionOutput, StructureReport, validate_structure
from .sat import generate_cvc, generate_fvs, generate_oct, witness_cvc, witness_fvs, witness_oct
from .steiner import generate_cds, generate_st, phi, st_budgets, st_parameters, witness_cds, witness_st

GENERATORS = {
    "cvc": generate_cvc,
    "fvs": generate_fvs,
    "oct": generate_oct,
    "st": generate_st,
    "cds": generate_cds,
    "coct": generate_coct,
}

# Which satisfiability notion each generator encodes.
SAT_MODE = {"cvc": "sat", "fvs": "sat", "oct": "nae", "st": "sat", "cds": "sat", "coct": "sat"}

_WITNESS = {
    "cvc": witness_cvc,
    "fvs": witness_fvs,
    "oct": witness_oct,
    "st": witness_st,
    "cds": witness_cds,
    "coct": witness_coct,
}


def generate(problem: str, f: CnfFormula, d: int | None = None, t0: int = 1) -> ReductionOutput:
    if problem not in GENERATORS:
        raise ValueError(f"unknown problem {problem!r}")
    if problem in ("st", "cds"):
        return GENERATORS[problem](f, d, t0)
    return GENERATORS[problem](f, d)


def build_witness(out: ReductionOutput, assignment: Sequence[bool]) -> frozenset[int]:
    """Solution prescribed by the forward direction of the construction for a satisfying assignment."""
    return frozenset(_WITNESS[out.problem](out, assignment))


__all__ = [
    "Builder", "GENERATORS", "ReductionOutput", "SAT_MODE", "StructureReport", "build_witness",
    "coct_budget", "coct_reference_budget", "generate", "generate_cds", "generate_coct", "generate_cvc",
    "generate_fvs", "generate_oct", "generate_st", "phi", "st_budgets", "st_parameters", "validate_structure",
]
