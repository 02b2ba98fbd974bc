"""CNF formulas and DIMACS input."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class CnfFormula:
    n: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        for clause in self.clauses:
            if not clause:
                raise ValueError("empty clause")
            vars_ = [abs(x) for x in clause]
            if 0 in vars_ or max(vars_) > self.n:
                raise ValueError(f"literal out of range in clause {clause}")
            if len(set(vars_)) != len(vars_):
                raise ValueError(f"clause {clause} repeats a variable")

    @classmethod
    def of(cls, n: int, clauses: Iterable[Sequence[int]]) -> "CnfFormula":
        return cls(n, tuple(tuple(c) for c in clauses))

    @property
    def m(self) -> int:
        return len(self.clauses)

    @property
    def width(self) -> int:
        return max((len(c) for c in self.clauses), default=0)

    def satisfies(self, assignment: Sequence[bool]) -> bool:
        """``assignment[i]`` is the value of variable ``i + 1``."""
        return all(any(assignment[abs(x) - 1] == (x > 0) for x in c) for c in self.clauses)

    def nae_satisfies(self, assignment: Sequence[bool]) -> bool:
        for c in self.clauses:
            vals = {assignment[abs(x) - 1] == (x > 0) for x in c}
            if vals != {True, False}:
                return False
        return True

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.n} {self.m}"]
        lines += [" ".join(map(str, c)) + " 0" for c in self.clauses]
        return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> CnfFormula:
    n = m = None
    literals: list[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"bad problem line: {raw!r}")
            n, m = int(parts[2]), int(parts[3])
            continue
        if n is None:
            raise ValueError("clause before problem line")
        literals += [int(tok) for tok in line.split()]
    if n is None:
        raise ValueError("missing problem line")
    clauses, cur = [], []
    for lit in literals:
        if lit == 0:
            clauses.append(cur)
            cur = []
        else:
            cur.append(lit)
    if cur:
        clauses.append(cur)
    if m is not None and len(clauses) != m:
        raise ValueError(f"header announces {m} clauses, found {len(clauses)}")
    return CnfFormula.of(n, clauses)
