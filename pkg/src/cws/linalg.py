"""Exact linear algebra over a prime field or the rationals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Matrix = tuple[tuple[int, ...], ...]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


@dataclass(frozen=True)
class Field:
    """``F_p`` when ``p`` is set, the rationals otherwise."""

    p: int | None = None

    def __post_init__(self) -> None:
        if self.p is not None and not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def coerce(self, x):
        return x % self.p if self.p else Fraction(x)

    def inv(self, x):
        if self.p:
            return pow(x, -1, self.p)
        return 1 / Fraction(x)

    def sub(self, a, b):
        return self.coerce(a - b)

    def mul(self, a, b):
        return self.coerce(a * b)


def as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    m = tuple(tuple(int(x) for x in r) for r in rows)
    size = len(m)
    if any(len(r) != size for r in m):
        raise ValueError("consistency matrix must be square")
    for i in range(size):
        for j in range(size):
            if m[i][j] not in (0, 1):
                raise ValueError("consistency matrix entries must be 0/1")
            if m[i][j] != m[j][i]:
                raise ValueError("consistency matrix must be symmetric")
    return m


@dataclass(frozen=True)
class BasisRepresentation:
    """A row basis of ``M`` and the coefficients expressing every other row in it.

    ``coefficients[b][j]`` is ``d_{b,j}``: row ``b`` equals the sum over basis
    colors ``j`` of ``d_{b,j}`` times row ``j``.
    """

    rank: int
    basis: tuple[int, ...]
    reduced: tuple[int, ...]
    coefficients: dict[int, dict[int, object]]

    @property
    def permutation(self) -> tuple[int, ...]:
        return self.basis + self.reduced


def basis_representation(matrix: Sequence[Sequence[int]], p: int | None = None) -> BasisRepresentation:
    """Greedy leftmost row basis; ties go to the smaller color index."""
    field = Field(p)
    rows = [[field.coerce(x) for x in r] for r in matrix]
    size = len(rows)
    echelon: list[tuple[int, list, dict[int, object]]] = []
    basis: list[int] = []
    coeffs: dict[int, dict[int, object]] = {}
    for r, row in enumerate(rows):
        residual = list(row)
        combo: dict[int, object] = {}
        for pivot, vec, ecombo in echelon:
            if residual[pivot] == 0:
                continue
            f = field.mul(residual[pivot], field.inv(vec[pivot]))
            residual = [field.sub(a, field.mul(f, b)) for a, b in zip(residual, vec)]
            for j, c in ecombo.items():
                combo[j] = field.coerce(combo.get(j, 0) + f * c)
        if any(x != 0 for x in residual):
            pivot = next(c for c in range(size) if residual[c] != 0)
            own = {j: field.coerce(-c) for j, c in combo.items()}
            own[r] = field.coerce(1)
            echelon.append((pivot, residual, own))
            basis.append(r)
        else:
            coeffs[r] = {j: c for j, c in combo.items() if c != 0}
    reduced = tuple(r for r in range(size) if r not in basis)
    return BasisRepresentation(len(basis), tuple(basis), reduced, coeffs)


def rank_over(matrix: Sequence[Sequence[int]], p: int | None = None) -> int:
    return basis_representation(matrix, p).rank


CVC_MATRIX: Matrix = ((0, 1, 1), (1, 1, 0), (1, 0, 1))
CDS_MATRIX: Matrix = ((1, 0, 1, 0), (0, 1, 1, 0), (1, 1, 1, 1), (0, 0, 1, 1))


def coloring_matrix(q: int) -> Matrix:
    """Consistency matrix of proper ``q``-colorings."""
    return tuple(tuple(int(i != j) for j in range(q)) for i in range(q))
