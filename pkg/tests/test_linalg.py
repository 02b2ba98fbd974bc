from fractions import Fraction

import pytest

from cws.linalg import CDS_MATRIX, CVC_MATRIX, Field, as_matrix, basis_representation, coloring_matrix, is_prime, rank_over


def test_field_requires_prime():
    with pytest.raises(ValueError):
        Field(4)
    assert Field(5).inv(2) == 3
    assert Field().inv(3) == Fraction(1, 3)


def test_as_matrix_validation():
    with pytest.raises(ValueError):
        as_matrix([[0, 1], [0, 0]])
    with pytest.raises(ValueError):
        as_matrix([[0, 2], [2, 0]])
    with pytest.raises(ValueError):
        as_matrix([[0, 1]])


def test_rank_examples():
    assert rank_over(CVC_MATRIX, 2) == 2
    assert rank_over(CDS_MATRIX, 2) == 3
    assert rank_over(coloring_matrix(3), 2) == 2
    assert rank_over(coloring_matrix(3), 3) == 3


@pytest.mark.parametrize("q", range(2, 7))
@pytest.mark.parametrize("p", [2, 3, 5])
def test_coloring_matrix_rank(q, p):
    assert rank_over(coloring_matrix(q), p) == (q - 1 if (q - 1) % p == 0 else q)


def test_rank_over_rationals():
    assert rank_over(CVC_MATRIX) == 3
    assert rank_over(coloring_matrix(4)) == 4


def test_identity_representation():
    rep = basis_representation([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 3)
    assert rep.rank == 3 and rep.reduced == () and rep.coefficients == {}


def test_cvc_representation():
    rep = basis_representation(CVC_MATRIX, 2)
    assert rep.basis == (0, 1) and rep.reduced == (2,)
    assert rep.coefficients[2] == {0: 1, 1: 1}


def test_all_ones_representation():
    rep = basis_representation([[1, 1], [1, 1]], 2)
    assert rep.rank == 1 and rep.coefficients == {1: {0: 1}}


@pytest.mark.parametrize("matrix,p", [(CVC_MATRIX, 2), (CDS_MATRIX, 2), (coloring_matrix(4), 3), (coloring_matrix(3), 2), (coloring_matrix(5), 2)])
def test_representation_identity(matrix, p):
    rep = basis_representation(matrix, p)
    assert sorted(rep.permutation) == list(range(len(matrix)))
    for b in rep.reduced:
        for col in range(len(matrix)):
            total = sum(c * matrix[j][col] for j, c in rep.coefficients[b].items())
            assert total % p == matrix[b][col] % p


def test_is_prime():
    assert [x for x in range(20) if is_prime(x)] == [2, 3, 5, 7, 11, 13, 17, 19]
