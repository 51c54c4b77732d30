"""
Tests for fourier_algebra.math.linalg

ExactMatrix: square, immutable, entries are Cyclotomic.
matmul/determinant: exact over the common cyclotomic field.
as_scaled_permutation: A = c·Π_σ with a single common scale c.
find_conjugate_column_pairing: σ(j) is the column equal to conj(column j).
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fourier_algebra.exceptions import AmbiguousPairing, MatrixShapeError, RankMismatch
from fourier_algebra.math.cyclo import ONE, E, sqrt_nonneg_rational
from fourier_algebra.math.linalg import (
    ExactMatrix,
    as_scaled_permutation,
    conj_entrywise,
    conj_transpose,
    determinant,
    diag,
    diagonal,
    find_conjugate_column_pairing,
    identity,
    is_symmetric,
    is_unitary,
    kron,
    matmul,
    transpose,
)


def z3_table() -> ExactMatrix:
    return ExactMatrix.from_rows([[1, 1, 1], [1, E(3), E(3, 2)], [1, E(3, 2), E(3)]])


small_entries = st.one_of(
    st.integers(-3, 3),
    st.fractions(min_value=-2, max_value=2, max_denominator=3),
    st.builds(E, st.sampled_from([3, 4, 8]), st.integers(0, 7)),
)


@st.composite
def exact_matrices(draw, rank):
    return ExactMatrix.from_rows(
        [[draw(small_entries) for _ in range(rank)] for _ in range(rank)]
    )


@st.composite
def monomial_unitaries(draw):
    """Permutation matrices with root-of-unity entries."""
    rank = draw(st.integers(1, 4))
    sigma = draw(st.permutations(range(rank)))
    orders = st.sampled_from([1, 3, 4, 5, 8])
    phases = [E(draw(orders), draw(st.integers(0, 7))) for _ in range(rank)]
    return ExactMatrix.from_rows(
        [[phases[i] if j == sigma[i] else 0 for j in range(rank)] for i in range(rank)]
    )


# =============================================================================
# ExactMatrix
# =============================================================================


def test_non_square_entries_rejected():
    with pytest.raises(MatrixShapeError):
        ExactMatrix(2, ((ONE,), (ONE,)))
    with pytest.raises(MatrixShapeError):
        ExactMatrix.from_rows([])


def test_rows_columns_and_indexing():
    m = ExactMatrix.from_rows([[1, 2], [3, 4]])
    assert m[1, 0] == 3
    assert m.row(0) == (ONE, ONE + ONE)
    assert m.column(1) == m.row(0)[1:] + m.row(1)[1:]
    assert transpose(m).row(0) == m.column(0)


def test_str_prints_one_row_per_line():
    m = ExactMatrix.from_rows([[1, E(4)], [Fraction(1, 2), 0]])
    assert str(m) == "1, E(4)\n1/2, 0"


# =============================================================================
# PRODUCTS
# =============================================================================


def test_matmul_rank_mismatch():
    with pytest.raises(RankMismatch):
        matmul(identity(2), identity(3))


def test_matmul_operator_and_identity():
    m = z3_table()
    assert m @ identity(3) == m
    assert matmul(identity(3), m) == m


def test_kron_of_sign_matrices():
    h = ExactMatrix.from_rows([[1, 1], [1, -1]])
    k = kron(h, h)
    assert k.rank == 4
    assert k.row(3) == tuple(ONE * x for x in (1, -1, -1, 1))


def test_z3_table_times_its_conjugate_is_three_identity():
    verdict = as_scaled_permutation(matmul(z3_table(), conj_entrywise(z3_table())))
    assert verdict.is_permutation
    assert verdict.permutation == (0, 1, 2)
    assert verdict.scale == 3


def test_scaled_swap_and_non_permutations():
    swap = as_scaled_permutation(ExactMatrix.from_rows([[0, 2], [2, 0]]))
    assert (swap.permutation, swap.scale) == ((1, 0), 2)
    assert not as_scaled_permutation(ExactMatrix.from_rows([[1, 1], [0, 1]])).is_permutation
    assert not as_scaled_permutation(diag([1, 2])).is_permutation
    assert not as_scaled_permutation(ExactMatrix.from_rows([[1, 0], [1, 0]])).is_permutation


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 4).flatmap(lambda r: st.tuples(*[exact_matrices(r)] * 3)))
def test_matmul_is_associative(matrices):
    a, b, c = matrices
    assert matmul(matmul(a, b), c) == matmul(a, matmul(b, c))


# =============================================================================
# PREDICATES
# =============================================================================


def test_normalized_table_is_unitary_and_symmetric():
    S = z3_table().scale(sqrt_nonneg_rational(3).inv())
    assert is_unitary(S)
    assert is_symmetric(S)
    assert matmul(S, conj_transpose(S)) == identity(3)
    assert not is_unitary(z3_table())


def test_diagonal_helpers():
    d = diag([1, E(4)])
    assert diagonal(d) == (ONE, E(4))
    assert d == ExactMatrix.from_rows([[1, 0], [0, E(4)]])


# =============================================================================
# DETERMINANT
# =============================================================================


def test_determinant_of_rational_matrices():
    assert determinant(ExactMatrix.from_rows([[1, 2], [3, 4]])) == -2
    # zero leading pivot forces a row swap
    assert determinant(ExactMatrix.from_rows([[0, 1, 0], [1, 0, 0], [0, 0, 1]])) == -1
    assert determinant(ExactMatrix.from_rows([[1, 2], [2, 4]])) == 0


def test_z3_determinant_is_not_a_rational_integer():
    det = determinant(z3_table())
    assert not det.is_rational_integer()
    assert det.abs2() == 27


@pytest.mark.parametrize(
    "matrix",
    [
        z3_table().scale(sqrt_nonneg_rational(3).inv()),
        ExactMatrix.from_rows([[1, 1], [1, -1]]).scale(sqrt_nonneg_rational(2).inv()),
        kron(z3_table(), ExactMatrix.from_rows([[1, 1], [1, -1]])).scale(
            sqrt_nonneg_rational(6).inv()
        ),
    ],
    ids=["z3", "z2", "z6"],
)
def test_unitary_determinant_has_unit_modulus(matrix):
    assert is_unitary(matrix)
    assert determinant(matrix).abs2() == 1


@settings(max_examples=50, deadline=None)
@given(monomial_unitaries())
def test_monomial_unitary_determinant_has_unit_modulus(matrix):
    assert is_unitary(matrix)
    assert determinant(matrix).abs2() == 1


# =============================================================================
# CONJUGATE COLUMN PAIRING
# =============================================================================


def test_pairing_swaps_conjugate_columns():
    assert find_conjugate_column_pairing(z3_table()) == (0, 2, 1)
    assert find_conjugate_column_pairing(ExactMatrix.from_rows([[1, 1], [1, -1]])) == (0, 1)


def test_pairing_missing_partner_returns_none():
    assert find_conjugate_column_pairing(ExactMatrix.from_rows([[1, 1], [1, E(3)]])) is None


def test_pairing_rejects_duplicate_columns():
    with pytest.raises(AmbiguousPairing):
        find_conjugate_column_pairing(ExactMatrix.from_rows([[1, 1], [1, 1]]))
