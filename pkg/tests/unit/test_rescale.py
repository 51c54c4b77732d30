"""
Tests for fourier_algebra.rescale

S → s → P and back, preserving row/column order.
from_S needs S_i0 > 0; from_P needs column 0 all ones and positive rational
degrees and norms.
"""

from fractions import Fraction

import pytest

from fourier_algebra.exceptions import (
    IrrationalDegree,
    IrrationalNorm,
    NonpositiveDegree,
    NonpositiveFirstColumn,
    NotClosedUnderConjugation,
    RescaleError,
)
from fourier_algebra.genlib import (
    AbelianGroupSpec,
    abelian_character_table,
    abelian_fourier_matrix,
    rank2_family,
)
from fourier_algebra.math.cyclo import ONE, SQRT2, E, sqrt_nonneg_rational
from fourier_algebra.math.linalg import ExactMatrix
from fourier_algebra.rescale import from_P, from_S, from_s, roundtrip_check

Z3 = AbelianGroupSpec((3,))


# =============================================================================
# S → s → P
# =============================================================================


def test_z3_fourier_matrix_rescales_to_character_table():
    triple = from_S(abelian_fourier_matrix(Z3))

    assert triple.P == abelian_character_table(Z3)
    assert triple.s == triple.P
    assert triple.degrees == (ONE, ONE, ONE)
    assert triple.norms == (3, 3, 3)
    assert triple.order == 3
    assert triple.involution == (0, 2, 1)
    assert triple.rank == 3


def test_nonpositive_first_column_names_row():
    S = ExactMatrix.from_rows([[1, 1], [-1, 1]])
    with pytest.raises(NonpositiveFirstColumn) as info:
        from_S(S)
    assert info.value.row == 1


def test_complex_first_column_rejected():
    with pytest.raises(NonpositiveFirstColumn):
        from_S(ExactMatrix.from_rows([[E(4)]]))


def test_columns_not_closed_under_conjugation():
    with pytest.raises(NotClosedUnderConjugation):
        from_S(ExactMatrix.from_rows([[1, E(3)], [1, 1]]))


# =============================================================================
# P → s → S
# =============================================================================


def test_rank2_family_inverse_rescaling():
    triple = from_P(rank2_family(4))
    inv_sqrt5 = sqrt_nonneg_rational(5).inv()

    assert triple.S == ExactMatrix.from_rows([[1, 2], [2, -1]]).scale(inv_sqrt5)
    assert triple.s == ExactMatrix.from_rows([[1, 2], [1, Fraction(-1, 2)]])
    assert triple.degrees == (1, 4)
    assert triple.norms == (5, Fraction(5, 4))
    assert triple.order == 5


def test_column_zero_must_be_ones():
    with pytest.raises(RescaleError, match="column 0"):
        from_P(ExactMatrix.from_rows([[1, 1], [2, -1]]))


def test_irrational_degree():
    with pytest.raises(IrrationalDegree) as info:
        from_P(ExactMatrix.from_rows([[1, SQRT2], [1, -1]]))
    assert info.value.column == 1


def test_nonpositive_degree():
    with pytest.raises(NonpositiveDegree) as info:
        from_P(ExactMatrix.from_rows([[1, -2], [1, 1]]))
    assert info.value.column == 1


def test_irrational_norm():
    with pytest.raises(IrrationalNorm) as info:
        from_P(ExactMatrix.from_rows([[1, 1], [1, ONE + E(5)]]))
    assert info.value.row == 1


# =============================================================================
# ROUND TRIPS
# =============================================================================


@pytest.mark.parametrize("factors", [(2,), (3,), (2, 2), (4,), (2, 3), (5,)])
def test_roundtrip_is_identity(factors):
    assert roundtrip_check(abelian_fourier_matrix(AbelianGroupSpec(factors)))


def test_rank2_family_roundtrip():
    assert roundtrip_check(from_P(rank2_family(Fraction(3, 2))).S)


def test_from_s_matches_from_S():
    S = abelian_fourier_matrix(AbelianGroupSpec((2, 2)))
    triple = from_S(S)
    assert from_s(triple.s).S == S
