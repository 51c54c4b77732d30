"""
Tests for fourier_algebra.fusion

verify_fourier / verify_modular_datum / verify_calgebra return an AxiomReport
whose verdicts carry the first witness in row-major order; they never raise
on a failed axiom. build_calgebra raises AxiomFailure carrying the report.
"""

from dataclasses import FrozenInstanceError
from fractions import Fraction

import pytest

from fourier_algebra.constants import Axioms as A
from fourier_algebra.exceptions import AxiomFailure
from fourier_algebra.fusion import (
    CAlgebra,
    build_calgebra,
    calgebra_from_lambda,
    calgebra_of,
    rank2_calgebra,
    structure_constants,
    verify_calgebra,
    verify_fourier,
    verify_modular_datum,
)
from fourier_algebra.genlib import AbelianGroupSpec, abelian_fourier_matrix, rank2_family
from fourier_algebra.math.cyclo import ONE, ZERO, E
from fourier_algebra.math.linalg import ExactMatrix, diag
from fourier_algebra.rescale import from_P, from_S
from fourier_algebra.schemas import ConstantsModel

Z2_S = abelian_fourier_matrix(AbelianGroupSpec((2,)))


def _lambda_table(rank: int, products: dict[tuple[int, int], int]) -> tuple:
    """b_i b_j = b_products[(i, j)], with b_0 the identity."""
    lam = [[[ZERO] * rank for _ in range(rank)] for _ in range(rank)]
    for i in range(rank):
        lam[0][i][i] = ONE
        lam[i][0][i] = ONE
    for (i, j), k in products.items():
        lam[i][j][k] = ONE
    return tuple(tuple(tuple(row) for row in plane) for plane in lam)


# =============================================================================
# FOURIER MATRICES
# =============================================================================


@pytest.mark.parametrize("factors", [(2,), (3,), (2, 2), (4,)])
def test_abelian_fourier_matrices_pass(factors):
    report = verify_fourier(abelian_fourier_matrix(AbelianGroupSpec(factors)))
    assert report.passed
    assert [v.name for v in report.verdicts] == [
        A.UNITARY,
        A.SYMMETRIC,
        A.FIRST_COLUMN_POSITIVE,
        A.INTEGRAL_N,
    ]


def test_rank2_family_is_unitary_but_not_integral():
    report = verify_fourier(from_P(rank2_family(4)).S)

    assert report[A.UNITARY].passed
    assert report[A.SYMMETRIC].passed
    assert not report[A.INTEGRAL_N].passed
    assert report[A.INTEGRAL_N].witness == (1, 1, 1)
    assert report[A.INTEGRAL_N].detail == "N(1, 1, 1) = 3/2"
    assert [v.name for v in report.failures()] == [A.INTEGRAL_N]


def test_zero_first_column_leaves_n_undefined():
    report = verify_fourier(ExactMatrix.from_rows([[0, 1], [1, 0]]), strict_nonnegative=True)

    assert report[A.FIRST_COLUMN_POSITIVE].witness == (0,)
    assert report[A.INTEGRAL_N].witness == (0,)
    assert report[A.INTEGRAL_N].detail.startswith("N undefined")
    assert not report[A.NONNEGATIVE_N].passed


def test_strict_flag_adds_nonnegative_verdict():
    report = verify_fourier(Z2_S, strict_nonnegative=True)
    assert report[A.NONNEGATIVE_N].passed
    with pytest.raises(KeyError):
        verify_fourier(Z2_S)[A.NONNEGATIVE_N]


def test_non_unitary_witness():
    report = verify_fourier(ExactMatrix.from_rows([[1, 1], [1, -1]]))
    assert report[A.UNITARY].witness == (0, 0)


def test_report_to_dict():
    payload = verify_fourier(Z2_S).to_dict()
    assert payload["passed"] is True
    assert payload["verdicts"][0] == {
        "name": A.UNITARY,
        "passed": True,
        "witness": None,
        "detail": "",
    }
    assert "T_order" not in payload


# =============================================================================
# MODULAR DATA
# =============================================================================


def test_semion_with_normalized_t_is_modular():
    T = diag([E(24, 23), E(24, 5)])
    report = verify_modular_datum(Z2_S, T)

    assert report.passed
    assert report.t_order == 24
    assert report[A.T_FINITE_ORDER].detail == "order 24"
    assert report.to_dict()["T_order"] == 24


def test_unnormalized_t_breaks_the_relation():
    report = verify_modular_datum(Z2_S, diag([1, E(4)]))

    assert report[A.T_DIAGONAL].passed
    assert report[A.T_FINITE_ORDER].passed
    assert not report[A.MODULAR_RELATION].passed
    assert report[A.MODULAR_RELATION].witness == (0, 0)


def test_non_diagonal_t():
    report = verify_modular_datum(Z2_S, ExactMatrix.from_rows([[1, 1], [0, 1]]))
    assert report[A.T_DIAGONAL].witness == (0, 1)
    assert report.t_order is None


def test_t_entry_of_infinite_order():
    report = verify_modular_datum(Z2_S, diag([1, 2]))
    assert report[A.T_FINITE_ORDER].witness == (1,)
    assert report.t_order is None


def test_rank_mismatch_fails_all_t_axioms():
    report = verify_modular_datum(Z2_S, diag([1]))
    assert not report[A.T_DIAGONAL].passed
    assert not report[A.MODULAR_RELATION].passed


# =============================================================================
# STRUCTURE CONSTANTS
# =============================================================================


def test_cyclic_group_constants():
    n = 4
    constants = structure_constants(from_S(abelian_fourier_matrix(AbelianGroupSpec((n,)))))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                expected = 1 if (i + j - k) % n == 0 else 0
                assert constants.N[i][j][k] == expected
                assert constants.lam[i][j][k] == expected


def test_constants_frame_is_long_format():
    frame = structure_constants(from_P(rank2_family(4))).to_frame()
    ConstantsModel.validate(frame)

    assert frame.height == 8
    assert frame.columns == ["i", "j", "k", "N", "lambda"]
    last = frame.row(7, named=True)
    assert (last["i"], last["j"], last["k"], last["N"], last["lambda"]) == (1, 1, 1, "3/2", "3")


# =============================================================================
# C-ALGEBRAS
# =============================================================================


def test_rank2_family_algebra_from_p_matches_direct_table():
    alg = calgebra_of(from_P(rank2_family(4)))
    direct = rank2_calgebra(4)

    assert alg.lam == direct.lam
    assert alg.degrees == direct.degrees
    assert alg.order == 5


@pytest.mark.parametrize("n", [4, 9, Fraction(3, 2)])
def test_rank2_family_is_a_calgebra(n):
    assert verify_calgebra(rank2_calgebra(n)).passed


def test_rank2_parameter_must_be_positive():
    with pytest.raises(ValueError):
        rank2_calgebra(0)


def test_bad_involution_stops_early():
    alg = rank2_calgebra(4)
    broken = CAlgebra(alg.rank, alg.lam, alg.degrees, (1, 1), alg.order)
    report = verify_calgebra(broken)

    assert [v.name for v in report.verdicts] == [A.INVOLUTION_CLOSED]
    assert report[A.INVOLUTION_CLOSED].witness == (0,)


def test_non_commutative_table():
    alg = calgebra_from_lambda({(0, 0, 0): ONE, (0, 1, 1): ONE, (1, 0, 1): 2 * ONE, (1, 1, 0): ONE})
    report = verify_calgebra(alg)
    assert report[A.COMMUTATIVE].witness == (0, 1, 1)


def test_non_associative_table():
    # b1 b1 = b2, b1 b2 = b0, b2 b2 = b0
    lam = _lambda_table(3, {(1, 1): 2, (1, 2): 0, (2, 1): 0, (2, 2): 0})
    alg = CAlgebra(3, lam, (ONE, ONE, ONE), (0, 1, 2), 3 * ONE)
    report = verify_calgebra(alg)

    assert report[A.COMMUTATIVE].passed
    assert report[A.ASSOCIATIVE].witness == (1, 1, 2, 0)


def test_lambda_table_reads_involution_and_degrees():
    alg = calgebra_from_lambda(
        {(0, 0, 0): ONE, (0, 1, 1): ONE, (1, 0, 1): ONE, (1, 1, 0): 4 * ONE, (1, 1, 1): 3 * ONE}
    )
    assert alg.involution == (0, 1)
    assert alg.degrees == (1, 4)
    assert alg.order == 5
    assert verify_calgebra(alg).passed


def test_empty_lambda_table_rejected():
    with pytest.raises(ValueError):
        calgebra_from_lambda({})


def test_build_calgebra_requires_a_fourier_matrix():
    with pytest.raises(AxiomFailure) as info:
        build_calgebra(from_P(rank2_family(4)))
    assert info.value.report is not None
    assert not info.value.report.passed


def test_build_calgebra_for_z3():
    alg = build_calgebra(from_S(abelian_fourier_matrix(AbelianGroupSpec((3,)))))
    assert alg.involution == (0, 2, 1)
    assert alg.product_support(1, 1) == ((2, ONE),)


def test_product_support_leaves_the_algebra_immutable():
    triple = from_S(abelian_fourier_matrix(AbelianGroupSpec((3,))))
    first, second = calgebra_of(triple), calgebra_of(triple)

    assert first.product_support(2, 2) == ((1, ONE),)
    assert first == second
    assert hash(first) == hash(second)
    with pytest.raises(FrozenInstanceError):
        first.rank = 4
