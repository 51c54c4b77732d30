"""
Tests for fourier_algebra.analysis

Checkers return CheckResult(verdict, witness, value, detail); a theorem
violation is a COUNTEREXAMPLE verdict, never an exception. Exceptions mark
broken preconditions: HypothesisNotMet, IrrationalDegree, NonIntegerDegree,
NotSelfDual, IntegralityFailed, DominanceFailed.
"""

from dataclasses import replace
from fractions import Fraction
from pathlib import Path

import pytest

from fourier_algebra import analysis
from fourier_algebra.constants import Verdicts as V
from fourier_algebra.exceptions import (
    DominanceFailed,
    HypothesisNotMet,
    IntegralityFailed,
    NonIntegerDegree,
    NotSelfDual,
)
from fourier_algebra.fusion import CAlgebra, build_calgebra, calgebra_of, rank2_calgebra
from fourier_algebra.genlib import AbelianGroupSpec, abelian_fourier_matrix, rank2_family
from fourier_algebra.ingest import loader
from fourier_algebra.math.cyclo import ONE, ZERO, Cyclotomic, sqrt_nonneg_rational
from fourier_algebra.math.linalg import ExactMatrix
from fourier_algebra.pipeline import triple_from_document
from fourier_algebra.rescale import from_P, from_S

FIXTURES = Path(__file__).resolve().parents[2] / "fixtures"


def abelian(*factors: int):
    return from_S(abelian_fourier_matrix(AbelianGroupSpec(factors)))


RANK2_N4 = from_P(rank2_family(4))


# =============================================================================
# DUALITY
# =============================================================================


def test_z3_is_normalized_self_dual():
    report = analysis.duality_report(abelian(3))

    assert report.is_self_dual
    assert report.is_normalized
    assert report.product_matrix_verdict.permutation == (0, 1, 2)
    assert report.multiplicities == (1, 1, 1)
    assert report.degrees_match
    assert report.to_dict()["scale"] == "3"


def test_rank2_family_is_self_dual():
    report = analysis.duality_report(RANK2_N4)

    # P·conj(P) = 5·I
    assert report.is_self_dual
    assert report.is_normalized
    assert report.product_matrix_verdict.scale == 5
    assert report.multiplicities == (1, 4)
    assert report.degrees_match


def test_norm_identity():
    assert analysis.norm_identity_check(abelian(2, 2)).verdict == V.HOLDS
    assert analysis.norm_identity_check(RANK2_N4).verdict == V.HOLDS


def test_degree_norm_divisibility():
    assert analysis.degree_norm_divisibility_check(abelian(3)).verdict == V.HOLDS
    result = analysis.degree_norm_divisibility_check(RANK2_N4)
    assert result.verdict == V.COUNTEREXAMPLE
    assert result.witness == (1,)


# =============================================================================
# INTEGRALITY
# =============================================================================


def test_group_algebra_satisfies_integrality():
    assert analysis.integrality_condition(calgebra_of(abelian(3))).verdict == V.PASS


@pytest.mark.parametrize(
    "n,value",
    [
        (4, "3/2"),
        (9, "8/3"),
        (Fraction(3, 2), str(sqrt_nonneg_rational(Fraction(1, 6)))),
    ],
)
def test_rank2_family_fails_integrality(n, value):
    result = analysis.integrality_condition(rank2_calgebra(n))

    assert result.verdict == V.FAIL
    assert result.witness == (1, 1, 1)
    assert result.value == value
    assert not result.ok


def test_reconstruct_recovers_the_fourier_matrix():
    triple = abelian(3)
    S = analysis.reconstruct_fourier(calgebra_of(triple), triple.P)
    assert S == abelian_fourier_matrix(AbelianGroupSpec((3,)))


def test_reconstruct_rejects_non_integral_rank2_member():
    with pytest.raises(IntegralityFailed) as info:
        analysis.reconstruct_fourier(calgebra_of(RANK2_N4), RANK2_N4.P)
    assert info.value.witness == (1, 1, 1)
    assert info.value.value == "3/2"


def test_reconstruct_compares_scale_with_algebra_order():
    triple = abelian(2)
    # the n = 1 family member is the group algebra of Z2
    assert analysis.reconstruct_fourier(rank2_calgebra(1), triple.P) == triple.S
    with pytest.raises(NotSelfDual):
        analysis.reconstruct_fourier(rank2_calgebra(4), triple.P)


def test_reconstruct_reports_integrality_witness():
    half = Cyclotomic.from_rational(Fraction(1, 2))
    lam = ((ONE, ZERO), (ZERO, ONE)), ((ZERO, ONE), (ONE, half))
    alg = CAlgebra(2, lam, (ONE, ONE), (0, 1), 2 * ONE)

    with pytest.raises(IntegralityFailed) as info:
        analysis.reconstruct_fourier(alg, abelian(2).P)
    assert info.value.witness == (1, 1, 1)
    assert info.value.value == "1/2"


def test_integrality_failed_carries_witness():
    error = IntegralityFailed((1, 1, 1), "3/2")
    assert error.witness == (1, 1, 1)
    assert "3/2" in str(error)


# =============================================================================
# DEGREE THEOREMS
# =============================================================================


def test_square_order_verdicts():
    assert analysis.square_order_check(abelian(2)).verdict == V.NOT_APPLICABLE
    assert analysis.square_order_check(abelian(3)).verdict == V.VACUOUS
    assert analysis.square_order_check(abelian(9)).verdict == V.HOLDS


@pytest.mark.parametrize(
    "degrees,verdict,witness",
    [
        ((1, 2, 2), V.INCONSISTENT, (1,)),
        ((1, 2, 4, 4, 4), V.INCONSISTENT, (1,)),
        ((1, 2, 3), V.CONSISTENT, None),
        ((1, 1, 2), V.CONSISTENT, None),
        ((1, 1, 1, 1), V.CONSISTENT, None),
        ((2, 2, 4), V.INCONSISTENT, (0,)),
        ((3,), V.INCONSISTENT, (0,)),
        ((), V.INCONSISTENT, (0,)),
    ],
)
def test_divisibility_screen(degrees, verdict, witness):
    result = analysis.divisibility_screen(degrees)
    assert result.verdict == verdict
    assert result.witness == witness


def test_screen_rejects_non_integer_degrees():
    with pytest.raises(NonIntegerDegree):
        analysis.divisibility_screen([1, Fraction(3, 2)])


def test_integer_table_degrees():
    assert analysis.integer_table_degrees(rank2_family(4)) == (1, 4)
    with pytest.raises(NonIntegerDegree):
        analysis.integer_table_degrees(rank2_family(Fraction(3, 2)))


def test_homogeneity():
    assert analysis.homogeneity(abelian(3)) == ONE
    assert analysis.homogeneity(RANK2_N4) == 4
    assert analysis.homogeneity(from_S(ExactMatrix.from_rows([[1]]))) == ONE
    assert analysis.homogeneity_degree((ONE, ONE, 2 * ONE)) is None


def test_degree_one_check():
    assert analysis.degree_one_check(abelian(5)).verdict == V.HOLDS
    with pytest.raises(HypothesisNotMet):
        analysis.degree_one_check(RANK2_N4)


def test_unique_norm_and_symmetric_algebra():
    assert analysis.unique_norm_check(abelian(4)).verdict == V.HOLDS
    assert analysis.unique_norm_check(RANK2_N4).verdict == V.HOLDS
    assert analysis.symmetric_algebra_check(abelian(3)).verdict == V.HOLDS
    assert analysis.symmetric_algebra_check(abelian(2, 2)).verdict == V.HOLDS


def test_unique_norm_scaling():
    assert analysis.unique_norm_scaling_check(abelian(3)).verdict == V.HOLDS
    semion = triple_from_document(loader.load_document(str(FIXTURES / "z2.mat")).document)
    assert analysis.unique_norm_scaling_check(semion).verdict == V.HOLDS
    assert analysis.unique_norm_scaling_check(RANK2_N4).verdict == V.NOT_APPLICABLE


def test_unique_norm_scaling_names_the_first_mismatch():
    z3 = abelian(3)
    tampered = replace(z3, S=z3.S.scale(2))

    result = analysis.unique_norm_scaling_check(tampered)
    assert result.verdict == V.COUNTEREXAMPLE
    assert result.witness == (0, 0)


def test_perfect_square_degrees():
    assert analysis.perfect_square_degrees_check(abelian(2, 2)).verdict == V.HOLDS
    assert analysis.perfect_square_degrees_check(abelian(3)).verdict == V.NOT_APPLICABLE


def test_rational_algebra():
    assert analysis.rational_algebra_check(calgebra_of(abelian(2))).verdict == V.HOLDS
    result = analysis.rational_algebra_check(rank2_calgebra(Fraction(3, 2)))
    assert result.verdict == V.COUNTEREXAMPLE
    assert result.witness == (1,)


def test_eigenmatrix():
    triple = abelian(2, 3)
    assert analysis.eigenmatrix_check(calgebra_of(triple), triple.P).verdict == V.HOLDS
    assert analysis.eigenmatrix_check(calgebra_of(RANK2_N4), RANK2_N4.P).verdict == V.HOLDS


def test_dominance():
    assert analysis.dominance_check(abelian(3)).verdict == V.PASS
    assert analysis.dominance_check(RANK2_N4).verdict == V.PASS


def test_group_algebra():
    triple = abelian(2, 2)
    alg = build_calgebra(triple)
    assert analysis.group_algebra_check(alg, triple.P).verdict == V.HOLDS
    assert analysis.group_algebra_check(calgebra_of(RANK2_N4), RANK2_N4.P).verdict == V.NOT_APPLICABLE


# =============================================================================
# CLASSIFICATION
# =============================================================================


def test_classify_klein_four():
    report = analysis.classify(abelian(2, 2))

    assert report.passed
    assert report.hypothesis == "homogeneous(1)"
    assert report.degrees_all_one
    assert report.unimodular_entries
    assert report.invariant_factors == (2, 2)
    assert report.is_elementary_abelian is True
    assert report.cuntz_conjecture_verdict.verdict == V.HOLDS
    assert report.unique_norm_scaling.verdict == V.HOLDS
    assert report.element_orders == (1, 2, 2, 2)
    assert len(report.column_group) == 4


def test_classify_z6_merges_coprime_factors():
    report = analysis.classify(abelian(2, 3))
    assert report.invariant_factors == (6,)
    assert report.is_elementary_abelian is None
    assert report.cuntz_conjecture_verdict is None


def test_classify_requires_fourier_matrix():
    with pytest.raises(HypothesisNotMet):
        analysis.classify(RANK2_N4)


def test_dominance_failure_is_a_classification_error():
    error = DominanceFailed((1, 2))
    assert error.witness == (1, 2)


def test_classification_to_dict_is_json_ready():
    payload = analysis.classify(abelian(3)).to_dict()
    assert payload["homogeneity_degree"] == "1"
    assert payload["column_group"] == [[0, 1, 2], [1, 2, 0], [2, 0, 1]]
    assert payload["anomalies"] == []
    assert payload["unique_norm_scaling"]["verdict"] == V.HOLDS
