"""Theorem checkers over Fourier triples and C-algebras.

Checkers return a CheckResult and never raise on a theorem violation: a
violation is a COUNTEREXAMPLE verdict with its witness, logged at WARNING.
Exceptions are reserved for broken preconditions (HypothesisNotMet,
IrrationalDegree, ...).
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from sympy import integer_nthroot, isprime

from fourier_algebra import rescale
from fourier_algebra.constants import Hypotheses as H
from fourier_algebra.constants import Verdicts as V
from fourier_algebra.exceptions import (
    AxiomFailure,
    DominanceFailed,
    HypothesisNotMet,
    IntegralityFailed,
    IrrationalDegree,
    NonIntegerDegree,
    NotClosed,
    NotSelfDual,
)
from fourier_algebra.fusion import (
    CAlgebra,
    structure_constants,
    verify_fourier,
)
from fourier_algebra.math import groups
from fourier_algebra.math.cyclo import (
    ONE,
    Cyclotomic,
    Sign,
    sign_real,
    sqrt_nonneg_rational,
    sum_of_products,
)
from fourier_algebra.math.interval import PrecisionPolicy
from fourier_algebra.math.linalg import (
    ExactMatrix,
    PermutationVerdict,
    as_scaled_permutation,
    conj_entrywise,
    determinant,
    matmul,
)
from fourier_algebra.rescale import FourierTriple

logger = logging.getLogger(__name__)

Witness = tuple[int, ...]


@dataclass(frozen=True)
class CheckResult:
    verdict: str
    witness: Optional[Witness] = None
    value: Optional[str] = None
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.verdict not in (V.FAIL, V.COUNTEREXAMPLE, V.INCONSISTENT)

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "witness": list(self.witness) if self.witness is not None else None,
            "value": self.value,
            "detail": self.detail,
        }


def _holds_unless(
    witness: Optional[Witness], check: str, detail: str = ""
) -> CheckResult:
    if witness is None:
        return CheckResult(V.HOLDS, detail=detail)
    logger.warning("%s: counterexample at %s %s", check, witness, detail)
    return CheckResult(V.COUNTEREXAMPLE, witness, detail=detail)


def _rational_degrees(degrees: Sequence[Cyclotomic]) -> list[Fraction]:
    out = []
    for j, d in enumerate(degrees):
        q = d.as_rational()
        if q is None:
            raise IrrationalDegree(j)
        out.append(q)
    return out


def _is_square(q: Fraction) -> bool:
    if q < 0 or q.denominator != 1:
        return False
    _, exact = integer_nthroot(q.numerator, 2)
    return exact


# =============================================================================
# Duality and multiplicities
# =============================================================================


@dataclass(frozen=True)
class DualityReport:
    product_matrix_verdict: PermutationVerdict
    is_self_dual: bool
    is_normalized: bool
    multiplicities: tuple[Cyclotomic, ...]  # m_j = d_0 / d_j
    degrees_match: bool
    norms: tuple[Cyclotomic, ...]
    order: Cyclotomic

    def to_dict(self) -> dict:
        pv = self.product_matrix_verdict
        return {
            "is_self_dual": self.is_self_dual,
            "is_normalized": self.is_normalized,
            "permutation": list(pv.permutation) if pv.permutation else None,
            "scale": str(pv.scale) if pv.scale is not None else None,
            "multiplicities": [str(m) for m in self.multiplicities],
            "degrees_match": self.degrees_match,
            "norms": [str(d) for d in self.norms],
            "order": str(self.order),
        }


def _self_duality(P: ExactMatrix, order: Cyclotomic) -> tuple[PermutationVerdict, bool]:
    verdict = as_scaled_permutation(matmul(P, conj_entrywise(P)))
    return verdict, verdict.is_permutation and verdict.scale == order


def duality_report(triple: FourierTriple) -> DualityReport:
    verdict, self_dual = _self_duality(triple.P, triple.order)
    multiplicities = tuple(triple.order / d for d in triple.norms)
    degrees_match = multiplicities == triple.degrees
    if not degrees_match:
        logger.warning("multiplicities %s differ from degrees", multiplicities)
    return DualityReport(
        product_matrix_verdict=verdict,
        is_self_dual=self_dual,
        is_normalized=self_dual and verdict.permutation == tuple(range(triple.rank)),
        multiplicities=multiplicities,
        degrees_match=degrees_match,
        norms=triple.norms,
        order=triple.order,
    )


def norm_identity_check(triple: FourierTriple) -> CheckResult:
    """d_0 = d_j·δ(b_j) for every j."""
    witness = next(
        (
            (j,)
            for j in range(triple.rank)
            if triple.norms[j] * triple.degrees[j] != triple.order
        ),
        None,
    )
    return _holds_unless(witness, "norm_identity")


def degree_norm_divisibility_check(triple: FourierTriple) -> CheckResult:
    """Rational degrees are integers, and degrees and norms divide d_0."""
    if any(d.as_rational() is None for d in triple.degrees):
        return CheckResult(V.NOT_APPLICABLE, detail="degrees not all rational")
    order = triple.order.as_rational()
    for j in range(triple.rank):
        for label, value in (("degree", triple.degrees[j]), ("norm", triple.norms[j])):
            q = value.as_rational()
            if (
                q is None
                or order is None
                or q.denominator != 1
                or order.denominator != 1
                or order.numerator % q.numerator
            ):
                return _holds_unless((j,), "degree_norm_divisibility", f"{label} {value}")
    return CheckResult(V.HOLDS)


# =============================================================================
# Integrality correspondence
# =============================================================================


def integrality_condition(alg: CAlgebra) -> CheckResult:
    """λ_ijk·√δ_k / √(δ_i δ_j) ∈ Z for all i, j, k."""
    degrees = _rational_degrees(alg.degrees)
    roots = [sqrt_nonneg_rational(d) for d in degrees]
    r = alg.rank
    for i in range(r):
        for j in range(r):
            scale = sqrt_nonneg_rational(degrees[i] * degrees[j]).inv()
            for k in range(r):
                value = alg.lam[i][j][k] * roots[k] * scale
                if not value.is_rational_integer():
                    return CheckResult(V.FAIL, (i, j, k), str(value))
    return CheckResult(V.PASS)


def reconstruct_fourier(
    alg: CAlgebra,
    P: ExactMatrix,
    strict_nonnegative: bool = False,
    policy: PrecisionPolicy | None = None,
) -> ExactMatrix:
    """S from a self-dual algebra with integral constants: s = P·L, S_ij = s_ij/√d_i."""
    verdict, self_dual = _self_duality(P, alg.order)
    if not self_dual:
        raise NotSelfDual(
            f"P·conj(P) is not {alg.order} times a permutation matrix "
            f"(scaled permutation: {verdict.is_permutation})"
        )
    integrality = integrality_condition(alg)
    if not integrality.ok:
        assert integrality.witness is not None and integrality.value is not None
        witness = integrality.witness
        raise IntegralityFailed((witness[0], witness[1], witness[2]), integrality.value)

    S = rescale.from_P(P).S
    report = verify_fourier(S, strict_nonnegative, policy)
    if not report.passed:
        logger.error("reconstructed S fails Fourier axioms: %s", report.failures())
        raise AxiomFailure("reconstructed matrix is not a Fourier matrix", report)
    return S


# =============================================================================
# Degree theorems
# =============================================================================


def square_order_check(triple: FourierTriple) -> CheckResult:
    """Odd rank and integral det(P) imply d_0 is a perfect square."""
    if triple.rank % 2 == 0:
        return CheckResult(V.NOT_APPLICABLE, detail="even rank")
    det = determinant(triple.P)
    if not det.is_rational_integer():
        return CheckResult(V.VACUOUS, detail=f"det(P) = {det}")
    order = triple.order.as_rational()
    detail = f"det(P) = {det}, order {triple.order}"
    if order is not None and _is_square(order):
        return CheckResult(V.HOLDS, detail=detail)
    return _holds_unless((0,), "square_order", detail)


def divisibility_screen(degrees: Sequence[Cyclotomic | int | Fraction]) -> CheckResult:
    """A nontrivial degree dividing every nontrivial degree must be 1."""
    values = []
    for j, d in enumerate(degrees):
        q = Cyclotomic.coerce(d).as_rational()
        if q is None or q.denominator != 1 or q <= 0:
            raise NonIntegerDegree(f"degree {j} is {d}, not a positive integer")
        values.append(q.numerator)
    if not values or values[0] != 1:
        trivial = str(values[0]) if values else None
        logger.warning("divisibility screen: trivial degree is %s, not 1", trivial)
        return CheckResult(V.INCONSISTENT, (0,), trivial, "degree of b_0 must be 1")
    nontrivial = values[1:]
    for j, d in enumerate(nontrivial, start=1):
        if d != 1 and all(x % d == 0 for x in nontrivial):
            return CheckResult(V.INCONSISTENT, (j,), str(d))
    return CheckResult(V.CONSISTENT)


def integer_table_degrees(P: ExactMatrix) -> tuple[int, ...]:
    """Degree vector (row 0) of an integer first eigenmatrix."""
    out = []
    for j, d in enumerate(P.row(0)):
        if not d.is_rational_integer():
            raise NonIntegerDegree(f"P[0,{j}] = {d} is not an integer")
        q = d.as_rational()
        assert q is not None
        out.append(q.numerator)
    return tuple(out)


def homogeneity_degree(degrees: Sequence[Cyclotomic]) -> Optional[Cyclotomic]:
    nontrivial = set(degrees[1:])
    if not nontrivial:
        return ONE
    if len(nontrivial) == 1:
        return nontrivial.pop()
    return None


def homogeneity(triple: FourierTriple) -> Optional[Cyclotomic]:
    """t when all nontrivial degrees equal t. Rank 1 reports t = 1."""
    return homogeneity_degree(triple.degrees)


def unique_norm_check(triple: FourierTriple) -> CheckResult:
    """All degrees 1 iff all norms equal d_0."""
    unique_degree = all(d == ONE for d in triple.degrees)
    unique_norm = all(d == triple.order for d in triple.norms)
    if unique_degree == unique_norm:
        return CheckResult(V.HOLDS)
    return _holds_unless(
        (0,),
        "unique_norm",
        f"unique degree {unique_degree}, unique norm {unique_norm}",
    )


def unique_norm_scaling_check(triple: FourierTriple) -> CheckResult:
    """Unique norm implies S = r^(-1/2)·s."""
    if any(d != triple.order for d in triple.norms):
        return CheckResult(V.NOT_APPLICABLE, detail="s-matrix norms differ")
    r = triple.rank
    expected = triple.s.scale(sqrt_nonneg_rational(Fraction(1, r)))
    witness = next(
        ((i, j) for i in range(r) for j in range(r) if triple.S[i, j] != expected[i, j]),
        None,
    )
    return _holds_unless(witness, "unique_norm_scaling", f"rank {r}")


def symmetric_algebra_check(triple: FourierTriple) -> CheckResult:
    """Identity involution iff S is real."""
    trivial = triple.involution == tuple(range(triple.rank))
    real = all(x.is_real() for row in triple.S.entries for x in row)
    if trivial == real:
        return CheckResult(V.HOLDS)
    return _holds_unless((0,), "symmetric_algebra", f"trivial involution {trivial}, real S {real}")


def _hypothesis(triple: FourierTriple) -> tuple[str, Optional[Cyclotomic]]:
    t = homogeneity(triple)
    if t is not None:
        return H.HOMOGENEOUS, t
    order = triple.order.as_rational()
    if (
        order is not None
        and order.denominator == 1
        and isprime(order.numerator)
        and all(d.is_rational_integer() for d in triple.degrees)
    ):
        return H.PRIME_ORDER, None
    return H.NEITHER, None


def _require_fourier(
    triple: FourierTriple, policy: PrecisionPolicy | None
) -> tuple[str, Optional[Cyclotomic]]:
    report = verify_fourier(triple.S, policy=policy)
    if not report.passed:
        names = ", ".join(v.name for v in report.failures())
        raise HypothesisNotMet(f"S is not a Fourier matrix ({names})")
    hypothesis, t = _hypothesis(triple)
    if hypothesis == H.NEITHER:
        raise HypothesisNotMet("not homogeneous, and order is not a prime with integer degrees")
    return hypothesis, t


def degree_one_check(
    triple: FourierTriple, policy: PrecisionPolicy | None = None
) -> CheckResult:
    _require_fourier(triple, policy)
    witness = next(((j,) for j, d in enumerate(triple.degrees) if d != ONE), None)
    if witness is not None:
        return _holds_unless(witness, "degree_one", f"degree {triple.degrees[witness[0]]}")
    unique_norm = unique_norm_check(triple)
    if not unique_norm.ok:
        return unique_norm
    return CheckResult(V.HOLDS)


def perfect_square_degrees_check(
    triple: FourierTriple, alg: CAlgebra | None = None
) -> CheckResult:
    """Integral s-matrix implies square-integer degrees and rational constants."""
    if not all(x.is_rational_integer() for row in triple.s.entries for x in row):
        return CheckResult(V.NOT_APPLICABLE, detail="s-matrix not integral")
    for j, d in enumerate(triple.degrees):
        q = d.as_rational()
        if q is None or not _is_square(q):
            return _holds_unless((j,), "perfect_square_degrees", f"degree {d}")
    lam = alg.lam if alg is not None else structure_constants(triple).lam
    r = triple.rank
    irrational = next(
        (
            (i, j, k)
            for i in range(r)
            for j in range(r)
            for k in range(r)
            if lam[i][j][k].as_rational() is None
        ),
        None,
    )
    return _holds_unless(irrational, "perfect_square_degrees", "irrational constant")


def rational_algebra_check(alg: CAlgebra) -> CheckResult:
    """All constants rational implies all degrees are rational integers."""
    r = alg.rank
    if any(
        alg.lam[i][j][k].as_rational() is None
        for i in range(r)
        for j in range(r)
        for k in range(r)
    ):
        return CheckResult(V.NOT_APPLICABLE, detail="irrational constants")
    witness = next(
        ((j,) for j, d in enumerate(alg.degrees) if not d.is_rational_integer()), None
    )
    return _holds_unless(witness, "rational_algebra")


def eigenmatrix_check(alg: CAlgebra, P: ExactMatrix) -> CheckResult:
    """Each row of P is a character of the λ table: p_ij p_ik = Σ_m λ_jkm p_im."""
    r = alg.rank
    for i in range(r):
        row = P.row(i)
        for j in range(r):
            for k in range(j, r):
                rhs = sum_of_products((x, row[m]) for m, x in alg.product_support(j, k))
                if row[j] * row[k] != rhs:
                    return _holds_unless((i, j, k), "eigenmatrix")
    return CheckResult(V.HOLDS)


def dominance_check(
    triple: FourierTriple, policy: PrecisionPolicy | None = None
) -> CheckResult:
    """|s_ij|² <= |s_0j|² for all i, j."""
    s = triple.s
    bounds = [x.abs2() for x in s.row(0)]
    for i in range(1, triple.rank):
        for j, x in enumerate(s.row(i)):
            if sign_real(bounds[j] - x.abs2(), policy) is Sign.NEGATIVE:
                return CheckResult(V.FAIL, (i, j), str(x))
    return CheckResult(V.PASS)


def group_algebra_check(alg: CAlgebra, P: ExactMatrix) -> CheckResult:
    """Self-dual, unique degree and nonnegative constants imply a group algebra."""
    r = alg.rank
    values = [alg.lam[i][j][k].as_rational() for i in range(r) for j in range(r) for k in range(r)]
    nonnegative = all(q is not None and q >= 0 for q in values)
    _, self_dual = _self_duality(P, alg.order)
    if not (self_dual and nonnegative and all(d == ONE for d in alg.degrees)):
        return CheckResult(V.NOT_APPLICABLE)
    witness = next(
        (
            (i, j)
            for i in range(r)
            for j in range(r)
            if [x for _, x in alg.product_support(i, j)] != [ONE]
        ),
        None,
    )
    return _holds_unless(witness, "group_algebra")


# =============================================================================
# Classification
# =============================================================================


@dataclass(frozen=True)
class ClassificationReport:
    hypothesis: str
    homogeneity_degree: Optional[Cyclotomic]
    degrees_all_one: bool
    unimodular_entries: bool
    column_group: Optional[tuple[tuple[int, ...], ...]]
    invariant_factors: Optional[tuple[int, ...]]
    is_elementary_abelian: Optional[bool]
    cuntz_conjecture_verdict: Optional[CheckResult]
    unique_norm_scaling: CheckResult
    element_orders: Optional[tuple[int, ...]] = None
    anomalies: tuple[str, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        cuntz_ok = self.cuntz_conjecture_verdict is None or self.cuntz_conjecture_verdict.ok
        return (
            self.degrees_all_one
            and self.unimodular_entries
            and self.is_elementary_abelian is not False
            and cuntz_ok
            and self.unique_norm_scaling.ok
            and not self.anomalies
        )

    def to_dict(self) -> dict:
        t = self.homogeneity_degree
        cuntz = self.cuntz_conjecture_verdict
        return {
            "hypothesis": self.hypothesis,
            "homogeneity_degree": str(t) if t is not None else None,
            "degrees_all_one": self.degrees_all_one,
            "unimodular_entries": self.unimodular_entries,
            "column_group": [list(r) for r in self.column_group] if self.column_group else None,
            "invariant_factors": list(self.invariant_factors)
            if self.invariant_factors is not None
            else None,
            "is_elementary_abelian": self.is_elementary_abelian,
            "cuntz_conjecture_verdict": cuntz.to_dict() if cuntz else None,
            "unique_norm_scaling": self.unique_norm_scaling.to_dict(),
            "element_orders": list(self.element_orders) if self.element_orders else None,
            "anomalies": list(self.anomalies),
        }


def _column_group(s: ExactMatrix) -> list[list[int]]:
    columns = s.columns()
    index = {col: j for j, col in enumerate(columns)}
    table = []
    for a in range(s.rank):
        row = []
        for b in range(s.rank):
            product = tuple(x * y for x, y in zip(columns[a], columns[b]))
            c = index.get(product)
            if c is None:
                logger.warning("columns %d and %d: product is not a column", a, b)
                raise NotClosed((a, b))
            row.append(c)
        table.append(row)
    return table


def _cuntz_verdict(triple: FourierTriple) -> Optional[CheckResult]:
    s = triple.s
    integral = all(x.is_rational_integer() for row in s.entries for x in row)
    unique_norm = all(d == triple.order for d in triple.norms)
    if not (integral and unique_norm):
        return None
    witness = next(
        (
            (i, j)
            for i in range(s.rank)
            for j in range(s.rank)
            if s[i, j] not in (ONE, -ONE)
        ),
        None,
    )
    return _holds_unless(witness, "cuntz")


def classify(
    triple: FourierTriple, policy: PrecisionPolicy | None = None
) -> ClassificationReport:
    hypothesis, t = _require_fourier(triple, policy)
    dominance = dominance_check(triple, policy)
    if not dominance.ok:
        assert dominance.witness is not None
        raise DominanceFailed((dominance.witness[0], dominance.witness[1]))

    s = triple.s
    anomalies: list[str] = []
    degrees_all_one = all(d == ONE for d in triple.degrees)
    unimodular = all(x.abs2() == ONE for row in s.entries for x in row)

    table = _column_group(s)
    failure = groups.axiom_failure(table, identity=0)
    if failure is not None:
        anomalies.append(f"column group fails {failure[0]} at {failure[1]}")
    inverse = next(
        (j for j, k in enumerate(triple.involution) if table[j][k] != 0), None
    )
    if inverse is not None:
        anomalies.append(f"conjugate of column {inverse} is not its inverse")

    orders: Optional[tuple[int, ...]] = None
    factors: Optional[tuple[int, ...]] = None
    elementary: Optional[bool] = None
    if failure is None:
        orders = tuple(groups.element_orders(table))
        factors = groups.invariant_factors_from_orders(orders)
        if all(x.is_real() for row in s.entries for x in row):
            elementary = all(o <= 2 for o in orders)
            if not elementary:
                anomalies.append("real s-matrix with an element of order > 2")

    for message in anomalies:
        logger.warning("classification anomaly: %s", message)
    return ClassificationReport(
        hypothesis=f"{H.HOMOGENEOUS}({t})" if hypothesis == H.HOMOGENEOUS else hypothesis,
        homogeneity_degree=t,
        degrees_all_one=degrees_all_one,
        unimodular_entries=unimodular,
        column_group=tuple(tuple(row) for row in table),
        invariant_factors=factors,
        is_elementary_abelian=elementary,
        cuntz_conjecture_verdict=_cuntz_verdict(triple),
        unique_norm_scaling=unique_norm_scaling_check(triple),
        element_orders=orders,
        anomalies=tuple(anomalies),
    )
