"""Two-step rescaling between the S-, s- and P-matrix forms.

    S  --divide row i by S_i0-->  s  --multiply column j by s_0j-->  P
    P  --divide column j by √p_0j-->  s  --divide row i by √d_i-->  S

Row and column order is preserved everywhere; nothing is sorted.
"""

import logging
from dataclasses import dataclass

from fourier_algebra.exceptions import (
    IrrationalDegree,
    IrrationalNorm,
    NonpositiveDegree,
    NonpositiveFirstColumn,
    NotClosedUnderConjugation,
    RescaleError,
)
from fourier_algebra.math.cyclo import (
    ONE,
    Cyclotomic,
    is_positive,
    sqrt_nonneg_rational,
    sum_of_products,
)
from fourier_algebra.math.interval import PrecisionPolicy
from fourier_algebra.math.linalg import ExactMatrix, find_conjugate_column_pairing

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FourierTriple:
    S: ExactMatrix
    s: ExactMatrix
    P: ExactMatrix
    degrees: tuple[Cyclotomic, ...]  # δ(b_j) = p_0j
    norms: tuple[Cyclotomic, ...]  # d_i = Σ_j |s_ij|²
    order: Cyclotomic  # d_0
    involution: tuple[int, ...]  # j -> j*

    @property
    def rank(self) -> int:
        return self.S.rank


def _norms(s: ExactMatrix) -> tuple[Cyclotomic, ...]:
    return tuple(sum_of_products((x, x.conj()) for x in row) for row in s.entries)


def _assemble(S: ExactMatrix, s: ExactMatrix, P: ExactMatrix) -> FourierTriple:
    involution = find_conjugate_column_pairing(S)
    if involution is None:
        raise NotClosedUnderConjugation(
            "conjugate of some column of S is not a column of S"
        )
    norms = _norms(s)
    return FourierTriple(
        S=S,
        s=s,
        P=P,
        degrees=P.row(0),
        norms=norms,
        order=norms[0],
        involution=involution,
    )


def from_S(S: ExactMatrix, policy: PrecisionPolicy | None = None) -> FourierTriple:
    """Rescale a candidate Fourier matrix. Requires only S_i0 > 0."""
    inverses = []
    for i in range(S.rank):
        if not is_positive(S[i, 0], policy):
            raise NonpositiveFirstColumn(i)
        inverses.append(S[i, 0].inv())

    s = ExactMatrix.from_rows(
        [[x * inverses[i] for x in S.row(i)] for i in range(S.rank)]
    )
    top = s.row(0)
    P = ExactMatrix.from_rows([[x * top[j] for j, x in enumerate(row)] for row in s.entries])
    logger.debug("rescaled rank-%d S to s and P", S.rank)
    return _assemble(S, s, P)


def from_P(P: ExactMatrix) -> FourierTriple:
    """Invert the rescaling. Degrees and norms must be positive rationals."""
    if any(P[i, 0] != ONE for i in range(P.rank)):
        raise RescaleError("column 0 of P must be all ones")

    roots = []
    for j, degree in enumerate(P.row(0)):
        value = degree.as_rational()
        if value is None:
            raise IrrationalDegree(j)
        if value <= 0:
            raise NonpositiveDegree(j)
        roots.append(sqrt_nonneg_rational(value).inv())

    s = ExactMatrix.from_rows(
        [[x * roots[j] for j, x in enumerate(row)] for row in P.entries]
    )

    rows = []
    for i, norm in enumerate(_norms(s)):
        value = norm.as_rational()
        if value is None:
            raise IrrationalNorm(i)
        scale = sqrt_nonneg_rational(value).inv()
        rows.append([x * scale for x in s.row(i)])
    S = ExactMatrix.from_rows(rows)
    logger.debug("rescaled rank-%d P to s and S", P.rank)
    return _assemble(S, s, P)


def roundtrip_check(S: ExactMatrix, policy: PrecisionPolicy | None = None) -> bool:
    return from_P(from_S(S, policy).P).S == S


def from_s(s: ExactMatrix) -> FourierTriple:
    """Rescale an s-matrix through P (requires rational degrees s_0j²)."""
    top = s.row(0)
    P = ExactMatrix.from_rows([[x * top[j] for j, x in enumerate(row)] for row in s.entries])
    return from_P(P)
