"""Corpus generators: abelian character tables and the rank-2 family."""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import lcm, prod

from sympy import factorint
from sympy.utilities.iterables import partitions

from fourier_algebra.math.cyclo import E, sqrt_nonneg_rational
from fourier_algebra.math.linalg import ExactMatrix, kron


@dataclass(frozen=True)
class AbelianGroupSpec:
    """Z_{n_1} x ... x Z_{n_m}; no factors is the trivial group."""

    factors: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        bad = [n for n in self.factors if n < 2]
        if bad:
            raise ValueError(f"cyclic factor orders must be >= 2, got {bad}")

    @classmethod
    def parse(cls, text: str) -> "AbelianGroupSpec":
        """'2,2,3' -> Z2 x Z2 x Z3; '' or '1' -> trivial group."""
        parts = [p.strip() for p in text.split(",") if p.strip()]
        factors = tuple(int(p) for p in parts if int(p) != 1)
        return cls(factors)

    @property
    def order(self) -> int:
        return prod(self.factors)

    def elements(self) -> list[tuple[int, ...]]:
        """Lexicographic over factor tuples."""
        return list(product(*(range(n) for n in self.factors)))

    def __str__(self) -> str:
        return " x ".join(f"Z{n}" for n in self.factors) or "Z1"


def abelian_character_table(spec: AbelianGroupSpec) -> ExactMatrix:
    """P_ab = Π_f ζ_{n_f}^(a_f·b_f) over lexicographically ordered elements."""
    elements = spec.elements()
    L = lcm(*spec.factors) if spec.factors else 1
    weights = [L // n for n in spec.factors]
    return ExactMatrix.from_rows(
        [
            [E(L, sum(x * y * w for x, y, w in zip(a, b, weights))) for b in elements]
            for a in elements
        ]
    )


def abelian_fourier_matrix(spec: AbelianGroupSpec) -> ExactMatrix:
    """S = r^(-1/2)·P."""
    return abelian_character_table(spec).scale(sqrt_nonneg_rational(spec.order).inv())


def tensor_product(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    return kron(a, b)


def rank2_family(n: Fraction | int) -> ExactMatrix:
    """P = [[1, n], [1, -1]] for rational n > 0."""
    n = Fraction(n)
    if n <= 0:
        raise ValueError(f"rank-2 family parameter must be positive, got {n}")
    return ExactMatrix.from_rows([[1, n], [1, -1]])


# =============================================================================
# Invariant factors and the corpus
# =============================================================================


def _merge_primary(primary: dict[int, list[int]]) -> tuple[int, ...]:
    """Combine per-prime exponent lists (any order) into invariant factors."""
    ordered = {p: sorted(exps, reverse=True) for p, exps in primary.items()}
    length = max((len(e) for e in ordered.values()), default=0)
    factors = []
    for index in range(length):
        f = 1
        for p, exps in ordered.items():
            if index < len(exps):
                f *= p ** exps[index]
        factors.append(f)
    return tuple(sorted(factors))


def invariant_factors(factors: tuple[int, ...] | list[int]) -> tuple[int, ...]:
    """Canonical invariant factors (each divides the next) by coprime merging."""
    primary: dict[int, list[int]] = {}
    for n in factors:
        for p, e in factorint(n).items():
            primary.setdefault(p, []).append(e)
    return _merge_primary(primary)


def abelian_corpus(max_order: int) -> list[AbelianGroupSpec]:
    """One spec per isomorphism type of order <= max_order, in invariant-factor form."""
    corpus = []
    for r in range(1, max_order + 1):
        primes = sorted(factorint(r).items())
        options = []
        for p, e in primes:
            shapes = []
            for part in partitions(e):
                shapes.append([k for k, m in sorted(part.items()) for _ in range(m)])
            options.append([(p, shape) for shape in shapes])
        for choice in product(*options):
            corpus.append(AbelianGroupSpec(_merge_primary(dict(choice))))
    return corpus
