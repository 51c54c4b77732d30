"""Exact arithmetic in cyclotomic fields Q(ζ_n).

A value is stored over its conductor, expanded in the Zumbroich basis of
that field. Both choices are canonical, so equality of values is equality
of (order, coeffs).

Zumbroich basis of Q(ζ_n), n = Π p^k (n ≢ 2 mod 4): the exponents e whose
CRT components j_p = e·(n/p^k)^{-1} mod p^k all lie in
    p = 2:   0 <= j < 2^(k-1)
    p odd:   p^(k-1) <= j < p^k
Out-of-basis exponents are rewritten with ζ^(j + 2^(k-1)) = -ζ^j (p = 2) and
Σ_c ζ^(j + c·p^(k-1)) = 0 (p odd), one prime at a time.
"""

from collections import defaultdict
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from sympy import divisors, factorint

from fourier_algebra.exceptions import (
    DivisionByZero,
    NegativeRadicand,
    NotReal,
    PrecisionExhausted,
)
from fourier_algebra.math.interval import (
    PrecisionPolicy,
    RealInterval,
    combine,
    root_of_unity_interval,
)

RationalLike = int | Fraction
# integer numerators during reduction, Fraction once a value is stored
Coefficient = int | Fraction


# =============================================================================
# Basis bookkeeping (cached per order)
# =============================================================================


@dataclass(frozen=True)
class _PrimePower:
    p: int
    k: int
    q: int  # p**k
    cofactor: int  # n // q; adding it to e adds 1 to the p-component
    inverse: int  # cofactor^-1 mod q

    def component(self, e: int) -> int:
        return e * self.inverse % self.q


@lru_cache(maxsize=None)
def _prime_powers(n: int) -> tuple[_PrimePower, ...]:
    out = []
    for p, k in sorted(factorint(n).items()):
        q = p**k
        out.append(_PrimePower(p, k, q, n // q, pow(n // q, -1, q)))
    return tuple(out)


def _to_basis(n: int, coeffs: dict[int, Coefficient]) -> dict[int, Coefficient]:
    for pp in _prime_powers(n):
        out: defaultdict[int, Coefficient] = defaultdict(int)
        half = pp.q // 2
        top = pp.q // pp.p
        for e, a in coeffs.items():
            j = pp.component(e)
            if pp.p == 2:
                if j < half:
                    out[e] += a
                else:
                    out[(e - half * pp.cofactor) % n] -= a
            elif j >= top:
                out[e] += a
            else:
                for c in range(1, pp.p):
                    out[(e + c * top * pp.cofactor) % n] -= a
        coeffs = {e: a for e, a in out.items() if a}
    return coeffs


def _descend(
    n: int, coeffs: dict[int, Coefficient], pp: _PrimePower
) -> tuple[int, dict[int, Coefficient]] | None:
    """Rewrite over Q(ζ_{n/p}) (or n/4 when 4 || n) if the value lives there."""
    if pp.p == 2 and pp.k == 2:
        if all(e % 4 == 0 for e in coeffs):
            return n // 4, {e // 4: a for e, a in coeffs.items()}
        return None
    if pp.k >= 2:
        if all(e % pp.p == 0 for e in coeffs):
            return n // pp.p, {e // pp.p: a for e, a in coeffs.items()}
        return None

    # p || n: the p-1 basis elements sharing their other components must
    # carry one common coefficient
    rows: defaultdict[int, dict[int, Coefficient]] = defaultdict(dict)
    for e, a in coeffs.items():
        j = pp.component(e)
        rows[(e - j * pp.cofactor) % n][j] = a
    m = n // pp.p
    reduced: dict[int, Coefficient] = {}
    for rest, row in rows.items():
        values = set(row.values())
        if len(row) != pp.p - 1 or len(values) != 1:
            return None
        reduced[(rest // pp.p) % m] = -values.pop()
    return m, reduced


def _reduce(n: int, coeffs: dict[int, Coefficient]) -> tuple[int, dict[int, Coefficient]]:
    while n > 1:
        for pp in _prime_powers(n):
            step = _descend(n, coeffs, pp)
            if step is not None:
                n, coeffs = step
                break
        else:
            break
    return n, coeffs


def _common_order(*orders: int) -> int:
    n = lcm(*orders)
    return 2 * n if n % 4 == 2 else n


def _canonical(
    n: int, raw: Mapping[int, RationalLike], denominator: int = 1
) -> "Cyclotomic":
    """Σ raw[e]·ζ_n^e / denominator in canonical form."""
    if n % 4 == 2:
        raw = {2 * e: a for e, a in raw.items()}
        n *= 2
    acc: defaultdict[int, Coefficient] = defaultdict(int)
    for e, a in raw.items():
        acc[e % n] += a
    coeffs = _to_basis(n, {e: a for e, a in acc.items() if a})
    n, coeffs = _reduce(n, coeffs)
    if not coeffs:
        n = 1
    return Cyclotomic(
        n, tuple(sorted((e, Fraction(a) / denominator) for e, a in coeffs.items()))
    )


@lru_cache(maxsize=1 << 16)
def _integral_terms(value: "Cyclotomic", n: int) -> tuple[int, tuple[tuple[int, int], ...]]:
    """(D, ((e, D·a_e), ...)) with exponents lifted into Q(ζ_n); D clears every denominator."""
    denominator = lcm(*(a.denominator for _, a in value.coeffs))
    step = n // value.order
    return denominator, tuple(
        (e * step, a.numerator * (denominator // a.denominator)) for e, a in value.coeffs
    )


# =============================================================================
# Cyclotomic
# =============================================================================


def _fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True, eq=False)
class Cyclotomic:
    """Σ_k a_k ζ_n^k in canonical form. Build through the constructors below."""

    order: int
    coeffs: tuple[tuple[int, Fraction], ...]

    # --- constructors ---

    @classmethod
    def from_rational(cls, q: RationalLike) -> "Cyclotomic":
        q = Fraction(q)
        return cls(1, ((0, q),) if q else ())

    @classmethod
    def root_of_unity(cls, n: int, k: int = 1) -> "Cyclotomic":
        """E(n)^k."""
        if n < 1:
            raise ValueError(f"root of unity order must be positive, got {n}")
        return _canonical(n, {k % n: 1})

    @classmethod
    def from_terms(cls, n: int, terms: Mapping[int, RationalLike]) -> "Cyclotomic":
        return _canonical(n, terms)

    @classmethod
    def coerce(cls, value: "Cyclotomic | RationalLike") -> "Cyclotomic":
        if isinstance(value, Cyclotomic):
            return value
        if isinstance(value, (int, Fraction)):
            return cls.from_rational(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to Cyclotomic")

    # --- inspection ---

    @property
    def conductor(self) -> int:
        return self.order

    def terms(self) -> dict[int, Fraction]:
        return dict(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def as_rational(self) -> Fraction | None:
        if self.order != 1:
            return None
        return self.coeffs[0][1] if self.coeffs else Fraction(0)

    def is_rational_integer(self) -> bool:
        q = self.as_rational()
        return q is not None and q.denominator == 1

    def is_real(self) -> bool:
        return self == self.conj()

    # --- equality ---

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.as_rational() == other
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        q = self.as_rational()
        if q is not None:
            return hash(q)
        return hash((self.order, self.coeffs))

    # --- field operations ---

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic(self.order, tuple((e, -a) for e, a in self.coeffs))

    def __add__(self, other: "Cyclotomic | RationalLike") -> "Cyclotomic":
        try:
            other = Cyclotomic.coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self.as_rational(), other.as_rational()
        if a is not None and b is not None:
            return Cyclotomic.from_rational(a + b)
        return sum_of_products(((self,), (other,)))

    __radd__ = __add__

    def __sub__(self, other: "Cyclotomic | RationalLike") -> "Cyclotomic":
        try:
            other = Cyclotomic.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: RationalLike) -> "Cyclotomic":
        return Cyclotomic.coerce(other) + (-self)

    def scale(self, factor: RationalLike) -> "Cyclotomic":
        factor = Fraction(factor)
        if not factor:
            return ZERO
        return Cyclotomic(self.order, tuple((e, a * factor) for e, a in self.coeffs))

    def __mul__(self, other: "Cyclotomic | RationalLike") -> "Cyclotomic":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        q = other.as_rational()
        if q is not None:
            return self.scale(q)
        q = self.as_rational()
        if q is not None:
            return other.scale(q)
        return _product(self, other)

    __rmul__ = __mul__

    def galois(self, k: int) -> "Cyclotomic":
        """Image under ζ_n -> ζ_n^k (k coprime to the conductor)."""
        n = self.order
        if gcd(k, n) != 1:
            raise ValueError(f"{k} is not a unit mod {n}")
        return _canonical(n, {e * k: a for e, a in self.coeffs})

    def conj(self) -> "Cyclotomic":
        if self.order <= 2:
            return self
        return _conjugate(self)

    def abs2(self) -> "Cyclotomic":
        """|a|^2 = a·conj(a), a real value."""
        return self * self.conj()

    def norm(self) -> Fraction:
        """Field norm down to Q (over the conductor field)."""
        if not self:
            return Fraction(0)
        value = self.as_rational()
        if value is not None:
            return value
        product = self
        for k in _units(self.order):
            if k != 1:
                product = product * self.galois(k)
        result = product.as_rational()
        assert result is not None
        return result

    def inv(self) -> "Cyclotomic":
        if not self:
            raise DivisionByZero("inverse of zero")
        q = self.as_rational()
        if q is not None:
            return Cyclotomic.from_rational(1 / q)
        return _inverse(self)

    def __truediv__(self, other: "Cyclotomic | RationalLike") -> "Cyclotomic":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZero("division by zero")
            return self.scale(1 / Fraction(other))
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other: RationalLike) -> "Cyclotomic":
        return Cyclotomic.coerce(other) * self.inv()

    def __pow__(self, exponent: int) -> "Cyclotomic":
        if exponent < 0:
            return self.inv() ** (-exponent)
        result, base = ONE, self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def root_of_unity_order(self) -> int | None:
        """Multiplicative order when the value is a root of unity, else None.

        A root of unity in Q(ζ_n) has order dividing lcm(2, n).
        """
        if not self:
            return None
        bound = lcm(2, self.order)
        if self**bound != ONE:
            return None
        return next(d for d in divisors(bound) if self**d == ONE)

    # --- text ---

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        out = []
        for index, (e, a) in enumerate(self.coeffs):
            magnitude = abs(a)
            if e == 0:
                body = _fmt_rational(magnitude)
            else:
                root = f"E({self.order})" if e == 1 else f"E({self.order})^{e}"
                body = root if magnitude == 1 else f"{_fmt_rational(magnitude)}*{root}"
            if index == 0:
                out.append(f"-{body}" if a < 0 else body)
            else:
                out.append(f" - {body}" if a < 0 else f" + {body}")
        return "".join(out)

    def __repr__(self) -> str:
        return f"Cyclotomic({self})"


@lru_cache(maxsize=1 << 16)
def _product(a: Cyclotomic, b: Cyclotomic) -> Cyclotomic:
    return sum_of_products(((a, b),))


@lru_cache(maxsize=1 << 16)
def _conjugate(a: Cyclotomic) -> Cyclotomic:
    return a.galois(-1)


@lru_cache(maxsize=1 << 14)
def _inverse(a: Cyclotomic) -> Cyclotomic:
    if len(a.coeffs) == 1:
        ((e, c),) = a.coeffs
        return _canonical(a.order, {-e: 1 / c})
    # a^-1 = (Π_{σ != id} σ(a)) / N(a)
    cofactor = ONE
    for k in _units(a.order):
        if k != 1:
            cofactor = cofactor * a.galois(k)
    norm = (a * cofactor).as_rational()
    assert norm is not None and norm != 0
    return cofactor.scale(1 / norm)


@lru_cache(maxsize=None)
def _units(n: int) -> tuple[int, ...]:
    return tuple(k for k in range(1, n) if gcd(k, n) == 1)


ZERO = Cyclotomic(1, ())
ONE = Cyclotomic(1, ((0, Fraction(1)),))
SQRT2 = _canonical(8, {1: 1, 3: -1})


def E(n: int, k: int = 1) -> Cyclotomic:
    return Cyclotomic.root_of_unity(n, k)


# =============================================================================
# Named operations
# =============================================================================


def add(a: Cyclotomic, b: Cyclotomic) -> Cyclotomic:
    return a + b


def mul(a: Cyclotomic, b: Cyclotomic) -> Cyclotomic:
    return a * b


def neg(a: Cyclotomic) -> Cyclotomic:
    return -a


def inv(a: Cyclotomic) -> Cyclotomic:
    return a.inv()


def conj(a: Cyclotomic) -> Cyclotomic:
    return a.conj()


def as_rational(a: Cyclotomic) -> Fraction | None:
    return a.as_rational()


def is_rational_integer(a: Cyclotomic) -> bool:
    return a.is_rational_integer()


def csum(values: Iterable[Cyclotomic | RationalLike]) -> Cyclotomic:
    """Sum with a single canonicalization at the end."""
    return sum_of_products((Cyclotomic.coerce(v),) for v in values)


def sum_of_products(terms: Iterable[Sequence[Cyclotomic]]) -> Cyclotomic:
    """Σ over terms of the product of their factors, canonicalized once.

    Coefficients are carried as integers over one common denominator while
    the raw exponent vectors are multiplied out in Q(ζ_n).
    """
    terms = [tuple(t) for t in terms]
    terms = [t for t in terms if all(t)]
    if not terms:
        return ZERO
    n = _common_order(*(v.order for t in terms for v in t))
    expanded: list[tuple[int, dict[int, int]]] = []
    for t in terms:
        denominator, acc = 1, {0: 1}
        for factor in t:
            d, lifted = _integral_terms(factor, n)
            denominator *= d
            step: defaultdict[int, int] = defaultdict(int)
            for e1, c1 in acc.items():
                for e2, c2 in lifted:
                    step[(e1 + e2) % n] += c1 * c2
            acc = step
        expanded.append((denominator, acc))
    common = lcm(*(d for d, _ in expanded))
    total: defaultdict[int, int] = defaultdict(int)
    for d, acc in expanded:
        lift = common // d
        for e, c in acc.items():
            total[e] += c * lift
    return _canonical(n, total, common)


def sqrt_nonneg_rational(q: RationalLike) -> Cyclotomic:
    """Exact nonnegative square root of a nonnegative rational.

    sqrt(a/b) = f·sqrt(m)/b with a·b = f²·m, m squarefree. For odd m the
    quadratic Gauss sum Σ_k ζ_m^(k²) is sqrt(m) (m ≡ 1 mod 4) or i·sqrt(m)
    (m ≡ 3 mod 4); a factor 2 contributes ζ_8 - ζ_8^3.
    """
    q = Fraction(q)
    if q < 0:
        raise NegativeRadicand(f"square root of negative rational {q}")
    if not q:
        return ZERO
    outer, m = 1, 1
    for p, e in factorint(q.numerator * q.denominator).items():
        outer *= p ** (e // 2)
        if e % 2:
            m *= p
    root = ONE
    if m % 2 == 0:
        root = SQRT2
        m //= 2
    if m > 1:
        gauss: defaultdict[int, int] = defaultdict(int)
        for k in range(m):
            gauss[k * k % m] += 1
        odd_root = _canonical(m, gauss)
        if m % 4 == 3:
            odd_root = odd_root * E(4, 3)
        root = root * odd_root
    return root.scale(Fraction(outer, q.denominator))


# =============================================================================
# Certified numerics
# =============================================================================


class Sign(IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1


def eval_interval(
    a: Cyclotomic, precision_bits: int
) -> tuple[RealInterval, RealInterval]:
    """Enclosures of (Re a, Im a)."""
    real, imag = [], []
    for e, c in a.coeffs:
        cos, sin = root_of_unity_interval(a.order, e, precision_bits)
        real.append((c, cos))
        imag.append((c, sin))
    return combine(real), combine(imag)


def sign_real(a: Cyclotomic, policy: PrecisionPolicy | None = None) -> Sign:
    if not a.is_real():
        raise NotReal(f"{a} is not real")
    if not a:
        return Sign.ZERO
    q = a.as_rational()
    if q is not None:
        return Sign.POSITIVE if q > 0 else Sign.NEGATIVE
    policy = policy or PrecisionPolicy()
    for bits in policy.schedule():
        real, _ = eval_interval(a, bits)
        decided = real.sign()
        if decided:
            return Sign(decided)
    raise PrecisionExhausted(
        f"sign of {a} undecided at {policy.max_bits} bits"
    )


def is_positive(a: Cyclotomic, policy: PrecisionPolicy | None = None) -> bool:
    """True iff a is real and > 0; False for non-real values."""
    if not a.is_real():
        return False
    return sign_real(a, policy) is Sign.POSITIVE
