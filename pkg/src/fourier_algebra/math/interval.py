"""Certified real intervals with rational endpoints.

Roots of unity are enclosed with mpmath's outward-rounded interval kernels
at an explicit precision (no global mpmath context is touched), then every
further step is exact rational arithmetic on the endpoints.
"""

from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from fractions import Fraction

from mpmath import libmp

_GUARD_BITS = 10


@dataclass(frozen=True)
class RealInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, value: Fraction | int) -> "RealInterval":
        v = Fraction(value)
        return cls(v, v)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, value: Fraction | int) -> bool:
        return self.lo <= value <= self.hi

    def sign(self) -> int | None:
        """-1/0/+1 when the interval decides it, None when it straddles zero."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == self.hi == 0:
            return 0
        return None

    def scale(self, factor: Fraction) -> "RealInterval":
        if factor >= 0:
            return RealInterval(self.lo * factor, self.hi * factor)
        return RealInterval(self.hi * factor, self.lo * factor)

    def __add__(self, other: "RealInterval") -> "RealInterval":
        return RealInterval(self.lo + other.lo, self.hi + other.hi)


@dataclass(frozen=True)
class PrecisionPolicy:
    """Escalation schedule for sign decisions: start, double, stop at the cap."""

    start_bits: int = 128
    max_bits: int = 4096

    def schedule(self) -> Iterator[int]:
        bits = max(1, self.start_bits)
        while bits < self.max_bits:
            yield bits
            bits *= 2
        yield self.max_bits


def _to_interval(mpi: tuple) -> RealInterval:
    lo, hi = mpi
    return RealInterval(
        Fraction(*libmp.to_rational(lo)), Fraction(*libmp.to_rational(hi))
    )


def root_of_unity_interval(
    n: int, k: int, precision_bits: int
) -> tuple[RealInterval, RealInterval]:
    """Enclosures of (cos 2πk/n, sin 2πk/n)."""
    k %= n
    if k == 0:
        return RealInterval.point(1), RealInterval.point(0)
    if 2 * k == n:
        return RealInterval.point(-1), RealInterval.point(0)
    if 4 * k == n:
        return RealInterval.point(0), RealInterval.point(1)
    if 4 * k == 3 * n:
        return RealInterval.point(0), RealInterval.point(-1)

    wp = precision_bits + _GUARD_BITS
    pi = (
        libmp.mpf_pi(wp, libmp.round_floor),
        libmp.mpf_pi(wp, libmp.round_ceiling),
    )
    turns = (
        libmp.from_rational(2 * k, n, wp, libmp.round_floor),
        libmp.from_rational(2 * k, n, wp, libmp.round_ceiling),
    )
    angle = libmp.mpi_mul(pi, turns, wp)
    cos, sin = libmp.mpi_cos_sin(angle, precision_bits)
    return _to_interval(cos), _to_interval(sin)


def combine(terms: Iterable[tuple[Fraction, RealInterval]]) -> RealInterval:
    """Exact enclosure of Σ a·x for rational a and enclosed x."""
    total = RealInterval.point(0)
    for coeff, enclosure in terms:
        total = total + enclosure.scale(coeff)
    return total
