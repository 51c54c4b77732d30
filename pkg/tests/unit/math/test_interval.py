"""
Tests for fourier_algebra.math.interval

ENCLOSURES: root_of_unity_interval(n, k, bits) returns intervals that contain
cos(2πk/n) and sin(2πk/n); quarter turns are exact points.
POLICY: schedule() doubles from start_bits and always ends at max_bits.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fourier_algebra.math.interval import (
    PrecisionPolicy,
    RealInterval,
    combine,
    root_of_unity_interval,
)


def _square(interval: RealInterval) -> RealInterval:
    ends = sorted([interval.lo * interval.lo, interval.hi * interval.hi])
    lo = Fraction(0) if interval.contains(0) else ends[0]
    return RealInterval(lo, ends[1])


# =============================================================================
# RealInterval
# =============================================================================


def test_empty_interval_rejected():
    with pytest.raises(ValueError, match="empty interval"):
        RealInterval(Fraction(1), Fraction(0))


def test_sign_decisions():
    assert RealInterval(Fraction(1, 10), Fraction(1)).sign() == 1
    assert RealInterval(Fraction(-1), Fraction(-1, 10)).sign() == -1
    assert RealInterval.point(0).sign() == 0
    assert RealInterval(Fraction(-1), Fraction(1)).sign() is None


def test_scale_by_negative_flips_endpoints():
    scaled = RealInterval(Fraction(1), Fraction(2)).scale(Fraction(-1))
    assert (scaled.lo, scaled.hi) == (Fraction(-2), Fraction(-1))


def test_combine_is_exact_on_points():
    total = combine([(Fraction(2), RealInterval.point(3)), (Fraction(-1), RealInterval.point(1))])
    assert total == RealInterval.point(5)


# =============================================================================
# ROOTS OF UNITY
# =============================================================================


@pytest.mark.parametrize(
    "n,k,cos,sin", [(1, 0, 1, 0), (2, 1, -1, 0), (4, 1, 0, 1), (4, 3, 0, -1), (8, 2, 0, 1)]
)
def test_quarter_turns_are_exact(n, k, cos, sin):
    c, s = root_of_unity_interval(n, k, 64)
    assert c == RealInterval.point(cos)
    assert s == RealInterval.point(sin)


def test_eighth_root_encloses_half_sqrt2():
    c, s = root_of_unity_interval(8, 1, 128)
    assert 2 * c.lo * c.lo <= 1 <= 2 * c.hi * c.hi
    assert c.width < Fraction(1, 2**100)
    assert s.sign() == 1


@settings(deadline=None)
@given(st.integers(1, 60), st.integers(-100, 100), st.sampled_from([16, 64, 200]))
def test_enclosures_contain_unit_circle(n, k, bits):
    c, s = root_of_unity_interval(n, k, bits)
    c2, s2 = _square(c), _square(s)
    assert c2.lo + s2.lo <= 1 <= c2.hi + s2.hi


# =============================================================================
# PrecisionPolicy
# =============================================================================


def test_default_schedule_doubles_to_cap():
    assert list(PrecisionPolicy().schedule()) == [128, 256, 512, 1024, 2048, 4096]


def test_schedule_ends_at_uneven_cap():
    assert list(PrecisionPolicy(100, 300).schedule()) == [100, 200, 300]
    assert list(PrecisionPolicy(64, 64).schedule()) == [64]
