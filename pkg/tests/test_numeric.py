from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from distinct_distances.errors import InvalidScalar
from distinct_distances.numeric import (Dual, QuantKey, UnitCirclePoint, angle_multiple, format_rational,
                                        half_angle_point, parse_rational, quantize_key)

rationals = st.fractions(max_denominator=10**6).filter(lambda x: abs(x) < 10**6)


@pytest.mark.parametrize("value,expected", [(0.0, 0), (1.0000000004, 1000000000), (2.5e-10, 0)])
def test_quantize_key_examples(value, expected):
    assert quantize_key(value, 9) == QuantKey(expected, 9)


def test_quantize_key_oracle_for_half_ulp_case():
    # round(2.5e-10 * 1e9) = round(0.25)
    assert quantize_key(2.5e-10, 9).scaled == round(0.25)


@pytest.mark.parametrize("bad", [float("nan"), float("inf"), -float("inf")])
def test_quantize_key_rejects_non_finite(bad):
    with pytest.raises(InvalidScalar):
        quantize_key(bad)


@given(st.floats(-1e5, 1e5), st.floats(-1e5, 1e5))
def test_quantize_key_monotone(a, b):
    lo, hi = sorted((a, b))
    assert quantize_key(lo).scaled <= quantize_key(hi).scaled


@pytest.mark.parametrize("text,expected", [
    ("3/4", F(3, 4)), ("-6/8", F(-3, 4)), ("12", F(12)), ("0.1", F(1, 10)), ("-2.50", F(-5, 2)),
])
def test_parse_rational(text, expected):
    assert parse_rational(text) == expected


@pytest.mark.parametrize("bad", ["", "1/0", "1/-2", "abc", "nan"])
def test_parse_rational_rejects(bad):
    with pytest.raises(InvalidScalar):
        parse_rational(bad)


def test_format_rational():
    assert format_rational(F(6, 3)) == "2"
    assert format_rational(F(-3, 12)) == "-1/4"


def test_half_angle_point_examples():
    assert half_angle_point(F(0)) == UnitCirclePoint(1, 0)
    assert half_angle_point(F(1)) == UnitCirclePoint(0, 1)
    assert half_angle_point(F(1, 2)) == UnitCirclePoint(F(3, 5), F(4, 5))
    p = half_angle_point(2)
    assert isinstance(p.c, F)


@settings(max_examples=1000)
@given(rationals)
def test_half_angle_point_on_circle(t):
    p = half_angle_point(t)
    assert p.c * p.c + p.s * p.s == 1


@pytest.mark.parametrize("p,k,expected", [
    ((F(1), F(0)), 7, (1, 0)),
    ((F(3, 5), F(4, 5)), 2, (F(-7, 25), F(24, 25))),
    ((F(0), F(1)), 2, (-1, 0)),
    ((F(3, 5), F(4, 5)), 0, (1, 0)),
])
def test_angle_multiple_examples(p, k, expected):
    r = angle_multiple(UnitCirclePoint(*p), k)
    assert (r.c, r.s) == expected


def _add(p, q):
    return UnitCirclePoint(p.c * q.c - p.s * q.s, p.s * q.c + p.c * q.s)


@given(rationals, st.integers(1, 16))
def test_angle_multiple_matches_repeated_addition(t, k):
    p = half_angle_point(t)
    acc = p
    for _ in range(k - 1):
        acc = _add(acc, p)
    r = angle_multiple(p, k)
    assert (r.c, r.s) == (acc.c, acc.s)
    assert r.c * r.c + r.s * r.s == 1


@given(rationals)
def test_dual_derivative_of_cubic(x):
    y = Dual(x, 1)
    out = y * y * y + 2 * y
    assert out.value == x**3 + 2 * x
    assert out.derivative == 3 * x * x + 2


@given(rationals, rationals, rationals, rationals)
def test_dual_ring_laws(a, da, b, db):
    u, v = Dual(a, da), Dual(b, db)
    assert (u + v).derivative == da + db
    assert (u * v).derivative == da * b + a * db
    assert (u - v).derivative == da - db


def test_dual_division_and_mixed_scalars():
    x = Dual(F(2), 1)
    q = 1 / (1 + x * x)  # d/dx = -2x / (1+x^2)^2
    assert q.value == F(1, 5)
    assert q.derivative == F(-4, 25)
    assert (3 - x).derivative == -1
    assert (x ** 3).derivative == 12
    with pytest.raises(ZeroDivisionError):
        x / Dual(0, 1)


def test_dual_integer_division_stays_exact():
    assert (Dual(1, 0) / Dual(3, 1)).value == F(1, 3)
