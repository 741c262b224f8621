"""Scalar arithmetic shared by the geometry modules.

Two backends are used throughout the package:

* ``exact``: values are :class:`fractions.Fraction`, always stored in lowest
  terms, so equal values hash and compare identically.
* ``float``: values are Python floats; equality of squared distances is
  decided on :class:`QuantKey` (the value scaled by ``10**digits`` and
  rounded to an integer).

:class:`Dual` carries a first derivative alongside a value in either backend.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC

from .errors import InvalidScalar

Rational = Fraction

DEFAULT_DIGITS = 9


def parse_rational(text) -> Fraction:
    """Parse ``p/q``, an integer, or a decimal literal into an exact Fraction.

    Decimals are read exactly, so ``"0.1"`` is ``1/10``.
    """
    if isinstance(text, _RationalABC):
        return Fraction(text)
    s = str(text).strip()
    if not s:
        raise InvalidScalar("empty rational literal")
    try:
        if "/" in s:
            num, den = s.split("/", 1)
            num, den = int(num.strip()), int(den.strip())
            if den <= 0:
                raise InvalidScalar(f"denominator must be positive in {s!r}")
            return Fraction(num, den)
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidScalar(f"not a rational literal: {s!r}") from exc


def format_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True, order=True)
class QuantKey:
    """Integer surrogate for a floating value: ``round(value * 10**digits)``."""

    scaled: int
    digits: int = DEFAULT_DIGITS


def quantize_key(value: float, digits: int = DEFAULT_DIGITS) -> QuantKey:
    if not 1 <= digits <= 15:
        raise InvalidScalar(f"digits must lie in [1, 15], got {digits}")
    value = float(value)
    if not math.isfinite(value):
        raise InvalidScalar(f"cannot quantize non-finite value {value!r}")
    return QuantKey(round(value * 10**digits), digits)


def _lift(x) -> "Dual":
    return x if isinstance(x, Dual) else Dual(x, 0)


class Dual:
    """First-order dual number ``value + derivative * eps`` with ``eps**2 = 0``.

    Works over Fractions or floats; mixing with plain scalars treats them as
    constants.
    """

    __slots__ = ("value", "derivative")

    def __init__(self, value, derivative=0):
        self.value = value
        self.derivative = derivative

    @classmethod
    def variable(cls, value) -> "Dual":
        return cls(value, 1)

    def __repr__(self):
        return f"Dual({self.value!r}, {self.derivative!r})"

    def __eq__(self, other):
        other = _lift(other)
        return self.value == other.value and self.derivative == other.derivative

    def __hash__(self):
        return hash((self.value, self.derivative))

    def __add__(self, other):
        if isinstance(other, Dual):
            return Dual(self.value + other.value, self.derivative + other.derivative)
        return Dual(self.value + other, self.derivative)

    __radd__ = __add__

    def __neg__(self):
        return Dual(-self.value, -self.derivative)

    def __sub__(self, other):
        if isinstance(other, Dual):
            return Dual(self.value - other.value, self.derivative - other.derivative)
        return Dual(self.value - other, self.derivative)

    def __rsub__(self, other):
        return Dual(other - self.value, -self.derivative)

    def __mul__(self, other):
        if isinstance(other, Dual):
            return Dual(
                self.value * other.value,
                self.derivative * other.value + self.value * other.derivative,
            )
        return Dual(self.value * other, self.derivative * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _lift(other)
        if other.value == 0:
            raise ZeroDivisionError("dual division by a value with zero real part")
        v = _div(self.value, other.value)
        return Dual(v, _div(self.derivative - v * other.derivative, other.value))

    def __rtruediv__(self, other):
        return _lift(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise TypeError("Dual supports only non-negative integer powers")
        result = Dual(1, 0)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result


def _div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        return Fraction(a, b)
    return a / b


def value_of(x):
    return x.value if isinstance(x, Dual) else x


def derivative_of(x):
    return x.derivative if isinstance(x, Dual) else 0


@dataclass(frozen=True)
class UnitCirclePoint:
    c: object
    s: object


def half_angle_point(t) -> UnitCirclePoint:
    """Rational point ``((1-t^2)/(1+t^2), 2t/(1+t^2))`` on the unit circle."""
    if isinstance(t, int):
        t = Fraction(t)
    tt = t * t
    den = 1 + tt
    return UnitCirclePoint((1 - tt) / den, (2 * t) / den)


def angle_multiple(p: UnitCirclePoint, k: int) -> UnitCirclePoint:
    """Return ``(cos k*theta, sin k*theta)`` given ``(cos theta, sin theta)``.

    ``k = 0`` yields ``(1, 0)``.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return UnitCirclePoint(1 + 0 * p.c, 0 * p.s)
    c_prev, s_prev = 1 + 0 * p.c, 0 * p.s
    c_cur, s_cur = p.c, p.s
    two_c = 2 * p.c
    for _ in range(k - 1):
        c_prev, c_cur = c_cur, two_c * c_cur - c_prev
        s_prev, s_cur = s_cur, two_c * s_cur - s_prev
    return UnitCirclePoint(c_cur, s_cur)
