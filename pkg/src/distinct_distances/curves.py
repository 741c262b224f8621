"""Parameterized curve families and the squared-distance function on them.

Every family evaluates through one generic code path that accepts Fractions,
floats or :class:`~distinct_distances.numeric.Dual` numbers, so the partial
derivatives of the squared distance come from forward-mode differentiation
of the same arithmetic that computes the distance itself.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .errors import InsufficientDomain, InvalidReparam, InvalidScalar, OutOfDomain, ZeroDirection, DimensionMismatch
from .numeric import Dual, angle_multiple, derivative_of, half_angle_point, value_of

LINE = "Line"
POLYNOMIAL = "Polynomial"
CIRCLE = "RationalCircle"
TORUS = "Torus"

DEGENERATE = "DegenerateCandidate"
GENERAL = "General"

# Number of grid cells used by classify_curve; interior nodes number GRID - 1 > 10**6.
GRID = 2**20 + 1
FLOAT_DET_TOL = 1e-9


def _exact(t):
    """Promote ints (including inside duals) to Fractions so division stays exact."""
    if isinstance(t, bool):
        t = int(t)
    if isinstance(t, int):
        return Fraction(t)
    if isinstance(t, Dual):
        return Dual(_exact(t.value), _exact(t.derivative))
    return t


@dataclass(frozen=True)
class Interval:
    """Parameter interval; ``None`` bounds mean unbounded."""

    lo: Optional[Fraction]
    hi: Optional[Fraction]
    open: bool = False

    def contains(self, t) -> bool:
        if isinstance(t, float) and not math.isfinite(t):
            return False
        if self.lo is not None and (t < self.lo or (self.open and t == self.lo)):
            return False
        if self.hi is not None and (t > self.hi or (self.open and t == self.hi)):
            return False
        return True


class ParamCurve:
    """Base class; subclasses implement ``coords`` generically over scalar types."""

    family: str = ""

    @property
    def dim(self) -> int:
        raise NotImplementedError

    @property
    def domain(self) -> Interval:
        raise NotImplementedError

    def sample_box(self) -> tuple:
        """Bounded interval that ``classify_curve`` and samplers draw from."""
        d = self.domain
        lo = d.lo if d.lo is not None else Fraction(0)
        hi = d.hi if d.hi is not None else lo + 1
        return lo, hi

    def coords(self, t) -> tuple:
        raise NotImplementedError


def _check_box(box):
    if box is None:
        return None
    lo, hi = Fraction(box[0]), Fraction(box[1])
    if not lo < hi:
        raise InvalidScalar(f"empty parameter box [{lo}, {hi}]")
    return (lo, hi)


@dataclass(frozen=True)
class Line(ParamCurve):
    base: tuple
    direction: tuple
    box: Optional[tuple] = None

    family = LINE

    def __post_init__(self):
        object.__setattr__(self, "base", tuple(Fraction(v) for v in self.base))
        object.__setattr__(self, "direction", tuple(Fraction(v) for v in self.direction))
        object.__setattr__(self, "box", _check_box(self.box))
        if len(self.base) != len(self.direction) or not self.base:
            raise DimensionMismatch(
                f"base has {len(self.base)} coordinates, direction has {len(self.direction)}"
            )
        if all(v == 0 for v in self.direction):
            raise ZeroDirection("line direction vector is zero")

    @property
    def dim(self):
        return len(self.base)

    @property
    def domain(self):
        if self.box is None:
            return Interval(None, None)
        return Interval(*self.box)

    def coords(self, t):
        return tuple(b + d * t for b, d in zip(self.base, self.direction))


def _horner(coeffs, t):
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * t + c
    return acc


def trim_poly(coeffs) -> tuple:
    coeffs = [Fraction(c) for c in coeffs]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs) if coeffs else (Fraction(0),)


@dataclass(frozen=True)
class Polynomial(ParamCurve):
    """Curve ``t -> (p_1(t), ..., p_D(t))``; each ``p_i`` is a coefficient tuple, constant term first."""

    polys: tuple
    box: Optional[tuple] = None

    family = POLYNOMIAL

    def __post_init__(self):
        object.__setattr__(self, "polys", tuple(trim_poly(p) for p in self.polys))
        object.__setattr__(self, "box", _check_box(self.box))
        if not self.polys:
            raise DimensionMismatch("polynomial curve needs at least one coordinate")
        if all(len(p) == 1 for p in self.polys):
            raise ZeroDirection("polynomial curve is constant")

    @property
    def dim(self):
        return len(self.polys)

    @property
    def domain(self):
        if self.box is None:
            return Interval(None, None)
        return Interval(*self.box)

    def coords(self, t):
        return tuple(_horner(p, t) for p in self.polys)


@dataclass(frozen=True)
class RationalCircle(ParamCurve):
    """Circle of radius ``radius`` in the plane, parameterized by the half-angle ``t = tan(theta/2)``."""

    radius: Fraction

    family = CIRCLE

    def __post_init__(self):
        object.__setattr__(self, "radius", Fraction(self.radius))
        if self.radius <= 0:
            raise InvalidScalar("circle radius must be positive")

    @property
    def dim(self):
        return 2

    @property
    def domain(self):
        return Interval(Fraction(-1), Fraction(1), open=True)

    def coords(self, t):
        p = half_angle_point(t)
        return (self.radius * p.c, self.radius * p.s)


@dataclass(frozen=True)
class Torus(ParamCurve):
    """Algebraic helix ``(a_i cos(l_i theta), a_i sin(l_i theta))_i`` in half-angle form.

    Frequencies are divided by their gcd on construction.
    """

    amplitudes: tuple
    freqs: tuple

    family = TORUS

    def __post_init__(self):
        amps = tuple(Fraction(a) for a in self.amplitudes)
        freqs = tuple(int(l) for l in self.freqs)
        if len(amps) != len(freqs) or not amps:
            raise DimensionMismatch(f"{len(amps)} amplitudes but {len(freqs)} frequencies")
        if any(a == 0 for a in amps):
            raise InvalidScalar("torus amplitudes must be nonzero")
        if any(l <= 0 for l in freqs):
            raise InvalidScalar("torus frequencies must be positive integers")
        g = math.gcd(*freqs)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "freqs", tuple(l // g for l in freqs))

    @property
    def dim(self):
        return 2 * len(self.amplitudes)

    @property
    def domain(self):
        return Interval(Fraction(-1), Fraction(1), open=True)

    def coords(self, t):
        p = half_angle_point(t)
        out = []
        for a, lam in zip(self.amplitudes, self.freqs):
            m = angle_multiple(p, lam)
            out.extend((a * m.c, a * m.s))
        return tuple(out)


@dataclass(frozen=True)
class Reparam(ParamCurve):
    """``inner`` evaluated at ``scale * u + shift``; used for families not closed under substitution."""

    inner: ParamCurve
    scale: Fraction
    shift: Fraction

    @property
    def family(self):
        return self.inner.family

    @property
    def dim(self):
        return self.inner.dim

    def _preimage(self, lo, hi):
        a, b = self.scale, self.shift
        ends = [None if v is None else (v - b) / a for v in (lo, hi)]
        if a < 0:
            ends.reverse()
        return ends

    @property
    def domain(self):
        d = self.inner.domain
        lo, hi = self._preimage(d.lo, d.hi)
        return Interval(lo, hi, d.open)

    def sample_box(self):
        lo, hi = self._preimage(*self.inner.sample_box())
        return lo, hi

    def coords(self, u):
        return self.inner.coords(self.scale * u + self.shift)


# ---------------------------------------------------------------------------
# evaluation


def eval_point(curve: ParamCurve, t) -> tuple:
    t = _exact(t)
    if not curve.domain.contains(value_of(t)):
        raise OutOfDomain(f"parameter {value_of(t)} outside the working interval of {curve.family}")
    return curve.coords(t)


def squared_distance(p, q):
    total = 0
    for a, b in zip(p, q):
        d = a - b
        total = total + d * d
    return total


def rho(curve: ParamCurve, x, y):
    """Squared Euclidean distance between the curve points at parameters ``x`` and ``y``."""
    return squared_distance(eval_point(curve, x), eval_point(curve, y))


def _frozen(point):
    return tuple(Dual(value_of(c), 0) for c in point)


def rho_partials(curve: ParamCurve, x, y) -> tuple:
    """Partial derivatives of ``rho`` in its first and second argument."""
    x, y = _exact(x), _exact(y)
    px = eval_point(curve, Dual(x, 1))
    py = eval_point(curve, Dual(y, 1))
    return _partials_from(px, py)


def _partials_from(px, py):
    r1 = squared_distance(px, _frozen(py))
    r2 = squared_distance(_frozen(px), py)
    return derivative_of(r1), derivative_of(r2)


def _det_products(curve, x, xp, y, yp):
    pts = {}
    for v in (x, xp, y, yp):
        v = _exact(v)
        if v not in pts:
            pts[v] = eval_point(curve, Dual(v, 1))
    P = lambda u, w: _partials_from(pts[_exact(u)], pts[_exact(w)])
    a1, a2 = P(x, y)
    b1, b2 = P(x, yp)
    c1, c2 = P(xp, y)
    d1, d2 = P(xp, yp)
    return a1 * b2 * c2 * d1, a2 * b1 * c1 * d2


def det_JT(curve: ParamCurve, x, xp, y, yp):
    """Four-point determinant built from products of the partials of ``rho``.

    Vanishes identically exactly when ``rho(x, y) = h(phi(x) - phi(y))``
    locally, i.e. on lines, circles and algebraic helices.
    """
    p1, p2 = _det_products(curve, x, xp, y, yp)
    return p1 - p2


@dataclass
class ClassificationReport:
    verdict: str
    witnesses: list = field(default_factory=list)
    samples: int = 0
    backend: str = "exact"


def _grid_value(lo, hi, k, backend):
    v = lo + (hi - lo) * Fraction(k, GRID)
    return float(v) if backend == "float" else v


def classify_curve(curve: ParamCurve, samples: int = 200, seed: int = 0,
                   backend: str = "exact", tol: float = FLOAT_DET_TOL) -> ClassificationReport:
    """Sample ``det_JT`` on random grid quadruples and report the dichotomy verdict.

    A ``DegenerateCandidate`` verdict is probabilistic evidence (every sampled
    determinant vanished), not a proof.
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    lo, hi = curve.sample_box()
    if lo is None or hi is None or not lo < hi:
        raise InsufficientDomain("curve has fewer than 4 distinct grid parameters")
    rng = random.Random(seed)
    witnesses = []
    nonzero = 0
    for _ in range(samples):
        ks = rng.sample(range(1, GRID), 4)
        quad = tuple(_grid_value(lo, hi, k, backend) for k in ks)
        p1, p2 = _det_products(curve, *quad)
        det = p1 - p2
        if backend == "float":
            zero = abs(det) < tol * (1 + max(abs(p1), abs(p2)))
        else:
            zero = det == 0
        if not zero:
            nonzero += 1
            if len(witnesses) < 10:
                witnesses.append((quad, det))
    verdict = GENERAL if nonzero else DEGENERATE
    return ClassificationReport(verdict, witnesses, samples, backend)


def reparam_affine(curve: ParamCurve, a, b) -> ParamCurve:
    """Substitute ``t <- a*u + b``; ``eval_point(new, u) == eval_point(curve, a*u + b)``."""
    a, b = Fraction(a), Fraction(b)
    if a == 0:
        raise InvalidReparam("reparameterization scale must be nonzero")
    if isinstance(curve, Line):
        base = tuple(p + d * b for p, d in zip(curve.base, curve.direction))
        box = None
        if curve.box is not None:
            box = tuple(sorted(((curve.box[0] - b) / a, (curve.box[1] - b) / a)))
        return Line(base, tuple(d * a for d in curve.direction), box)
    if isinstance(curve, Polynomial):
        lin = (b, a)
        polys = []
        for p in curve.polys:
            acc = (p[-1],)
            for c in reversed(p[:-1]):
                acc = _poly_add(_poly_mul(acc, lin), (c,))
            polys.append(acc)
        box = None
        if curve.box is not None:
            box = tuple(sorted(((curve.box[0] - b) / a, (curve.box[1] - b) / a)))
        return Polynomial(tuple(polys), box)
    if isinstance(curve, Reparam):
        return Reparam(curve.inner, curve.scale * a, curve.scale * b + curve.shift)
    return Reparam(curve, a, b)


def _poly_add(p, q):
    n = max(len(p), len(q))
    return tuple((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n))


def _poly_mul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return tuple(out)


@dataclass(frozen=True)
class ClosedForm:
    """``rho(x, y) == h(phi(x) - phi(y))`` on the working interval.

    ``injective_radius`` bounds ``|z|`` on which ``h`` is strictly increasing
    in ``|z|`` (so equal values of ``h`` force equal ``|z|``).
    """

    phi: Callable
    h: Callable
    phi_text: str
    h_text: str
    injective_radius: float
    exact: bool


def _angle(t):
    return 2.0 * math.atan(float(t))


def _torus_injective_radius(amps, freqs):
    # h'(z) = sum 2 a^2 l sin(l z); first positive zero bounds the monotone range.
    dh = lambda z: sum(2 * float(a) ** 2 * l * math.sin(l * z) for a, l in zip(amps, freqs))
    steps = 20000
    prev = None
    for i in range(1, steps + 1):
        z = math.pi * i / steps
        if dh(z) <= 0:
            return prev if prev is not None else 0.0
        prev = z
    return math.pi


def closed_form_phi(curve: ParamCurve) -> Optional[ClosedForm]:
    if isinstance(curve, Reparam):
        inner = closed_form_phi(curve.inner)
        if inner is None:
            return None
        a, b = curve.scale, curve.shift
        if inner.exact:
            phi = lambda u, f=inner.phi: f(a * _exact(u) + b)
        else:
            phi = lambda u, f=inner.phi: f(float(a) * float(u) + float(b))
        return ClosedForm(phi, inner.h, f"{inner.phi_text} o ({a}*u + {b})", inner.h_text,
                          inner.injective_radius, inner.exact)
    if isinstance(curve, Line):
        w = sum(d * d for d in curve.direction)
        return ClosedForm(lambda t: _exact(t), lambda z, w=w: w * z * z,
                          "phi(t) = t", f"h(z) = {w}*z^2", math.inf, True)
    if isinstance(curve, RationalCircle):
        r2 = float(curve.radius) ** 2
        return ClosedForm(_angle, lambda z, r2=r2: 2 * r2 * (1 - math.cos(z)),
                          "phi(t) = 2*atan(t)", f"h(z) = 2*{curve.radius}^2*(1 - cos z)",
                          math.pi, False)
    if isinstance(curve, Torus):
        terms = [(float(a) ** 2, l) for a, l in zip(curve.amplitudes, curve.freqs)]
        h = lambda z, terms=terms: sum(2 * a2 * (1 - math.cos(l * z)) for a2, l in terms)
        text = " + ".join(f"2*{a}^2*(1 - cos({l}z))" for a, l in zip(curve.amplitudes, curve.freqs))
        return ClosedForm(_angle, h, "phi(t) = 2*atan(t)", f"h(z) = {text}",
                          _torus_injective_radius(curve.amplitudes, curve.freqs), False)
    return None


@dataclass(frozen=True)
class ParamSet:
    """A finite set of distinct parameters on a curve (the set ``A``)."""

    curve: ParamCurve
    params: tuple
    backend: str = "exact"

    def __post_init__(self):
        if self.backend not in ("exact", "float"):
            raise ValueError(f"unknown backend {self.backend!r}")
        conv = float if self.backend == "float" else _exact
        params = tuple(conv(p) for p in self.params)
        if len(set(params)) != len(params):
            raise InvalidScalar("parameters must be pairwise distinct")
        dom = self.curve.domain
        for p in params:
            if not dom.contains(p):
                raise OutOfDomain(f"parameter {p} outside the working interval")
        object.__setattr__(self, "params", params)

    def __len__(self):
        return len(self.params)

    def points(self) -> list:
        return [eval_point(self.curve, t) for t in self.params]

    def subset(self, params) -> "ParamSet":
        return ParamSet(self.curve, tuple(params), self.backend)
