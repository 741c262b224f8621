"""Distance statistics of finite point sets, plus brute-force oracles.

Histograms count *unordered* pairs. ``energy_Q`` converts to ordered pairs
because the quadruple count ranges over ordered tuples.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .curves import ParamSet, rho, squared_distance
from .errors import DuplicatePoint, SizeGuard, TooSmall
from .numeric import DEFAULT_DIGITS, QuantKey, quantize_key

ORDERED_FULL = "ordered_full"
OFFDIAG = "offdiag"


def detect_backend(points) -> str:
    for p in points:
        for c in p:
            if isinstance(c, float):
                return "float"
    return "exact"


def distance_key(d, backend: str, digits: int = DEFAULT_DIGITS):
    if backend == "float":
        return quantize_key(d, digits)
    return Fraction(d)


def _is_zero(key) -> bool:
    return key.scaled == 0 if isinstance(key, QuantKey) else key == 0


@dataclass
class DistanceHistogram:
    entries: dict
    n: int
    backend: str = "exact"
    digits: int = DEFAULT_DIGITS

    @property
    def pairs(self) -> int:
        return self.n * (self.n - 1) // 2


def _pair_keys(points, backend, digits):
    for i, j in combinations(range(len(points)), 2):
        key = distance_key(squared_distance(points[i], points[j]), backend, digits)
        if _is_zero(key):
            raise DuplicatePoint(i, j)
        yield key


def build_histogram(points, backend: str | None = None, digits: int = DEFAULT_DIGITS) -> DistanceHistogram:
    """Histogram of squared distances over all unordered pairs, O(n^2)."""
    points = [tuple(p) for p in points]
    backend = backend or detect_backend(points)
    entries = Counter(_pair_keys(points, backend, digits))
    h = DistanceHistogram(dict(sorted(entries.items())), len(points), backend, digits)
    if h.n >= 2:
        cs_lower_bound(h)
    return h


def distinct_count(h: DistanceHistogram) -> int:
    return len(h.entries)


def energy_Q(h: DistanceHistogram, mode: str = OFFDIAG) -> int:
    """Quadruple count from pair multiplicities.

    ``offdiag``: sum over nonzero distances of (ordered multiplicity)^2.
    ``ordered_full``: additionally counts the n^2 quadruples (x, x, y, y)
    whose two pairs are both degenerate.
    """
    off = sum((2 * m) ** 2 for m in h.entries.values())
    if mode == OFFDIAG:
        return off
    if mode == ORDERED_FULL:
        return h.n * h.n + off
    raise ValueError(f"unknown energy mode {mode!r}")


def isosceles_S(points, backend: str | None = None, digits: int = DEFAULT_DIGITS) -> int:
    """Ordered triples ``(x, y, y')`` of distinct points with |xy| = |xy'|."""
    points = [tuple(p) for p in points]
    backend = backend or detect_backend(points)
    n = len(points)
    apex = [Counter() for _ in range(n)]
    for i, j in combinations(range(n), 2):
        key = distance_key(squared_distance(points[i], points[j]), backend, digits)
        if _is_zero(key):
            raise DuplicatePoint(i, j)
        apex[i][key] += 1
        apex[j][key] += 1
    return sum(c * (c - 1) for counts in apex for c in counts.values())


def cs_lower_bound(h: DistanceHistogram) -> Fraction:
    """Cauchy-Schwarz bound ``pairs^2 / sum m^2`` on the number of distinct distances.

    Raises AssertionError if the bound exceeds the actual count, which would
    mean the histogram is inconsistent.
    """
    if h.n < 2:
        raise TooSmall("need at least two points")
    energy = sum(m * m for m in h.entries.values())
    bound = Fraction(h.pairs * h.pairs, energy)
    if bound > distinct_count(h):
        raise AssertionError(f"Cauchy-Schwarz violated: {bound} > {distinct_count(h)}")
    return bound


def brute_force_Q(params: ParamSet, digits: int = DEFAULT_DIGITS) -> int:
    """O(n^4) count of parameter quadruples with rho(x, y) == rho(x', y')."""
    A = params.params
    n = len(A)
    if n > 64:
        raise SizeGuard(f"brute_force_Q is limited to 64 parameters, got {n}")
    R = [[distance_key(rho(params.curve, x, y), params.backend, digits) for y in A] for x in A]
    flat = [R[i][j] for i in range(n) for j in range(n)]
    return sum(1 for a in flat for b in flat if a == b)


def brute_force_S(points, backend: str | None = None, digits: int = DEFAULT_DIGITS) -> int:
    """O(n^3) twin of :func:`isosceles_S`."""
    points = [tuple(p) for p in points]
    backend = backend or detect_backend(points)
    n = len(points)
    key = lambda i, j: distance_key(squared_distance(points[i], points[j]), backend, digits)
    count = 0
    for x in range(n):
        for y in range(n):
            for yp in range(n):
                if len({x, y, yp}) == 3 and key(x, y) == key(x, yp):
                    count += 1
    return count


def distance_report(points, backend: str | None = None, digits: int = DEFAULT_DIGITS) -> dict:
    points = [tuple(p) for p in points]
    h = build_histogram(points, backend, digits)
    dim = len(points[0]) if points else 0
    report = {
        "n": h.n,
        "dim": dim,
        "distinct": distinct_count(h),
        "energy_full": energy_Q(h, ORDERED_FULL),
        "energy_offdiag": energy_Q(h, OFFDIAG),
        "isosceles": isosceles_S(points, h.backend, digits),
        "cs_bound_num": None,
        "cs_bound_den": None,
    }
    if h.n >= 2:
        b = cs_lower_bound(h)
        report["cs_bound_num"], report["cs_bound_den"] = b.numerator, b.denominator
    return report
