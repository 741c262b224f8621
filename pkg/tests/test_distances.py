import math
import random
from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from distinct_distances.curves import Line, ParamSet, Polynomial, RationalCircle, Torus
from distinct_distances.distances import (OFFDIAG, ORDERED_FULL, brute_force_Q, brute_force_S, build_histogram,
                                          cs_lower_bound, distance_report, distinct_count, energy_Q, isosceles_S)
from distinct_distances.errors import DuplicatePoint, SizeGuard, TooSmall
from distinct_distances.numeric import half_angle_point

SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]
THREE = [(0,), (1,), (2,)]


def ngon(n):
    return [(math.cos(2 * math.pi * k / n), math.sin(2 * math.pi * k / n)) for k in range(n)]


def test_histogram_examples():
    assert build_histogram(SQUARE).entries == {1: 4, 2: 2}
    assert build_histogram([(0,), (1,), (3,)]).entries == {1: 1, 4: 1, 9: 1}
    h = build_histogram([(0, 0), (F(1, 2), 3)])
    assert list(h.entries.values()) == [1]
    assert list(h.entries) == sorted(h.entries)


def test_duplicate_points_report_indices():
    with pytest.raises(DuplicatePoint) as err:
        build_histogram([(0, 0), (1, 0), (0, 0)])
    assert err.value.indices == (0, 2)
    with pytest.raises(DuplicatePoint):
        isosceles_S([(1.0,), (1.0 + 1e-12,)])


def test_distinct_count_examples():
    assert distinct_count(build_histogram(SQUARE)) == 2
    assert distinct_count(build_histogram(ngon(6), "float")) == 3
    assert distinct_count(build_histogram([(k,) for k in range(10)])) == 9


def test_energy_examples():
    h = build_histogram(THREE)
    assert energy_Q(h, ORDERED_FULL) == 29
    assert energy_Q(h, OFFDIAG) == 20
    assert energy_Q(build_histogram(SQUARE), OFFDIAG) == 80
    with pytest.raises(ValueError):
        energy_Q(h, "bogus")


def test_isosceles_examples():
    assert isosceles_S(THREE) == 2
    # 2 per apex: each corner sees its two neighbours at distance 1
    assert isosceles_S(SQUARE) == 8 == brute_force_S(SQUARE)
    assert isosceles_S([(0,), (1,), (3,)]) == 0


def test_cs_bound_examples():
    assert cs_lower_bound(build_histogram([(0,), (1,), (3,)])) == 3
    assert cs_lower_bound(build_histogram(THREE)) == F(9, 5)
    assert cs_lower_bound(build_histogram(SQUARE)) == F(9, 5)
    with pytest.raises(TooSmall):
        cs_lower_bound(build_histogram([(0,)]))


def test_brute_force_Q_examples():
    x_axis = Line((0, 0), (1, 0))
    assert brute_force_Q(ParamSet(x_axis, (0, 1, 2))) == 29
    assert brute_force_Q(ParamSet(x_axis, (0,))) == 1
    assert brute_force_Q(ParamSet(x_axis, (0, 1))) == 8
    with pytest.raises(SizeGuard):
        brute_force_Q(ParamSet(x_axis, tuple(range(65))))


def test_distance_report_fields():
    rep = distance_report(SQUARE)
    assert rep == {"n": 4, "dim": 2, "distinct": 2, "energy_full": 96, "energy_offdiag": 80, "isosceles": 8,
                   "cs_bound_num": 9, "cs_bound_den": 5}


FAMILIES = [Line((0, 0), (1, 2)), Polynomial(((0, 1), (0, 0, 1))), RationalCircle(1), Torus((1, 1), (1, 2))]


def _random_paramset(rng, backend):
    curve = rng.choice(FAMILIES)
    lo, hi = curve.sample_box()
    n = rng.randint(1, 12)
    # small denominators make repeated distances likely
    ks = rng.sample(range(1, 16), n)
    return ParamSet(curve, tuple(lo + (hi - lo) * F(k, 16) for k in ks), backend)


@pytest.mark.parametrize("seed", range(20))
def test_energy_matches_brute_force(seed):
    rng = random.Random(seed)
    A = _random_paramset(rng, rng.choice(["exact", "float"]))
    pts = A.points()
    h = build_histogram(pts, A.backend)
    assert sum(h.entries.values()) == h.pairs
    assert energy_Q(h, ORDERED_FULL) == brute_force_Q(A)
    assert energy_Q(h, ORDERED_FULL) == len(pts) ** 2 + energy_Q(h, OFFDIAG)
    assert isosceles_S(pts, A.backend) == brute_force_S(pts, A.backend)


small_sets = st.lists(st.tuples(st.integers(-6, 6), st.integers(-6, 6)), min_size=2, max_size=10, unique=True)


@settings(max_examples=100, deadline=None)
@given(small_sets, st.randoms(use_true_random=False))
def test_permutation_invariance(pts, rnd):
    shuffled = list(pts)
    rnd.shuffle(shuffled)
    assert distance_report(pts) == distance_report(shuffled)
    assert build_histogram(pts).entries == build_histogram(shuffled).entries


@settings(max_examples=100, deadline=None)
@given(small_sets, st.fractions(max_denominator=50), st.tuples(st.fractions(max_denominator=9),
                                                                st.fractions(max_denominator=9)), st.booleans())
def test_isometry_invariance(pts, t, shift, flip):
    u = half_angle_point(t)
    sign = -1 if flip else 1

    def move(p):
        x, y = p
        return (u.c * x - u.s * y + shift[0], sign * (u.s * x + u.c * y) + shift[1])

    moved = [move(p) for p in pts]
    assert build_histogram(moved).entries == build_histogram(pts).entries
    assert isosceles_S(moved) == isosceles_S(pts)


@settings(max_examples=100, deadline=None)
@given(small_sets)
def test_cs_bound_never_exceeds_distinct(pts):
    h = build_histogram(pts)
    assert cs_lower_bound(h) <= distinct_count(h)
    assert energy_Q(h, OFFDIAG) >= 4 * h.pairs


@pytest.mark.parametrize("n", range(4, 25))
def test_regular_ngon(n):
    assert distinct_count(build_histogram(ngon(n), "float", 9)) == n // 2


def test_integer_grid_is_exact():
    pts = list(product(range(4), repeat=2))
    h = build_histogram(pts)
    # squared distances a^2 + b^2 with 0 <= a, b <= 3, not both zero
    assert distinct_count(h) == len({a * a + b * b for a in range(4) for b in range(4)} - {0})
