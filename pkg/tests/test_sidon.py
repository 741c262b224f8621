import math
import random
from fractions import Fraction as F
from itertools import combinations, combinations_with_replacement

import pytest
from hypothesis import given, settings, strategies as st

from distinct_distances.errors import DuplicateElement, InvalidScalar, NotPrime, SizeGuard, TooSmall
from distinct_distances.sidon import (greedy_sidon, integer_sidon_subset, is_sidon, max_sidon_oracle,
                                      quantize_reduce, real_sidon_subset, singer_sidon)


def sums_oracle(A):
    """Sidon check straight from the definition: all sums a_i + a_j (i <= j) distinct."""
    vals = [F(a) for a in A]
    sums = [a + b for a, b in combinations_with_replacement(vals, 2)]
    return len(sums) == len(set(sums))


def primes_upto(n):
    return [p for p in range(2, n + 1) if all(p % d for d in range(2, math.isqrt(p) + 1))]


def test_is_sidon_examples():
    assert not is_sidon([1, 2, 3])
    assert is_sidon([1, 2, 5, 11])
    assert is_sidon([F(1, 3), 7])
    assert is_sidon([0.1, 0.2])
    with pytest.raises(DuplicateElement):
        is_sidon([1, 2, 2])


def test_is_sidon_matches_sums_oracle_on_small_subsets():
    for k in range(7):
        for S in combinations(range(1, 13), k):
            assert is_sidon(S) == sums_oracle(S), S


def test_is_sidon_is_exact_on_floats():
    # 0.1 + 0.3 and 0.2 + 0.2 differ as binary floats
    assert is_sidon([0.1, 0.2, 0.3]) == sums_oracle([0.1, 0.2, 0.3])
    assert not is_sidon([0.5, 1.0, 1.5])


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(-60, 60), min_size=1, max_size=8, unique=True),
       st.fractions(max_denominator=30).filter(lambda x: x != 0), st.fractions(max_denominator=30))
def test_shift_scale_invariance(A, alpha, beta):
    assert is_sidon(A) == is_sidon([alpha * a + beta for a in A])


def test_greedy_examples():
    assert greedy_sidon(range(1, 9)).subset == [1, 2, 4, 8]
    assert greedy_sidon([1, 2, 5, 11]).subset == [1, 2, 5, 11]
    assert greedy_sidon([7]).subset == [7]
    with pytest.raises(DuplicateElement):
        greedy_sidon([3, 3])


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 500), min_size=1, max_size=40, unique=True))
def test_greedy_floor_and_certificate(A):
    cert = greedy_sidon(sorted(A))
    assert cert.checked and sums_oracle(cert.subset)
    assert len(cert.subset) >= math.floor(len(A) ** (1 / 3) + 1e-9)


def test_singer_examples():
    assert singer_sidon(2).subset == [1, 2, 6]
    assert len(singer_sidon(3).subset) == 4
    assert len(singer_sidon(5).subset) == 6
    with pytest.raises(NotPrime):
        singer_sidon(9)
    with pytest.raises(SizeGuard):
        singer_sidon(10007)


@pytest.mark.parametrize("p", primes_upto(101))
def test_singer_all_primes_to_101(p):
    cert = singer_sidon(p)
    assert cert.checked
    assert len(cert.subset) == p + 1
    assert min(cert.subset) >= 1 and max(cert.subset) <= p * p + p + 1
    assert sums_oracle(cert.subset)


def test_singer_is_perfect_difference_set():
    p = 7
    m = p * p + p + 1
    S = singer_sidon(p).subset
    diffs = sorted((a - b) % m for a in S for b in S if a != b)
    assert diffs == list(range(1, m))


def test_integer_subset_examples():
    assert len(integer_sidon_subset([1, 2, 3]).subset) == 2
    cert = integer_sidon_subset(range(1, 8))
    assert len(cert.subset) == 4 and cert.engine == "exact"
    S = singer_sidon(5).subset
    assert integer_sidon_subset(S).subset == S
    assert integer_sidon_subset(range(1, 8)).subset == [1, 2, 5, 7]
    assert all(isinstance(v, int) for v in cert.subset)


def test_oracle_examples():
    assert len(max_sidon_oracle([1, 2, 3]).subset) == 2
    cert = max_sidon_oracle(range(1, 13))
    assert len(cert.subset) == 5
    assert cert.subset == [1, 2, 5, 10, 12]
    assert not is_sidon([1, 2, 5, 11, 12])
    assert max_sidon_oracle([1, 2, 5, 11]).subset == [1, 2, 5, 11]
    with pytest.raises(SizeGuard):
        max_sidon_oracle(range(25))


@pytest.mark.parametrize("seed", range(15))
def test_engine_matches_oracle(seed):
    rng = random.Random(seed)
    A = rng.sample(range(1, 60), rng.randint(2, 16))
    eng = integer_sidon_subset(A)
    orc = max_sidon_oracle(A)
    assert len(eng.subset) == len(orc.subset)
    assert eng.subset == orc.subset
    assert sums_oracle(eng.subset)


def test_large_input_uses_greedy_restarts():
    cert = integer_sidon_subset(range(1, 41))
    assert cert.engine == "greedy-restarts" and sums_oracle(cert.subset)
    assert integer_sidon_subset(range(1, 41), seed=3).subset == integer_sidon_subset(range(1, 41), seed=3).subset


sidon_keys = st.lists(st.integers(0, 400), min_size=1, max_size=10, unique=True).filter(sums_oracle)


@settings(max_examples=1000, deadline=None)
@given(sidon_keys, st.fractions(min_value=F(1, 100), max_value=100, max_denominator=1000), st.data())
def test_lifting_property(K, q, data):
    rs = data.draw(st.lists(st.fractions(min_value=-q / 4, max_value=q / 4, max_denominator=10**4)
                            .filter(lambda r: abs(r) < q / 4), min_size=len(K), max_size=len(K)))
    assert is_sidon([k * q + r for k, r in zip(K, rs)])


def test_quantize_example():
    red = quantize_reduce([F(1, 10), F(35, 100), F(7, 10)])
    assert red.q == F(1, 2)
    assert red.residue_class == 0
    assert red.x0 == F(1, 2)
    assert red.survivors == [F(1, 10)]
    assert red.keys == {F(1, 10): 1}


def test_quantize_integers():
    n = 20
    red = quantize_reduce(range(1, n + 1))
    assert red.q == 2
    assert len(red.survivors) >= n / 4


def test_quantize_dominant_class_keeps_everything_in_it():
    # the closest pair sits q/2 apart, so it always splits across two classes
    X = [1, 2, 5, 9, 13, 17]
    red = quantize_reduce(X)
    assert red.q == 2
    assert sorted(red.survivors) == [1, 5, 9, 13, 17]


def test_quantize_errors():
    with pytest.raises(TooSmall):
        quantize_reduce([1])
    with pytest.raises(DuplicateElement):
        quantize_reduce([1, 1])
    with pytest.raises(InvalidScalar):
        quantize_reduce([0, 1])


def check_reduction(X):
    red = quantize_reduce(X)
    assert len(red.survivors) >= math.ceil(len(X) / 4)
    assert len(set(red.keys.values())) == len(red.survivors)
    for x in red.survivors:
        k, r = red.keys[x], red.remainders[x]
        assert F(x) + red.x0 == k * red.q + r
        assert 0 <= r < red.q / 4
        assert k >= 0


@settings(max_examples=1000, deadline=None)
@given(st.lists(st.floats(min_value=1e-6, max_value=1e6), min_size=2, max_size=40, unique=True))
def test_quantize_invariants(X):
    check_reduction(X)


def test_real_pipeline_examples():
    base = [1, 2, 5, 11]
    eps = [0.1, -0.2, 0.05, 0.2]
    X = [k + e for k, e in zip(base, eps)]
    assert sorted(real_sidon_subset(X).subset) == sorted(X)
    cert = real_sidon_subset([1, 2, 5, 11])
    assert cert.checked and set(cert.subset) <= {1, 2, 5, 11}
    with pytest.raises(TooSmall):
        real_sidon_subset([1.0])


def test_real_pipeline_shifts_non_positive_input():
    cert = real_sidon_subset([-3.5, 0.0, 1.25, 7.0, 7.5])
    assert sums_oracle(cert.subset)
    assert set(cert.subset) <= {-3.5, 0.0, 1.25, 7.0, 7.5}


@pytest.mark.parametrize("seed", range(10))
def test_real_pipeline_random_uniforms(seed):
    rng = random.Random(seed)
    X = [rng.random() for _ in range(64)]
    cert = real_sidon_subset(X)
    assert cert.checked and sums_oracle(cert.subset)
    assert len(cert.subset) >= 4
    assert set(cert.subset) <= set(X)
