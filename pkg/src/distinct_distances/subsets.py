"""Subsets whose pairwise distances are all distinct.

Three routes produce a :class:`SubsetResult`:

* ``Randomized``: sample each parameter with probability ``pi``, then delete
  one point from every surviving pair-of-pairs collision.
* ``SidonDegenerate``: for curves with ``rho(x, y) = h(phi(x) - phi(y))``,
  pick a Sidon subset of ``phi(A)``.
* ``Oracle``: exhaustive branch-and-bound, for small inputs.

Every result is re-verified on the actual points before it is returned.
"""

from __future__ import annotations

import math
import random
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Optional

from .curves import ParamSet, closed_form_phi, squared_distance
from .distances import build_histogram, detect_backend, distance_key
from .errors import AbsentClosedForm, InvalidDimension, SizeGuard, TooSmall
from .numeric import DEFAULT_DIGITS
from .sidon import real_sidon_subset

RANDOMIZED = "Randomized"
SIDON_ROUTE = "SidonDegenerate"
ORACLE = "Oracle"

DEFAULT_C = 2.0
DEFAULT_TRIALS = 20
SAMPLING_EXPONENT = Fraction(5, 9)


@dataclass
class SubsetResult:
    subset: object
    trials: int
    pi_used: float
    deletions_Q: int
    deletions_S: int
    certified: bool
    route: str
    indices: tuple = ()

    @property
    def size(self) -> int:
        return len(self.indices)


@dataclass(frozen=True)
class BoundParams:
    d: int
    r: int = 1
    a: int = 2

    def __post_init__(self):
        if self.d < 1:
            raise InvalidDimension(f"dimension must be >= 1, got {self.d}")
        if self.r < 1:
            raise InvalidDimension(f"degree must be >= 1, got {self.r}")
        if self.a != 2:
            raise InvalidDimension("only a = 2 (distances) is supported")


def verify_distinct_distances(points, backend: str | None = None, digits: int = DEFAULT_DIGITS) -> bool:
    h = build_histogram(points, backend, digits)
    return all(m == 1 for m in h.entries.values())


def sampling_probability(n: int, C: float = DEFAULT_C) -> float:
    return min(1.0, C * n ** (-float(SAMPLING_EXPONENT)))


def _collisions(idx, keyof):
    """All pairs of unordered point pairs at equal distance, as member tuples."""
    buckets = defaultdict(list)
    for i, j in combinations(idx, 2):
        buckets[keyof(i, j)].append((i, j))
    out = []
    for pairs in buckets.values():
        for p, q in combinations(pairs, 2):
            out.append(tuple(sorted(set(p) | set(q))))
    return out


def _resolve(idx, keyof, order_key):
    """Delete one member of every collision, highest remaining degree first.

    Collisions are processed by ascending smallest member (under
    ``order_key``); ties in degree go to the larger member. Returns the kept
    indices and the counts of quadruple and triple collisions that caused a
    deletion.
    """
    cols = _collisions(idx, keyof)
    cols.sort(key=lambda c: [order_key(v) for v in sorted(c, key=order_key)])
    degree = defaultdict(int)
    containing = defaultdict(list)
    for ci, c in enumerate(cols):
        for v in c:
            degree[v] += 1
            containing[v].append(ci)
    alive = [True] * len(cols)
    deleted = set()
    dq = ds = 0
    for ci, c in enumerate(cols):
        if not alive[ci]:
            continue
        victim = max(c, key=lambda v: (degree[v], order_key(v)))
        deleted.add(victim)
        if len(c) == 4:
            dq += 1
        else:
            ds += 1
        for cj in containing[victim]:
            if alive[cj]:
                alive[cj] = False
                for v in cols[cj]:
                    degree[v] -= 1
    kept = [v for v in idx if v not in deleted]
    return kept, dq, ds


def _key_cache(points, backend, digits):
    cache = {}

    def keyof(i, j):
        k = (i, j) if i < j else (j, i)
        if k not in cache:
            cache[k] = distance_key(squared_distance(points[i], points[j]), backend, digits)
        return cache[k]

    return keyof


def randomized_subset(A: ParamSet, C: float = DEFAULT_C, trials: int = DEFAULT_TRIALS,
                      seed: int = 0, digits: int = DEFAULT_DIGITS) -> SubsetResult:
    """Sample-and-delete extraction of a distinct-distance subset.

    Each trial keeps every parameter independently with probability
    ``pi = min(1, C * n^(-5/9))`` and then removes one point from each
    remaining equal-distance collision. The largest certified subset over all
    trials wins (earliest trial on ties).
    """
    n = len(A)
    if n < 2:
        raise TooSmall("randomized_subset needs at least two parameters")
    pi = sampling_probability(n, C)
    points = A.points()
    keyof = _key_cache(points, A.backend, digits)
    order_key = lambda i: A.params[i]
    best = None
    for trial in range(trials):
        rng = random.Random(f"{seed}:{trial}")
        sample = [i for i in range(n) if rng.random() < pi]
        kept, dq, ds = _resolve(sample, keyof, order_key)
        ok = verify_distinct_distances([points[i] for i in kept], A.backend, digits)
        if not ok:
            raise AssertionError("deletion left a repeated distance")
        if best is None or len(kept) > len(best[0]):
            best = (kept, dq, ds)
    kept, dq, ds = best
    sub = A.subset(A.params[i] for i in kept)
    return SubsetResult(sub, trials, pi, dq, ds, True, RANDOMIZED, tuple(kept))


def _widest_window(order, phis, radius):
    """Largest run of ``order`` (sorted by phi) with spread strictly below ``radius``."""
    if math.isinf(radius):
        return list(order)
    best, lo = (0, 0), 0
    for hi in range(len(order)):
        while float(phis[order[hi]]) - float(phis[order[lo]]) >= radius:
            lo += 1
        if hi + 1 - lo > best[1] - best[0]:
            best = (lo, hi + 1)
    return order[best[0]:best[1]]


def sidon_route_subset(A: ParamSet, seed: int = 0, digits: int = DEFAULT_DIGITS) -> SubsetResult:
    """Distinct-distance subset for curves with ``rho = h(phi(x) - phi(y))``.

    Distinct differences of ``phi`` give distinct values of ``h`` as long as
    all differences stay inside the range where ``h`` is injective in ``|z|``,
    so the parameters are first restricted to the widest window of ``phi``
    narrower than that range.
    """
    cf = closed_form_phi(A.curve)
    if cf is None:
        raise AbsentClosedForm(f"{A.curve.family} has no closed form h(phi(x) - phi(y))")
    n = len(A)
    phis = [cf.phi(t) for t in A.params]
    order = sorted(range(n), key=lambda i: phis[i])
    window = _widest_window(order, phis, cf.injective_radius)
    if len(window) >= 2:
        by_phi = {Fraction(phis[i]): i for i in window}
        cert = real_sidon_subset([phis[i] for i in window], seed=seed)
        chosen = sorted(by_phi[Fraction(v)] for v in cert.subset)
    else:
        chosen = list(window)
    points = A.points()
    dq = ds = 0
    if not verify_distinct_distances([points[i] for i in chosen], A.backend, digits):
        keyof = _key_cache(points, A.backend, digits)
        chosen, dq, ds = _resolve(chosen, keyof, lambda i: A.params[i])
    certified = verify_distinct_distances([points[i] for i in chosen], A.backend, digits)
    sub = A.subset(A.params[i] for i in chosen)
    return SubsetResult(sub, 1, 1.0, dq, ds, certified, SIDON_ROUTE, tuple(chosen))


def exhaustive_subset_oracle(points, backend: str | None = None, digits: int = DEFAULT_DIGITS) -> SubsetResult:
    """Maximum distinct-distance subset by branch-and-bound (n <= 25).

    Points are taken in index order; a candidate survives only while its
    distances to the kept set are new and mutually distinct. The first
    maximum found is the lexicographically smallest index set.
    Accepts a list of points or a ParamSet.
    """
    pset = points if isinstance(points, ParamSet) else None
    if pset is not None:
        backend = pset.backend
        points = pset.points()
    points = [tuple(p) for p in points]
    n = len(points)
    if n > 25:
        raise SizeGuard(f"exhaustive_subset_oracle is limited to 25 points, got {n}")
    backend = backend or detect_backend(points)
    build_histogram(points, backend, digits)  # rejects duplicates
    K = [[None] * n for _ in range(n)]
    for i, j in combinations(range(n), 2):
        K[i][j] = K[j][i] = distance_key(squared_distance(points[i], points[j]), backend, digits)

    best = []

    def dfs(kept, dists, cands):
        nonlocal best
        if len(kept) > len(best):
            best = list(kept)
        for pos, c in enumerate(cands):
            if len(kept) + len(cands) - pos <= len(best):
                return
            new = [K[c][s] for s in kept]
            d2 = dists | set(new)
            kept.append(c)
            nxt = []
            for v in cands[pos + 1:]:
                dv = [K[v][s] for s in kept]
                if len(set(dv)) == len(dv) and not any(x in d2 for x in dv):
                    nxt.append(v)
            dfs(kept, d2, nxt)
            kept.pop()

    dfs([], set(), list(range(n)))
    chosen = tuple(best)
    sub = pset.subset(pset.params[i] for i in chosen) if pset is not None else [points[i] for i in chosen]
    certified = verify_distinct_distances([points[i] for i in chosen], backend, digits)
    return SubsetResult(sub, 0, 1.0, 0, 0, certified, ORACLE, chosen)


def bound_exponent(b) -> Fraction:
    """Exponent ``4 / (9 + 12(d - 1))`` of the distinct-distance subset bound in dimension d."""
    d = b.d if isinstance(b, BoundParams) else int(b)
    if d < 1:
        raise InvalidDimension(f"dimension must be >= 1, got {d}")
    return Fraction(4, 9 + 12 * (d - 1))


def ceil_t_9_4(t: int) -> int:
    """Smallest integer c with c^4 >= t^9, i.e. ceil(t^(9/4)), exactly."""
    target = t**9
    c = math.isqrt(math.isqrt(target))
    while c**4 < target:
        c += 1
    return c


def recursion_H(t: int, d: int, base: Optional[Callable[[int], int]] = None) -> int:
    """Iterated inverse bound ``4^(d-1) * H_1(t) * t^(3(d-1))``.

    The dimension-reduction constant is taken as 1 and degree bookkeeping is
    ignored, so only the shape of the bound is meaningful, not its constants.
    """
    if d < 1:
        raise InvalidDimension(f"dimension must be >= 1, got {d}")
    if t < 2:
        raise ValueError(f"t must be >= 2, got {t}")
    base = base or ceil_t_9_4
    return 4 ** (d - 1) * int(base(t)) * t ** (3 * (d - 1))
