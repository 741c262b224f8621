"""Sidon (B2) sets over the integers and the reals.

A set is Sidon when all sums ``a_i + a_j`` with ``i <= j`` are distinct,
equivalently when all positive differences of distinct pairs are distinct.
Every check here is exact: floats are converted to the Fraction they
represent before any arithmetic.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import DuplicateElement, InvalidScalar, NotPrime, SizeGuard, TooSmall

EXACT_THRESHOLD = 28
GREEDY_RESTARTS = 32


@dataclass
class SidonCertificate:
    subset: list
    checked: bool
    engine: str = ""


@dataclass
class SidonReduction:
    q: Fraction
    x0: Fraction
    survivors: list
    keys: dict
    remainders: dict
    residue_class: int = 0


def _exact_values(A):
    vals = [Fraction(a) for a in A]
    if len(set(vals)) != len(vals):
        raise DuplicateElement("elements must be pairwise distinct")
    return vals


def _is_sidon_exact(vals) -> bool:
    vals = sorted(vals)
    seen = set()
    for i in range(len(vals)):
        for j in range(i):
            d = vals[i] - vals[j]
            if d in seen:
                return False
            seen.add(d)
    return True


def is_sidon(A) -> bool:
    return _is_sidon_exact(_exact_values(A))


def _certify(subset, engine) -> SidonCertificate:
    if not is_sidon(subset):
        raise AssertionError(f"{engine} produced a non-Sidon set {subset}")
    return SidonCertificate(list(subset), True, engine)


def _icbrt(n: int) -> int:
    r = round(n ** (1 / 3)) if n else 0
    while r**3 > n:
        r -= 1
    while (r + 1) ** 3 <= n:
        r += 1
    return r


def _greedy(items, key=lambda v: v):
    """Keep each item (in the given order) iff the kept set stays Sidon."""
    kept, kept_vals, diffs = [], [], set()
    for item in items:
        v = key(item)
        new = [abs(v - u) for u in kept_vals]
        if len(set(new)) != len(new) or any(d in diffs for d in new):
            continue
        diffs.update(new)
        kept.append(item)
        kept_vals.append(v)
    return kept


def greedy_sidon(A, order=None) -> SidonCertificate:
    """Ascending greedy scan (or the given ``order``); certified, size >= floor(n^(1/3))."""
    vals = _exact_values(A)
    items = list(A)
    if order is None:
        items = sorted(items, key=Fraction)
    else:
        items = [items[i] for i in order]
    kept = _greedy(items, key=Fraction)
    if len(kept) < _icbrt(len(vals)):
        raise AssertionError("greedy Sidon guarantee violated")
    if order is not None:
        kept = sorted(kept, key=Fraction)
    return _certify(kept, "greedy")


# ---------------------------------------------------------------------------
# Singer perfect difference sets


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> set:
    out, f = set(), 2
    while f * f <= n:
        while n % f == 0:
            out.add(f)
            n //= f
        f += 1
    if n > 1:
        out.add(n)
    return out


class _GF3:
    """GF(p^3) as GF(p)[x] / (x^3 - c2 x^2 - c1 x - c0); elements are (a0, a1, a2)."""

    def __init__(self, p, c):
        self.p, self.c = p, c

    def mul(self, u, v):
        p, (c0, c1, c2) = self.p, self.c
        a0, a1, a2 = u
        b0, b1, b2 = v
        d0 = a0 * b0
        d1 = a0 * b1 + a1 * b0
        d2 = a0 * b2 + a1 * b1 + a2 * b0
        d3 = a1 * b2 + a2 * b1
        d4 = a2 * b2
        # x^4 = c2 x^3 + c1 x^2 + c0 x, then x^3 = c2 x^2 + c1 x + c0
        d3 += d4 * c2
        d2 += d4 * c1
        d1 += d4 * c0
        d2 += d3 * c2
        d1 += d3 * c1
        d0 += d3 * c0
        return (d0 % p, d1 % p, d2 % p)

    def pow(self, u, e):
        r = (1, 0, 0)
        while e:
            if e & 1:
                r = self.mul(r, u)
            u = self.mul(u, u)
            e >>= 1
        return r

    def normalize(self, u):
        """Projective representative: scale so the last nonzero coordinate is 1."""
        p = self.p
        for a in reversed(u):
            if a:
                inv = pow(a, -1, p)
                return tuple(b * inv % p for b in u)
        raise ZeroDivisionError("zero element has no projective class")


def _primitive_field(p):
    order = p**3 - 1
    factors = _prime_factors(p - 1) | _prime_factors(p * p + p + 1)
    x = (0, 1, 0)
    for c0 in range(1, p):
        for c1 in range(p):
            for c2 in range(p):
                F = _GF3(p, (c0, c1, c2))
                if F.pow(x, order) != (1, 0, 0):
                    continue
                if all(F.pow(x, order // ell) != (1, 0, 0) for ell in factors):
                    return F
    raise RuntimeError(f"no primitive cubic found over GF({p})")


def singer_sidon(p: int) -> SidonCertificate:
    """Singer difference set of size p+1 inside {1, ..., p^2+p+1}.

    The projective points of the line spanned by 1 and x in PG(2, p), indexed
    by discrete logarithm of a primitive element modulo p^2+p+1, form a
    perfect difference set; shifting by one gives an integer Sidon set.
    """
    if not isinstance(p, int) or not _is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p > 10**4:
        raise SizeGuard("singer_sidon supports p <= 10^4")
    m = p * p + p + 1
    F = _primitive_field(p)
    g = (0, 1, 0)
    targets = [(1, 0, 0)] + [F.normalize((a, 1, 0)) for a in range(p)]
    # baby-step giant-step in the cyclic quotient group of order m, one shared table
    B = max(1, math.isqrt(m * len(targets)))
    table = {}
    cur = (1, 0, 0)
    for j in range(min(B, m)):
        table.setdefault(F.normalize(cur), j)
        cur = F.mul(cur, g)
    giant = F.pow(g, (p**3 - 1) - (B % (p**3 - 1)))  # g^{-B}
    logs = []
    for t in targets:
        y = t
        for i in range(m // B + 1):
            j = table.get(F.normalize(y))
            if j is not None:
                logs.append((i * B + j) % m)
                break
            y = F.mul(y, giant)
        else:
            raise RuntimeError("discrete log not found")
    subset = sorted(v + 1 for v in logs)
    return _certify(subset, "singer")


# ---------------------------------------------------------------------------
# reals -> integers


def quantize_reduce(X) -> SidonReduction:
    """Quantize distinct positive reals to distinct integer keys.

    With ``q = 2 * min gap`` every interval ``[kq/4, (k+1)q/4)`` holds at most
    one point; the most populated quarter-residue class survives and after the
    shift ``x0`` each survivor is ``key * q + r`` with ``0 <= r < q/4``.
    """
    originals = list(X)
    if len(originals) < 2:
        raise TooSmall("quantize_reduce needs at least two elements")
    vals = _exact_values(originals)
    if any(v <= 0 for v in vals):
        raise InvalidScalar("quantize_reduce expects positive values")
    s = sorted(vals)
    q = 2 * min(b - a for a, b in zip(s, s[1:]))
    classes = [[] for _ in range(4)]
    for orig, v in zip(originals, vals):
        k = math.floor(v / q)
        r = v - k * q
        classes[math.floor(4 * r / q)].append((orig, v))
    i0 = max(range(4), key=lambda i: (len(classes[i]), -i))
    x0 = (4 - i0) * q / 4
    keys, rems = {}, {}
    for orig, v in classes[i0]:
        k = math.floor((v + x0) / q)
        keys[orig] = k
        rems[orig] = v + x0 - k * q
    survivors = [orig for orig, _ in classes[i0]]
    return SidonReduction(q, x0, survivors, keys, rems, i0)


def _bnb_max_sidon(vals, lower_bound=0):
    """Lexicographically smallest maximum Sidon subset of sorted distinct ``vals``.

    Include-first DFS with candidate filtering: a candidate stays only while
    it adds no repeated difference to the kept set; a branch is cut when
    kept + candidates cannot beat the incumbent size.
    """
    best = [None]
    best_size = [max(lower_bound - 1, 0)]

    def dfs(kept, diffs, cands):
        if len(kept) > best_size[0]:
            best[0], best_size[0] = list(kept), len(kept)
        for idx, c in enumerate(cands):
            if len(kept) + len(cands) - idx <= best_size[0]:
                return
            newd = {c - s for s in kept}
            d2 = diffs | newd
            kept.append(c)
            nxt = [d for d in cands[idx + 1:]
                   if d - c not in d2 and all(d - s not in newd for s in kept[:-1])]
            dfs(kept, d2, nxt)
            kept.pop()

    dfs([], set(), list(vals))
    return best[0] or []


def integer_sidon_subset(K, exact_threshold: int = EXACT_THRESHOLD, seed: int = 0) -> SidonCertificate:
    """Maximum Sidon subset by branch-and-bound for small inputs, else best of seeded greedy restarts."""
    originals = {Fraction(k): k for k in K}
    vals = sorted(_exact_values(list(K)))
    if not vals:
        return SidonCertificate([], True, "empty")
    if len(vals) <= exact_threshold:
        floor = len(_greedy(vals))
        best, engine = _bnb_max_sidon(vals, floor), "exact"
    else:
        best, engine = _greedy(vals), "greedy-restarts"
        for r in range(GREEDY_RESTARTS):
            order = vals[:]
            random.Random(f"{seed}:{r}").shuffle(order)
            cand = _greedy(order)
            if len(cand) > len(best):
                best = cand
    return _certify([originals[v] for v in sorted(best)], engine)


def max_sidon_oracle(A) -> SidonCertificate:
    """Exhaustive maximum Sidon subset (lexicographically smallest) for |A| <= 24.

    Plain include/exclude search that re-checks the whole kept set at every
    step; deliberately shares nothing with the engine in integer_sidon_subset.
    """
    originals = sorted(A, key=Fraction)
    vals = _exact_values(originals)
    if len(vals) > 24:
        raise SizeGuard(f"max_sidon_oracle is limited to 24 elements, got {len(vals)}")
    n = len(vals)
    best = []

    def search(i, kept):
        nonlocal best
        if len(kept) > len(best):
            best = list(kept)
        if i == n or len(kept) + (n - i) <= len(best):
            return
        kept.append(i)
        if _is_sidon_exact([vals[j] for j in kept]):
            search(i + 1, kept)
        kept.pop()
        search(i + 1, kept)

    search(0, [])
    return _certify([originals[j] for j in best], "oracle")


def real_sidon_subset(X, exact_threshold: int = EXACT_THRESHOLD, seed: int = 0) -> SidonCertificate:
    """Sidon subset of distinct reals via quantization to integer keys.

    Pipeline: shift to positive, quantize_reduce, integer Sidon subset of the
    keys, map keys back. The result is then extended greedily with any
    remaining input that keeps it Sidon, and certified on the reals.
    """
    originals = list(X)
    if len(originals) < 2:
        raise TooSmall("real_sidon_subset needs at least two elements")
    vals = _exact_values(originals)
    lo = min(vals)
    shift = 1 - lo if lo <= 0 else 0
    shifted = {v + shift: orig for orig, v in zip(originals, vals)}
    red = quantize_reduce(list(shifted))
    by_key = {k: x for x, k in red.keys.items()}
    core = integer_sidon_subset(list(by_key), exact_threshold, seed)
    chosen = sorted(by_key[k] for k in core.subset)
    chosen_set = set(chosen)
    rest = [v for v in sorted(shifted) if v not in chosen_set]
    kept = _greedy(chosen + rest)
    subset = sorted((shifted[v] for v in kept), key=Fraction)
    cert = _certify(subset, f"pipeline/{core.engine}")
    return cert
