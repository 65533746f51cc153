"""Exact scalar combinatorics: factorials, double factorials, binomials, Bernoulli numbers.

Every scalar in the package is a :class:`fractions.Fraction` or a Python int,
so no value is ever rounded.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod
from typing import Iterable

__all__ = [
    "Rational",
    "factorial",
    "double_factorial",
    "binomial_int",
    "multinomial",
    "bernoulli",
    "format_rational",
    "parse_rational",
    "weak_compositions",
    "nonincreasing_vectors",
    "subset_splits",
]

Rational = Fraction


@lru_cache(maxsize=None)
def double_factorial(m: int) -> int:
    """Return m!! for m >= -1, with (-1)!! = 0!! = 1."""
    if m < -1:
        raise ValueError(f"double factorial undefined for {m} < -1")
    if m <= 0:
        return 1
    return prod(range(m, 0, -2))


def binomial_int(p: int, k: int) -> int:
    """Generalized binomial coefficient, valid for every integer p.

    0 for k < 0, 1 for k == 0, p(p-1)...(p-k+1)/k! otherwise.
    """
    if k < 0:
        return 0
    if k == 0:
        return 1
    if p >= 0:
        return comb(p, k)
    # C(p, k) = (-1)^k C(k - p - 1, k) for negative p
    return (-1) ** k * comb(k - p - 1, k)


def multinomial(parts: Iterable[int]) -> int:
    """(sum parts)! / prod(part!) for nonnegative parts."""
    parts = list(parts)
    if any(p < 0 for p in parts):
        raise ValueError("multinomial parts must be nonnegative")
    out = factorial(sum(parts))
    for p in parts:
        out //= factorial(p)
    return out


_bernoulli_memo: list[Fraction] = [Fraction(1)]
_bernoulli_lock = threading.Lock()


def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number B_n with B_1 = -1/2.

    Uses sum_{k=0}^{n} C(n+1, k) B_k = 0, memoized.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    with _bernoulli_lock:
        memo = _bernoulli_memo
        for m in range(len(memo), n + 1):
            s = sum((comb(m + 1, k) * memo[k] for k in range(m)), Fraction(0))
            memo.append(-s / (m + 1))
        return memo[n]


def format_rational(q: Fraction | int) -> str:
    """Render as "num/den", dropping "/1"."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(s: str) -> Fraction:
    s = s.strip()
    if not s or any(c in s for c in ".eE_ "):
        raise ValueError(f"not an exact rational: {s!r}")
    return Fraction(s)


def weak_compositions(total: int, parts: int, minimum: int = 0):
    """Yield every tuple of ``parts`` integers >= minimum summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if total < parts * minimum:
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(minimum, total - (parts - 1) * minimum + 1):
        for rest in weak_compositions(total - first, parts - 1, minimum):
            yield (first,) + rest


def nonincreasing_vectors(total: int, parts: int, minimum: int = 0):
    """Yield non-increasing tuples of ``parts`` integers >= minimum summing to ``total``."""

    def rec(remaining: int, k: int, cap: int):
        if k == 0:
            if remaining == 0:
                yield ()
            return
        hi = min(cap, remaining - (k - 1) * minimum)
        lo = max(minimum, -(-remaining // k))
        for first in range(hi, lo - 1, -1):
            for rest in rec(remaining - first, k - 1, first):
                yield (first,) + rest

    if parts == 0:
        if total == 0:
            yield ()
        return
    yield from rec(total, parts, total)


def subset_splits(n: int):
    """Yield every ordered pair (I, J) partitioning range(n), empty parts allowed."""
    for mask in range(1 << n):
        I = tuple(i for i in range(n) if mask >> i & 1)
        J = tuple(i for i in range(n) if not mask >> i & 1)
        yield I, J
