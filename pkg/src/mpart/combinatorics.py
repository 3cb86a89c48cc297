"""Exact counting functions: falling factorials, Stirling numbers of the
second kind and the gadget surjection counts ``f(ell, s, k)``."""

from __future__ import annotations

from functools import lru_cache
import math
from math import factorial


def falling_factorial(n: int, k: int) -> int:
    if n < 0 or k < 0:
        raise ValueError("falling_factorial needs n, k >= 0")
    out = 1
    for i in range(k):
        out *= n - i
        if out == 0:
            break
    return out


@lru_cache(maxsize=None)
def _stirling_row(n: int) -> tuple[int, ...]:
    # S(n, 0..n) by S(n,k) = k S(n-1,k) + S(n-1,k-1)
    if n == 0:
        return (1,)
    prev = _stirling_row(n - 1) + (0,)
    return (0,) + tuple(k * prev[k] + prev[k - 1] for k in range(1, n + 1))


def stirling2(n: int, k: int) -> int:
    """Number of partitions of an ``n``-set into ``k`` non-empty blocks."""
    if n < 0 or k < 0:
        raise ValueError("stirling2 needs n, k >= 0")
    if k > n:
        return 0
    if n > 900:
        # keep the row cache from recursing too deep
        for m in range(0, n, 500):
            _stirling_row(m)
    return _stirling_row(n)[k]


def f(ell: int, s: int, k: int) -> int:
    """Ways to split a ``k``-set into ``s`` labelled parts, the first ``ell``
    of them singletons and the rest non-empty."""
    if not 0 <= ell < s:
        raise ValueError(f"f needs 0 <= ell < s, got ell={ell}, s={s}")
    if k < ell:
        return 0
    return falling_factorial(k, ell) * factorial(s - ell) * stirling2(k - ell, s - ell)


def stirling_threshold(k: int) -> int:
    """Smallest integer ``n`` with ``n >= k ln 2k``."""
    if k < 1:
        raise ValueError("stirling_threshold needs k >= 1")
    return math.ceil(k * math.log(2 * k))


def stirling_bound_holds(n: int, k: int) -> bool:
    """``k^n / (2 k!) <= S(n, k) <= k^n / k!``, compared in integers."""
    scaled = factorial(k) * stirling2(n, k)
    return k**n <= 2 * scaled and scaled <= k**n
