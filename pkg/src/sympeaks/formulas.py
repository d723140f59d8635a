"""Summation formulas for hsp(n, k), dsv(n, k) and the symmetric-peak count.

Each formula places the window b m b at one of k-2 positions and counts
the fillings of the remaining k-3 parts with a binomial.
"""
from __future__ import annotations

import math


def binom(a: int, b: int) -> int:
    """Binomial coefficient, zero whenever a < 0, b < 0 or a < b."""
    if a < 0 or b < 0 or a < b:
        return 0
    return math.comb(a, b)


def _peak_terms(n: int, k: int):
    # Yields (multiplicity, height) over peak windows b m b with m > b.
    for m in range(2, n - k + 2):
        t = (n - m - k + 3) // 2
        for b in range(1, min(m - 1, t) + 1):
            yield binom(n - 2 * b - m - 1, k - 4), m - b


def hsp_nk(n: int, k: int, literal: bool = False) -> int:
    """Sum of symmetric-peak heights over compositions of n with k parts.

    For k = 3 the single window is b m b with b = (n-m)/2. By default a
    term only counts when 1 <= b <= m-1; with ``literal=True`` every m
    with n-m even contributes (3m-n)/2, including nonpositive values.
    """
    if n < 0 or k < 0:
        raise ValueError("n and k must be nonnegative")
    if k < 3:
        return 0
    if k == 3:
        total = 0
        for m in range(2, n - 1):
            if (n - m) % 2:
                continue
            b = (n - m) // 2
            if literal or 1 <= b <= m - 1:
                total += (3 * m - n) // 2
        return total
    return (k - 2) * sum(c * h for c, h in _peak_terms(n, k))


def dsv_nk(n: int, k: int, literal: bool = False) -> int:
    """Sum of symmetric-valley depths over compositions of n with k parts."""
    if n < 0 or k < 0:
        raise ValueError("n and k must be nonnegative")
    if k < 3:
        return 0
    if k == 3:
        total = 0
        for m in range(1, (n - 2) // 3 + 1):
            if (n - m) % 2:
                continue
            b = (n - m) // 2
            if literal or b >= m + 1:
                total += (n - 3 * m) // 2
        return total
    total = 0
    for m in range(1, (n - k + 1) // 3 + 1):
        for b in range(m + 1, (n - m - (k - 3)) // 2 + 1):
            total += binom(n - 2 * b - m - 1, k - 4) * (b - m)
    return (k - 2) * total


def sp_count_nk(n: int, k: int) -> int:
    """Total number of symmetric peaks over compositions of n with k >= 4 parts."""
    if k < 4:
        raise ValueError(f"k out of formula range: k={k} (need k >= 4)")
    if n < 0:
        raise ValueError("n must be nonnegative")
    return (k - 2) * sum(c for c, _ in _peak_terms(n, k))


def grid(fn, max_n: int) -> dict[tuple[int, int], int]:
    return {(n, k): fn(n, k) for n in range(max_n + 1) for k in range(n + 1)}
