"""Exact sums of exponential polynomials over the positive integers.

An ExpPoly is a finite combination of terms c * a**i * lam**a, viewed
as a function of the integer a. Products, indefinite sums and the
infinite sum over a >= 1 (for |lam| < 1) all stay rational.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache


@lru_cache(maxsize=None)
def _stirling2(i: int, j: int) -> int:
    if i == j:
        return 1
    if j == 0 or j > i:
        return 0
    return j * _stirling2(i - 1, j) + _stirling2(i - 1, j - 1)


class ExpPoly:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        # {(lam, i): coefficient}
        self.terms = {key: c for key, c in (terms or {}).items() if c != 0}

    @classmethod
    def geometric(cls, lam, coef=1, power: int = 0) -> "ExpPoly":
        """coef * a**power * lam**a."""
        return cls({(Fraction(lam), power): Fraction(coef)})

    @classmethod
    def polynomial(cls, coeffs) -> "ExpPoly":
        """sum_i coeffs[i] * a**i."""
        return cls({(Fraction(1), i): Fraction(c) for i, c in enumerate(coeffs)})

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "ExpPoly") -> "ExpPoly":
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) + c
        return ExpPoly(out)

    def __neg__(self):
        return ExpPoly({key: -c for key, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "ExpPoly":
        return ExpPoly({key: v * c for key, v in self.terms.items()})

    def __mul__(self, other: "ExpPoly") -> "ExpPoly":
        out: dict = {}
        for (l1, i1), c1 in self.terms.items():
            for (l2, i2), c2 in other.terms.items():
                key = (l1 * l2, i1 + i2)
                out[key] = out.get(key, 0) + c1 * c2
        return ExpPoly(out)

    def __call__(self, a: int) -> Fraction:
        return sum((c * a ** i * lam ** a for (lam, i), c in self.terms.items()), Fraction(0))

    def total(self) -> Fraction:
        """sum_{a>=1} of the function; every lam must satisfy |lam| < 1."""
        acc = Fraction(0)
        for (lam, i), c in self.terms.items():
            if abs(lam) >= 1:
                raise ArithmeticError(f"divergent sum: ratio {lam}")
            # sum_{a>=0} a^i lam^a = sum_j S(i,j) j! lam^j / (1-lam)^(j+1)
            s = sum((Fraction(_stirling2(i, j) * math.factorial(j)) * lam ** j / (1 - lam) ** (j + 1)
                     for j in range(i + 1)), Fraction(0))
            if i == 0:
                s -= 1
            acc += c * s
        return acc

    def partial_sum(self) -> "ExpPoly":
        """The function a -> sum_{s=1}^{a-1} self(s), as an ExpPoly in a."""
        out = ExpPoly()
        for (lam, i), c in self.terms.items():
            out = out + _indefinite(lam, i).scale(c)
            if i == 0:
                out = out + ExpPoly.polynomial([-c])  # drop the s = 0 term
        return out


def _indefinite(lam: Fraction, i: int) -> ExpPoly:
    """a -> sum_{s=0}^{a-1} s^i lam^s, via P with lam*P(a+1) - P(a) = a^i."""
    if lam == 1:
        # P of degree i+1, P(0) = 0; coefficient of a^l gives
        # sum_{j>l} c_j binom(j, l) = [l == i].
        c = [Fraction(0)] * (i + 2)
        for l in range(i, -1, -1):
            rhs = Fraction(1 if l == i else 0)
            rhs -= sum((c[j] * math.comb(j, l) for j in range(l + 2, i + 2)), Fraction(0))
            c[l + 1] = rhs / (l + 1)
        return ExpPoly({(Fraction(1), j): cj for j, cj in enumerate(c)})
    c = [Fraction(0)] * (i + 1)
    for l in range(i, -1, -1):
        rhs = Fraction(1 if l == i else 0)
        rhs -= lam * sum((c[j] * math.comb(j, l) for j in range(l + 1, i + 1)), Fraction(0))
        c[l] = rhs / (lam - 1)
    out = ExpPoly({(lam, j): cj for j, cj in enumerate(c)})
    return out + ExpPoly.polynomial([-c[0]])
