"""Exact evaluation of the closed forms for hsp(n) and dsv(n).

The conjugate terms live in Q(sqrt(-3)), so they are evaluated there
exactly instead of in complex floating point.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .compositions import aggregate


class ClosedFormError(ArithmeticError):
    pass


@dataclass(frozen=True)
class QuadNumber:
    """re + im * sqrt(-3) with rational parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    def __add__(self, other):
        other = _lift(other)
        return QuadNumber(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return QuadNumber(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-_lift(other))

    def __mul__(self, other):
        o = _lift(other)
        return QuadNumber(self.re * o.re - 3 * self.im * o.im,
                          self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadNumber":
        return QuadNumber(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + 3 * self.im * self.im

    def __truediv__(self, other):
        o = _lift(other)
        nrm = o.norm()
        if nrm == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(-3))")
        num = self * o.conjugate()
        return QuadNumber(num.re / nrm, num.im / nrm)

    def __pow__(self, e: int):
        if e < 0:
            return QuadNumber(1) / (self ** -e)
        result, base = QuadNumber(1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result


def _lift(x) -> QuadNumber:
    return x if isinstance(x, QuadNumber) else QuadNumber(Fraction(x))


OMEGA_PLUS = QuadNumber(1, 1)    # 1 + i*sqrt(3)
OMEGA_MINUS = QuadNumber(1, -1)  # 1 - i*sqrt(3)
COEF_PLUS = QuadNumber(-33, -15)
COEF_MINUS = QuadNumber(-33, 15)


def _conjugate_pair(n: int) -> QuadNumber:
    sign = (-2) ** n
    return (COEF_PLUS * sign / (441 * OMEGA_PLUS ** (n + 1))
            + COEF_MINUS * sign / (441 * OMEGA_MINUS ** (n + 1)))


def hsp_closed_exact(n: int) -> QuadNumber:
    return (QuadNumber(Fraction(7 * n - 24, 49) * Fraction(2) ** (n - 1))
            + _conjugate_pair(n) + Fraction(1, 3))


def dsv_closed_exact(n: int) -> QuadNumber:
    return (QuadNumber(Fraction(-6 * n + 7, 108) * (-1) ** n
                       + Fraction(21 * n - 79, 1323) * 2 ** n)
            + _conjugate_pair(n) + Fraction(1, 12))


def _to_int(value: QuadNumber, which: str, n: int) -> int:
    if value.im != 0 or value.re.denominator != 1 or value.re < 0:
        raise ClosedFormError(f"non-integral closed form: {which}({n}) = {value}")
    return value.re.numerator


def hsp_closed(n: int) -> int:
    """Sum of symmetric-peak heights over all compositions of n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _to_int(hsp_closed_exact(n), "hsp", n)


def dsv_closed(n: int) -> int:
    """Sum of symmetric-valley depths over all compositions of n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _to_int(dsv_closed_exact(n), "dsv", n)


# Denominators (1-2x)^2 (1-x^3) and (1-2x)^2 (1-x^3) (1-x^2)^2, low degree first.
def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _denominator(which: str) -> list[int]:
    d = _poly_mul(_poly_mul([1, -2], [1, -2]), [1, 0, 0, -1])
    if which == "dsv":
        d = _poly_mul(d, _poly_mul([1, 0, -1], [1, 0, -1]))
    return d


def recurrence_sequence(which: str, N: int, seed: list[int]) -> list[int]:
    """Extend `seed` to length N+1 with the recurrence given by the GF denominator.

    Numerator degrees are below the denominator degree, so the
    recurrence holds for every n >= len(denominator) - 1.
    """
    den = _denominator(which)
    order = len(den) - 1
    seq = list(seed[: min(order, N + 1)])
    for n in range(len(seq), N + 1):
        seq.append(-sum(den[i] * seq[n - i] for i in range(1, order + 1)))
    return seq


def brute_force_totals(which: str, N: int) -> list[int]:
    col = "hsp" if which == "hsp" else "dsv"
    return [getattr(aggregate(n)[-1], col) for n in range(N + 1)]


@dataclass
class RecurrenceReport:
    which: str
    N: int
    recurrence: list[int]
    closed: list[int | None]
    mismatches: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def closed_recurrence_check(which: str, N: int, seed: list[int] | None = None) -> RecurrenceReport:
    """Compare the closed form with the denominator recurrence for n = 0..N.

    The recurrence is seeded from brute-force totals unless `seed` is given.
    """
    if which not in ("hsp", "dsv"):
        raise ValueError(f"unknown sequence {which!r}")
    order = len(_denominator(which)) - 1
    if seed is None:
        seed = brute_force_totals(which, min(order - 1, N))
    rec = recurrence_sequence(which, N, seed)
    fn = hsp_closed if which == "hsp" else dsv_closed
    closed: list[int | None] = []
    bad = []
    for n in range(N + 1):
        try:
            v = fn(n)
        except ClosedFormError:
            v = None
        closed.append(v)
        if v != rec[n]:
            bad.append(n)
    return RecurrenceReport(which, N, rec, closed, bad)


def validity_range(which: str, N: int) -> tuple[int | None, list[int]]:
    """Smallest n0 such that the closed form equals brute force on n0..N, and all mismatching n."""
    fn = hsp_closed if which == "hsp" else dsv_closed
    truth = brute_force_totals(which, N)
    bad = []
    for n in range(N + 1):
        try:
            if fn(n) != truth[n]:
                bad.append(n)
        except ClosedFormError:
            bad.append(n)
    if bad and bad[-1] == N:
        return None, bad
    return (bad[-1] + 1 if bad else 0), bad
