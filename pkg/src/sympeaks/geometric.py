"""Symmetric peaks and valleys in words of i.i.d. geometric letters.

Three exact routes to the moments:

* the closed expectation and variance formulas (variances transcribed
  as published, right or wrong),
* marker series in z obtained from the composition generating functions
  by x -> q, y -> p z / q, with the sum over letter values done exactly,
* a dynamic program over the last two letters with letters capped at L.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .expsums import ExpPoly
from .series import TruncSeries

STATS = ("sp", "sv", "hsp", "dsv")
VARIANCE_STATS = ("sp", "hsp", "sv")


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"a/b"``, an integer or a decimal string exactly."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


@dataclass(frozen=True)
class GeomParams:
    p: Fraction
    n: int

    def __post_init__(self):
        object.__setattr__(self, "p", parse_rational(self.p))
        if not 0 < self.p <= 1:
            raise ValueError(f"p must lie in (0, 1], got {self.p}")
        if self.n < 0:
            raise ValueError("word length must be nonnegative")

    @property
    def q(self) -> Fraction:
        return 1 - self.p


def _check_stat(stat: str, allowed=STATS):
    if stat not in allowed:
        raise ValueError(f"unknown statistic {stat!r}; expected one of {allowed}")


def expected_value(stat: str, params: GeomParams) -> Fraction:
    """Closed-form expectation; zero when n < 3 (no window fits)."""
    _check_stat(stat)
    p, q, n = params.p, params.q, params.n
    if n < 3:
        return Fraction(0)
    if stat == "sp":
        per = p * p * q / (1 - q ** 3)
    elif stat == "sv":
        per = p * p * (1 / (1 - q ** 2) - 1 / (1 - q ** 3))
    elif stat == "hsp":
        per = p * q / (1 - q ** 3)
    else:
        per = q * (p / (1 - q ** 3) - 1 / (1 + q) ** 2)
    return per * (n - 2)


def variance_formula(stat: str, params: GeomParams) -> Fraction:
    """The published variance expressions, evaluated verbatim for any n.

    Nothing guarantees these are variances: the sp expression turns
    negative for long words. Compare against :func:`series_moments`.
    """
    _check_stat(stat, VARIANCE_STATS)
    p, q, n = params.p, params.q, params.n
    if stat == "sp":
        return (2 * (n - 4) * p ** 3 * q ** 2 * (p * (n - 5) / (24 * (1 - q) ** 3) + 1 / (1 - q ** 5))
                + (n - 2) * p ** 2 * q / (1 - q ** 3)
                - (n - 2) ** 2 * p ** 4 * q ** 2 / (1 - q ** 3) ** 2)
    if stat == "hsp":
        return ((n - 5) * (n - 6) * p ** 2 * q ** 2 / (1 - q ** 3) ** 2
                + 2 * (n - 4) * p * q ** 2 / (1 - q ** 5)
                + (n - 2) / (1 - q ** 3) * (2 * q ** 2 + p * q)
                - p ** 2 * q ** 2 / (1 - q ** 3) ** 2 * (n - 2) ** 2)
    e = 1 / (1 - q ** 2) - 1 / (1 - q ** 3)
    return (p ** 4 * q ** 2 / (1 - q ** 3) * (n - 5) * (n - 6)
            + 2 * p ** 3 / (1 - q ** 5) * (n - 5)
            + p ** 2 * e * (n - 2)
            - p ** 4 * e ** 2 * (n - 2) ** 2)


# ---------------------------------------------------------------------------
# Marker series in z.  The marker is carried as w = u - 1, truncated at w^order,
# so [z^n][w^r] is the r-th factorial moment divided by r!.

def _bracket(stat: str, p: Fraction, q: Fraction, order: int) -> dict[int, ExpPoly]:
    """w-coefficients of G_a, where the a-th letter-value summand is
    p q^(a-1) z / (1 - z^2 G_a)."""
    sq = ExpPoly.geometric(q * q)
    if stat == "sp":
        return {1: sq.scale(p / q)}
    if stat == "hsp":
        # sum_j (u^j - 1) q^(j-1) = sum_r w^r q^(r-1) / p^(r+1)
        return {r: sq.scale(p ** (1 - r) * q ** (r - 2)) for r in range(1, order + 1)}
    if stat == "sv":
        return {1: ExpPoly.geometric(q, p / q) - sq.scale(p / (q * q))}
    out = {}
    for r in range(1, order + 1):
        binom_s = _binomial_poly(r)
        inner = (ExpPoly.polynomial(binom_s) * ExpPoly.geometric(1 / q)).partial_sum()
        out[r] = (sq * inner).scale(p * p / (q * q))
    return out


def _binomial_poly(r: int) -> list[Fraction]:
    """Coefficients of s -> binom(s, r) as a polynomial in s."""
    coeffs = [Fraction(1)]
    for t in range(r):
        nxt = [Fraction(0)] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] += c
            nxt[i] -= c * t
        coeffs = nxt
    return [c / math.factorial(r) for c in coeffs]


def _wmul(a: dict[int, ExpPoly], b: dict[int, ExpPoly], order: int) -> dict[int, ExpPoly]:
    out: dict[int, ExpPoly] = {}
    for i, x in a.items():
        for j, y in b.items():
            if i + j <= order:
                out[i + j] = out.get(i + j, ExpPoly()) + x * y
    return out


def geometric_marker_series(stat: str, p, N: int, order: int = 2) -> TruncSeries:
    """Series in z for geometric words by length z and statistic marker.

    The single marker is ``w = u - 1``; coefficients are exact up to
    w^order. [z^n] at w = 0 is 1 and [z^n][w^1] is the expectation.
    """
    _check_stat(stat)
    p = parse_rational(p)
    if not 0 < p < 1:
        raise ValueError("the series route needs 0 < p < 1")
    q = 1 - p
    G = _bracket(stat, p, q, order)
    lead = ExpPoly.geometric(q, p / q)  # p q^(a-1)
    markers = ("w",)
    terms = []
    power: dict[int, ExpPoly] = {0: ExpPoly.polynomial([1])}
    for m in range(order + 1):
        if 2 * m + 1 > N:
            break
        for r, ep in power.items():
            value = (lead * ep).total()
            if value:
                terms.append((2 * m + 1, (r,), value))
        power = _wmul(power, G, order)
    S = TruncSeries.from_terms(markers, N, terms, cap=order)
    return (TruncSeries.one(markers, N, cap=order) - S).reciprocal()


def series_moments(stat: str, params: GeomParams) -> tuple[Fraction, Fraction]:
    """(mean, variance) from the first two factorial moments of the series."""
    if params.p == 1 or params.n < 3:
        return Fraction(0), Fraction(0)
    s = geometric_marker_series(stat, params.p, params.n, order=2)
    c = s[params.n].as_tuples()
    f1 = Fraction(c.get((1,), 0))
    f2 = 2 * Fraction(c.get((2,), 0))
    return f1, f2 + f1 - f1 * f1


def series_expectation(stat: str, params: GeomParams) -> Fraction:
    return series_moments(stat, params)[0]


# ---------------------------------------------------------------------------
# Capped-letter dynamic program.

def _increment(stat: str, m: int, a: int) -> int:
    # window a m a
    if stat == "sp":
        return 1 if a < m else 0
    if stat == "hsp":
        return m - a if a < m else 0
    if stat == "sv":
        return 1 if a > m else 0
    return a - m if a > m else 0


@dataclass(frozen=True)
class OracleMoments:
    mean: Fraction
    second_moment: Fraction
    tail_bound: Fraction

    @property
    def variance(self) -> Fraction:
        return self.second_moment - self.mean * self.mean


def tail_bound(params: GeomParams, cap: int) -> Fraction:
    """Upper bound on E[stat; some letter > cap] for every statistic.

    Each statistic is at most the letter sum, and
    E[sum_j X_j ; X_i > L] summed over i is n q^L (L + n/p).
    """
    n, p, q = params.n, params.p, params.q
    if n < 3:
        return Fraction(0)
    return n * q ** cap * (cap + n / p)


def oracle_sweep(stat: str, p, n_max: int, cap: int) -> list[OracleMoments]:
    """Capped-letter moments for every word length 0..n_max in one pass.

    Letters are restricted to 1..cap and the dropped mass is not
    renormalized, so each true mean lies in [mean, mean + tail_bound].
    """
    _check_stat(stat)
    if cap < 2:
        raise ValueError("letter cap must be at least 2")
    p = parse_rational(p)
    zero = OracleMoments(Fraction(0), Fraction(0), Fraction(0))
    out = [zero] * min(n_max + 1, 3)
    if n_max < 3:
        return out
    num, den = p.numerator, p.denominator
    L = cap
    # integer weights: P(letter a) * den^L
    w = [0] + [num * (den - num) ** (a - 1) * den ** (L - a) for a in range(1, L + 1)]
    rng = range(1, L + 1)
    M = [[0] * (L + 1)] + [[0] + [w[a] * w[b] for b in rng] for a in rng]
    S1 = [[0] * (L + 1) for _ in range(L + 1)]
    S2 = [[0] * (L + 1) for _ in range(L + 1)]
    inc = [[_increment(stat, m, a) for a in range(L + 1)] for m in range(L + 1)]
    for n in range(3, n_max + 1):
        col0 = [sum(M[a][b] for a in rng) for b in range(L + 1)]
        col1 = [sum(S1[a][b] for a in rng) for b in range(L + 1)]
        col2 = [sum(S2[a][b] for a in rng) for b in range(L + 1)]
        nM = [[0] * (L + 1) for _ in range(L + 1)]
        n1 = [[0] * (L + 1) for _ in range(L + 1)]
        n2 = [[0] * (L + 1) for _ in range(L + 1)]
        for b in rng:
            row_m, row_1, row_2 = nM[b], n1[b], n2[b]
            for c in rng:
                v = inc[b][c]
                wc = w[c]
                row_m[c] = wc * col0[b]
                if v:
                    mass, first = M[c][b], S1[c][b]
                    row_1[c] = wc * (col1[b] + v * mass)
                    row_2[c] = wc * (col2[b] + 2 * v * first + v * v * mass)
                else:
                    row_1[c] = wc * col1[b]
                    row_2[c] = wc * col2[b]
        M, S1, S2 = nM, n1, n2
        scale = den ** (L * n)
        out.append(OracleMoments(Fraction(sum(map(sum, S1)), scale),
                                 Fraction(sum(map(sum, S2)), scale),
                                 tail_bound(GeomParams(p, n), cap)))
    return out


def exact_oracle_moments(stat: str, params: GeomParams, cap: int) -> OracleMoments:
    """E[stat] and E[stat^2] over words whose letters are all <= cap."""
    return oracle_sweep(stat, params.p, params.n, cap)[params.n]
