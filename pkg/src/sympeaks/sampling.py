"""Seeded Monte Carlo for geometric words.

Uniforms come from a counter-based SplitMix64 stream: draw number c of
seed s is the SplitMix64 output for state s + (c + 1) * 0x9E3779B97F4A7C15,
mapped to ((z >> 11) + 0.5) / 2**53, which is never 0 or 1. Letter j of
trial i uses counter i * n + j, so any trial can be regenerated alone
and chunking never changes a result.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from .geometric import STATS, GeomParams, _check_stat

GOLDEN = np.uint64(0x9E3779B97F4A7C15)
MIX1 = np.uint64(0xBF58476D1CE4E5B9)
MIX2 = np.uint64(0x94D049BB133111EB)
DEFAULT_CHUNK = 50_000


def splitmix64(seed: int, counters: np.ndarray) -> np.ndarray:
    z = np.uint64(seed & 0xFFFFFFFFFFFFFFFF) + (counters.astype(np.uint64) + np.uint64(1)) * GOLDEN
    z = (z ^ (z >> np.uint64(30))) * MIX1
    z = (z ^ (z >> np.uint64(27))) * MIX2
    return z ^ (z >> np.uint64(31))


def uniforms(seed: int, counters: np.ndarray) -> np.ndarray:
    z = splitmix64(seed, counters) >> np.uint64(11)
    return (z.astype(np.float64) + 0.5) * 2.0 ** -53


def _letters(params: GeomParams, seed: int, first: int, count: int) -> np.ndarray:
    n = params.n
    if params.p == 1:
        return np.ones((count, n), dtype=np.int64)
    counters = np.arange(first * n, (first + count) * n, dtype=np.uint64)
    u = uniforms(seed, counters).reshape(count, n)
    log_q = math.log(float(params.q))
    return 1 + np.floor(np.log(u) / log_q).astype(np.int64)


def sample_word(params: GeomParams, seed: int, index: int) -> list[int]:
    """The word for trial `index` of stream `seed`."""
    if params.n == 0:
        return []
    return _letters(params, seed, index, 1)[0].tolist()


def word_stat_arrays(words: np.ndarray) -> dict[str, np.ndarray]:
    """Vectorized window scan; rows are words. Same rule as compositions.word_stats."""
    a, m, c = words[:, :-2], words[:, 1:-1], words[:, 2:]
    sym = a == c
    peak = sym & (a < m)
    valley = sym & (a > m)
    return {
        "sp": peak.sum(axis=1),
        "sv": valley.sum(axis=1),
        "hsp": np.where(peak, m - a, 0).sum(axis=1),
        "dsv": np.where(valley, a - m, 0).sum(axis=1),
    }


@dataclass(frozen=True)
class MCSummary:
    stat: str
    trials: int
    mean: float
    variance: float
    std_error: float
    seed: int
    # standard error of the sample variance, from the fourth central moment
    variance_std_error: float = float("nan")

    def as_dict(self) -> dict:
        return asdict(self)


class _Moments:
    def __init__(self):
        self.s = [0, 0, 0, 0, 0]  # count, sum x, x^2, x^3, x^4

    def add(self, values: np.ndarray):
        v = values.astype(np.int64)
        self.s[0] += int(v.size)
        for r in range(1, 5):
            self.s[r] += int(np.sum(v ** r))

    def summary(self, stat: str, seed: int) -> MCSummary:
        t, s1, s2, s3, s4 = self.s
        mean = Fraction(s1, t)
        var = Fraction(s2 * t - s1 * s1, t * (t - 1)) if t > 1 else Fraction(0)
        m2 = Fraction(s2, t) - mean ** 2
        m4 = (Fraction(s4, t) - 4 * mean * Fraction(s3, t)
              + 6 * mean ** 2 * Fraction(s2, t) - 3 * mean ** 4)
        var_se = math.sqrt(max(float(m4 - m2 * m2), 0.0) / t)
        return MCSummary(stat, t, float(mean), float(var), math.sqrt(float(var) / t), seed, var_se)


def monte_carlo_all(params: GeomParams, trials: int, seed: int,
                    chunk: int = DEFAULT_CHUNK) -> dict[str, MCSummary]:
    """Summaries for all four statistics from one shared set of words."""
    if trials < 1:
        raise ValueError("trials must be positive")
    acc = {s: _Moments() for s in STATS}
    for first in range(0, trials, chunk):
        count = min(chunk, trials - first)
        if params.n < 3:
            stats = {s: np.zeros(count, dtype=np.int64) for s in STATS}
        else:
            stats = word_stat_arrays(_letters(params, seed, first, count))
        for s in STATS:
            acc[s].add(stats[s])
    return {s: acc[s].summary(s, seed) for s in STATS}


def monte_carlo(stat: str, params: GeomParams, trials: int, seed: int,
                chunk: int = DEFAULT_CHUNK) -> MCSummary:
    _check_stat(stat)
    return monte_carlo_all(params, trials, seed, chunk)[stat]
