"""Integer compositions and their symmetric peak/valley statistics.

Everything here is brute force on purpose: it is the ground truth the
series, closed forms and summation formulas are checked against.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Sequence


@dataclass(frozen=True)
class Composition:
    parts: tuple[int, ...]

    def __post_init__(self):
        if any(part < 1 for part in self.parts):
            raise ValueError(f"parts must be positive: {self.parts}")

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def k(self) -> int:
        return len(self.parts)

    def __str__(self) -> str:
        return " ".join(map(str, self.parts))


@dataclass(frozen=True)
class StatRecord:
    sp: int = 0
    sv: int = 0
    hsp: int = 0
    dsv: int = 0

    def __add__(self, other: "StatRecord") -> "StatRecord":
        return StatRecord(self.sp + other.sp, self.sv + other.sv,
                          self.hsp + other.hsp, self.dsv + other.dsv)


def _compositions_all(n: int) -> Iterator[tuple[int, ...]]:
    # Lexicographic successor: drop the last part y, bump the new last
    # part, then append y - 1 ones.
    parts = [1] * n
    while True:
        yield tuple(parts)
        if len(parts) == 1:
            return
        last = parts.pop()
        parts[-1] += 1
        parts.extend([1] * (last - 1))


def _compositions_k(n: int, k: int) -> Iterator[tuple[int, ...]]:
    # Cut-point subsets in lex order give part sequences in lex order.
    for cuts in itertools.combinations(range(1, n), k - 1):
        bounds = (0,) + cuts + (n,)
        yield tuple(bounds[i + 1] - bounds[i] for i in range(k))


def enumerate_compositions(n: int, k: int | None = None) -> Iterator[Composition]:
    """Yield every composition of `n` (with exactly `k` parts if given).

    Order is lexicographic on the part sequence. ``n == 0`` yields the
    empty composition when ``k`` is None or 0.
    """
    if n < 0 or (k is not None and k < 0):
        raise ValueError("n and k must be nonnegative")
    if n == 0:
        if k in (None, 0):
            yield Composition(())
        return
    if k is None:
        gen = _compositions_all(n)
    elif 1 <= k <= n:
        gen = _compositions_k(n, k)
    else:
        return
    for parts in gen:
        yield Composition(parts)


def word_stats(word: Sequence[int]) -> StatRecord:
    """Window-scan statistics of any sequence of integers.

    Every index i with word[i] == word[i+2] and word[i] != word[i+1]
    contributes; overlapping windows each count.
    """
    sp = sv = hsp = dsv = 0
    for a, m, c in zip(word, word[1:], word[2:]):
        if a != c:
            continue
        if a < m:
            sp += 1
            hsp += m - a
        elif a > m:
            sv += 1
            dsv += a - m
    return StatRecord(sp, sv, hsp, dsv)


def stat_record(c: Composition) -> StatRecord:
    return word_stats(c.parts)


@dataclass(frozen=True)
class AggregateRow:
    k: int | None  # None marks the totals row
    count: int
    sp: int
    sv: int
    hsp: int
    dsv: int

    def as_dict(self) -> dict:
        return {"k": "total" if self.k is None else self.k, "count": self.count,
                "sp": self.sp, "sv": self.sv, "hsp": self.hsp, "dsv": self.dsv}


def aggregate(n: int) -> list[AggregateRow]:
    """Per-k sums of the four statistics over C_{n,k}, k = 0..n, then totals."""
    counts = [0] * (n + 1)
    sums = [StatRecord() for _ in range(n + 1)]
    for comp in enumerate_compositions(n):
        counts[comp.k] += 1
        sums[comp.k] = sums[comp.k] + stat_record(comp)
    rows = [AggregateRow(k, counts[k], s.sp, s.sv, s.hsp, s.dsv)
            for k, s in enumerate(sums)]
    total = sum(sums, StatRecord())
    rows.append(AggregateRow(None, sum(counts), total.sp, total.sv, total.hsp, total.dsv))
    return rows


def joint_distribution(n: int, family: str) -> Counter:
    """Histogram of (k, count, total magnitude) over all compositions of n.

    `family` is ``"peak"`` (keys (k, sp, hsp)) or ``"valley"`` (keys
    (k, sv, dsv)).
    """
    if family not in ("peak", "valley"):
        raise ValueError(f"unknown family {family!r}")
    hist: Counter = Counter()
    for comp in enumerate_compositions(n):
        rec = stat_record(comp)
        if family == "peak":
            hist[comp.k, rec.sp, rec.hsp] += 1
        else:
            hist[comp.k, rec.sv, rec.dsv] += 1
    return hist
