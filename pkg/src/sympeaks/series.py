"""Truncated power series in x with exact marker-polynomial coefficients.

Coefficients are ``int`` or ``fractions.Fraction``; nothing here ever
touches floating point. Marker exponents are packed into one int per
monomial (16 bits per marker) so multiplying monomials is one addition.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

FIELD_BITS = 16
FIELD_MASK = (1 << FIELD_BITS) - 1


class SeriesError(ArithmeticError):
    pass


def _exact(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def pack(exps: Sequence[int]) -> int:
    key = 0
    for i, e in enumerate(exps):
        if not 0 <= e <= FIELD_MASK:
            raise ValueError(f"marker exponent out of range: {e}")
        key |= e << (FIELD_BITS * i)
    return key


def unpack(key: int, nvars: int) -> tuple[int, ...]:
    return tuple((key >> (FIELD_BITS * i)) & FIELD_MASK for i in range(nvars))


class MarkerPoly:
    """Sparse polynomial in the marker variables; zero terms are never stored."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[int, object] | None = None):
        self.nvars = nvars
        self.terms = {k: v for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def constant(cls, nvars: int, c) -> "MarkerPoly":
        return cls(nvars, {0: c})

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> "MarkerPoly":
        return cls(len(exps), {pack(exps): c})

    @classmethod
    def from_tuples(cls, nvars: int, items: Mapping[tuple[int, ...], object]) -> "MarkerPoly":
        return cls(nvars, {pack(e): c for e, c in items.items()})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, MarkerPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        return NotImplemented

    def __repr__(self):
        return f"MarkerPoly({self.as_tuples()!r})"

    def as_tuples(self) -> dict[tuple[int, ...], object]:
        return {unpack(k, self.nvars): v for k, v in sorted(self.terms.items())}

    def is_constant(self) -> bool:
        return all(k == 0 for k in self.terms)

    def constant_term(self):
        return self.terms.get(0, 0)

    def __add__(self, other: "MarkerPoly") -> "MarkerPoly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return MarkerPoly(self.nvars, out)

    def __neg__(self) -> "MarkerPoly":
        return MarkerPoly(self.nvars, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "MarkerPoly") -> "MarkerPoly":
        return self + (-other)

    def scale(self, c) -> "MarkerPoly":
        return MarkerPoly(self.nvars, {k: _exact(v * c) for k, v in self.terms.items()})

    def mul(self, other: "MarkerPoly", cap: int | None = None) -> "MarkerPoly":
        out: dict[int, object] = {}
        get = out.get
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = k1 + k2
                out[k] = get(k, 0) + v1 * v2
        poly = MarkerPoly(self.nvars, out)
        if cap is not None:
            poly = poly.truncate(cap)
        return poly

    __mul__ = mul

    def truncate(self, cap: int) -> "MarkerPoly":
        """Drop monomials where any marker exponent exceeds `cap`."""
        keep = {}
        for k, v in self.terms.items():
            if max(unpack(k, self.nvars), default=0) <= cap:
                keep[k] = v
        return MarkerPoly(self.nvars, keep)

    def derivative(self, index: int) -> "MarkerPoly":
        shift = FIELD_BITS * index
        out = {}
        for k, v in self.terms.items():
            e = (k >> shift) & FIELD_MASK
            if e:
                out[k - (1 << shift)] = v * e
        return MarkerPoly(self.nvars, out)

    def substitute_one(self, indices: Iterable[int]) -> "MarkerPoly":
        """Set the markers at `indices` to 1, removing them from the variable list."""
        drop = set(indices)
        kept = [i for i in range(self.nvars) if i not in drop]
        out: dict[int, object] = {}
        for k, v in self.terms.items():
            exps = unpack(k, self.nvars)
            nk = pack([exps[i] for i in kept])
            out[nk] = out.get(nk, 0) + v
        return MarkerPoly(len(kept), out)


class TruncSeries:
    """Power series in x modulo x^(trunc+1) with MarkerPoly coefficients.

    `cap`, when set, also truncates every marker exponent above it; this
    is used by the geometric-word series, which are only needed to a
    fixed order in the shifted marker.
    """

    def __init__(self, markers: Sequence[str], trunc: int,
                 coeffs: Sequence[MarkerPoly] | None = None, cap: int | None = None):
        if trunc < 0:
            raise ValueError("truncation degree must be nonnegative")
        self.markers = tuple(markers)
        self.trunc = trunc
        self.cap = cap
        nv = len(self.markers)
        cs = list(coeffs or [])[: trunc + 1]
        cs += [MarkerPoly(nv) for _ in range(trunc + 1 - len(cs))]
        if cap is not None:
            cs = [c.truncate(cap) for c in cs]
        self.coeffs = cs

    @property
    def nvars(self) -> int:
        return len(self.markers)

    def _like(self, coeffs) -> "TruncSeries":
        return TruncSeries(self.markers, self.trunc, coeffs, self.cap)

    @classmethod
    def one(cls, markers: Sequence[str], trunc: int, cap: int | None = None) -> "TruncSeries":
        return cls.constant(markers, trunc, 1, cap)

    @classmethod
    def constant(cls, markers, trunc, c, cap=None) -> "TruncSeries":
        return cls(markers, trunc, [MarkerPoly.constant(len(markers), c)], cap)

    @classmethod
    def from_terms(cls, markers: Sequence[str], trunc: int,
                   terms: Iterable[tuple[int, Sequence[int], object]],
                   cap: int | None = None) -> "TruncSeries":
        """Build from (x-degree, marker exponents, coefficient) triples."""
        nv = len(markers)
        coeffs = [MarkerPoly(nv) for _ in range(trunc + 1)]
        for deg, exps, c in terms:
            if deg <= trunc:
                coeffs[deg] = coeffs[deg] + MarkerPoly.monomial(exps, c)
        return cls(markers, trunc, coeffs, cap)

    def __getitem__(self, n: int) -> MarkerPoly:
        return self.coeffs[n]

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (self.markers == other.markers and self.trunc == other.trunc
                and self.coeffs == other.coeffs)

    def __repr__(self):
        return f"TruncSeries({self.markers}, trunc={self.trunc}, {self.coeffs!r})"

    def _check(self, other: "TruncSeries"):
        if self.markers != other.markers or self.trunc != other.trunc:
            raise SeriesError("series have different markers or truncation")

    def valuation(self) -> int | None:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def add(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        return self._like([a + b for a, b in zip(self.coeffs, other.coeffs)])

    __add__ = add

    def __neg__(self):
        return self._like([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TruncSeries":
        return self._like([p.scale(c) for p in self.coeffs])

    def shift(self, d: int, factor: MarkerPoly | None = None) -> "TruncSeries":
        """Multiply by factor * x^d."""
        cs = [MarkerPoly(self.nvars) for _ in range(d)] + self.coeffs[: self.trunc + 1 - d]
        if factor is not None:
            cs = [factor.mul(c, self.cap) for c in cs]
        return self._like(cs)

    def mul(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        N = self.trunc
        nz_a = [(i, c) for i, c in enumerate(self.coeffs) if c]
        nz_b = [(j, c) for j, c in enumerate(other.coeffs) if c]
        out = [MarkerPoly(self.nvars) for _ in range(N + 1)]
        for i, ca in nz_a:
            for j, cb in nz_b:
                if i + j > N:
                    break
                out[i + j] = out[i + j] + ca.mul(cb, self.cap)
        return self._like(out)

    __mul__ = mul

    def reciprocal(self) -> "TruncSeries":
        """1/self modulo x^(trunc+1); the constant term must be a nonzero rational."""
        c0 = self.coeffs[0]
        if not c0 or not c0.is_constant():
            raise SeriesError("non-invertible constant term")
        inv0 = _exact(Fraction(1) / c0.constant_term())
        nz = [(i, c) for i, c in enumerate(self.coeffs) if c and i > 0]
        out = [MarkerPoly.constant(self.nvars, inv0)]
        for n in range(1, self.trunc + 1):
            acc = MarkerPoly(self.nvars)
            for i, c in nz:
                if i > n:
                    break
                acc = acc + c.mul(out[n - i], self.cap)
            out.append(acc.scale(-inv0))
        return self._like(out)

    def geometric(self) -> "TruncSeries":
        """1/(1 - self) for a series with zero constant term, by summing powers."""
        v = self.valuation()
        result = TruncSeries.one(self.markers, self.trunc, self.cap)
        if v is None:
            return result
        if v == 0:
            return (TruncSeries.one(self.markers, self.trunc, self.cap) - self).reciprocal()
        power = result
        for _ in range(self.trunc // v):
            power = power * self
            result = result + power
        return result

    def derivative(self, marker: str) -> "TruncSeries":
        i = self.markers.index(marker)
        return self._like([c.derivative(i) for c in self.coeffs])

    def substitute_one(self, markers: Iterable[str]) -> "TruncSeries":
        """Set the named markers to 1; they disappear from the marker list."""
        idx = [self.markers.index(m) for m in markers]
        kept = tuple(m for i, m in enumerate(self.markers) if i not in idx)
        return TruncSeries(kept, self.trunc, [c.substitute_one(idx) for c in self.coeffs], self.cap)

    def coefficient(self, n: int, exps: Sequence[int] = ()) -> object:
        if n > self.trunc:
            raise SeriesError(f"degree {n} beyond truncation {self.trunc}")
        exps = tuple(exps) + (0,) * (self.nvars - len(exps))
        return self.coeffs[n].terms.get(pack(exps), 0)

    def scalars(self) -> list:
        """Coefficients of a marker-free series as plain rationals."""
        if self.nvars:
            raise SeriesError("series still carries markers")
        return [c.constant_term() for c in self.coeffs]


def add(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    return a.add(b)


def mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    return a.mul(b)


def reciprocal(a: TruncSeries) -> TruncSeries:
    return a.reciprocal()


PEAK_MARKERS = ("y", "q", "h")
VALLEY_MARKERS = ("y", "p", "d")


def _compose(markers, N, inner_term) -> TruncSeries:
    """1 / (1 - sum_{a=1..N} x^a y / (1 - T_a)) where T_a = inner_term(a)."""
    nv = len(markers)
    y = MarkerPoly.monomial((1,) + (0,) * (nv - 1))
    total = TruncSeries(markers, N)
    for a in range(1, N + 1):
        inner = inner_term(a)
        summand = inner.geometric().shift(a, y)
        total = total + summand
    return (TruncSeries.one(markers, N) - total).reciprocal()


def build_hsp_series(N: int) -> TruncSeries:
    """Compositions by size x, parts y, peak count q and peak-height sum h.

    Realizes 1/(1 - sum_a x^a y / (1 - y^2 x^(2a+1) B(x))) with
    B(x) = qh/(1-hx) - 1/(1-x) = sum_{j>=1} (q h^j - 1) x^(j-1).
    """
    B = TruncSeries.from_terms(PEAK_MARKERS, N, (
        term for j in range(1, N + 1)
        for term in ((j - 1, (0, 1, j), 1), (j - 1, (0, 0, 0), -1))))
    y2 = MarkerPoly.monomial((2, 0, 0))
    return _compose(PEAK_MARKERS, N, lambda a: B.shift(2 * a + 1, y2))


def build_sp_series(N: int) -> TruncSeries:
    """Peak-count-only series, constructed directly with bracket (q-1)/(1-x)."""
    markers = ("y", "q")
    B = TruncSeries.from_terms(markers, N, (
        term for j in range(N + 1) for term in ((j, (0, 1), 1), (j, (0, 0), -1))))
    y2 = MarkerPoly.monomial((2, 0))
    return _compose(markers, N, lambda a: B.shift(2 * a + 1, y2))


def build_dsv_series(N: int) -> TruncSeries:
    """Compositions by size x, parts y, valley count p and depth sum d.

    The bracket of the valley generating function is expanded as the
    finite sum sum_{j=1}^{a-1} (p d^(a-j) - 1) x^(j-1), which avoids the
    1/(x/d - 1) factor of the rational form.
    """
    y2 = MarkerPoly.monomial((2, 0, 0))

    def inner(a):
        C = TruncSeries.from_terms(VALLEY_MARKERS, N, (
            term for j in range(1, a)
            for term in ((j - 1, (0, 1, a - j), 1), (j - 1, (0, 0, 0), -1))))
        return C.shift(a + 1, y2)

    return _compose(VALLEY_MARKERS, N, inner)


def build_sv_series(N: int) -> TruncSeries:
    """Valley-count-only series with bracket (x^(a-1) - 1)(p - 1)/(x - 1)."""
    markers = ("y", "p")
    y2 = MarkerPoly.monomial((2, 0))

    def inner(a):
        C = TruncSeries.from_terms(markers, N, (
            term for j in range(a - 1) for term in ((j, (0, 1), 1), (j, (0, 0), -1))))
        return C.shift(a + 1, y2)

    return _compose(markers, N, inner)


def marker_moment(s: TruncSeries, marker: str, keep: Sequence[str] = ()) -> TruncSeries:
    """d s / d marker, then every marker not in `keep` set to 1."""
    if marker not in s.markers:
        return TruncSeries([m for m in s.markers if m in keep], s.trunc, cap=s.cap)
    d = s.derivative(marker)
    return d.substitute_one([m for m in s.markers if m not in keep])


def _poly(markers, N, terms) -> TruncSeries:
    return TruncSeries.from_terms(markers, N, terms)


def _rational(num: TruncSeries, dens: Sequence[TruncSeries]) -> TruncSeries:
    out = num
    for d in dens:
        out = out * d.reciprocal()
    return out


GF_KINDS = ("hsp_total", "hsp_nk", "dsv_total", "dsv_nk", "dsv_nk_printed")


def rational_gf(which: str, N: int) -> TruncSeries:
    """Expand one of the closed rational generating functions to degree N.

    ``dsv_nk`` is the bivariate valley-depth function
    y^3 x^5 (1-x)^2 / ((1-x^3)(1-x^2)^2(1-x-xy)^2), whose y=1 restriction is
    ``dsv_total``. ``dsv_nk_printed`` is the published bivariate form kept
    for comparison; its coefficients are negative.
    """
    if which in ("hsp_total", "dsv_total"):
        m: tuple[str, ...] = ()
        X = lambda d, c=1: (d, (), c)
        two_x = _poly(m, N, [X(0), X(1, -2)])
        dens_common = [two_x, two_x, _poly(m, N, [X(0), X(3, -1)])]
        if which == "hsp_total":
            return _rational(_poly(m, N, [X(4)]), dens_common)
        one_m_x2 = _poly(m, N, [X(0), X(2, -1)])
        return _rational(_poly(m, N, [X(5), X(6, -2), X(7)]),
                         dens_common + [one_m_x2, one_m_x2])
    if which not in GF_KINDS:
        raise ValueError(f"unknown generating function {which!r}")
    m = ("y",)
    lin = _poly(m, N, [(0, (0,), 1), (1, (0,), -1), (1, (1,), -1)])  # 1 - x - xy
    one_m_x3 = _poly(m, N, [(0, (0,), 1), (3, (0,), -1)])
    one_m_x2 = _poly(m, N, [(0, (0,), 1), (2, (0,), -1)])
    if which == "hsp_nk":
        return _rational(_poly(m, N, [(4, (3,), 1)]), [one_m_x3, lin, lin])
    if which == "dsv_nk":
        num = _poly(m, N, [(5, (3,), 1), (6, (3,), -2), (7, (3,), 1)])
        return _rational(num, [one_m_x3, one_m_x2, one_m_x2, lin, lin])
    num = _poly(m, N, [(7, (3,), 2), (6, (3,), -1), (4, (3,), -1)])
    return _rational(num, [one_m_x3, one_m_x2, lin, lin])


def rational_gf_coeffs(which: str, N: int):
    """Coefficient table of a rational generating function.

    Totals come back as a list indexed by n; the ``_nk`` variants as a
    dict ``{(n, k): value}`` holding only nonzero entries.
    """
    s = rational_gf(which, N)
    if not s.markers:
        return s.scalars()
    return {(n, e[0]): v for n, c in enumerate(s.coeffs) for e, v in c.as_tuples().items()}
