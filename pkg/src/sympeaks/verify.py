"""Cross-verification suite behind ``sympeaks verify``.

Every check compares two or more independent routes to the same numbers.
Checks that compare against published expressions known to be off
(variance formulas, the bivariate valley-depth function, the literal
k = 3 peak formula) are reported with status ``finding``.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from . import closed_form, formulas, geometric, sampling, series
from .compositions import AggregateRow, aggregate, enumerate_compositions, joint_distribution, stat_record
from .report import FINDING, Check, Report, check

P_GRID = (Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(3, 4))
ORACLE_CAP = 60
MC_SEED = 20_240_517
MC_LENGTH = 50
TWO_POW_M30 = Fraction(1, 2 ** 30)


@lru_cache(maxsize=None)
def brute_rows(n: int) -> tuple[AggregateRow, ...]:
    return tuple(aggregate(n))


@lru_cache(maxsize=None)
def brute_joint(n: int, family: str) -> dict:
    return dict(joint_distribution(n, family))


def brute_cell(n: int, k: int, stat: str) -> int:
    return getattr(brute_rows(n)[k], stat)


def brute_total(n: int, stat: str) -> int:
    return getattr(brute_rows(n)[-1], stat)


@lru_cache(maxsize=None)
def _hsp_series(N: int):
    return series.build_hsp_series(N)


@lru_cache(maxsize=None)
def _dsv_series(N: int):
    return series.build_dsv_series(N)


def _first_mismatch(pairs):
    for key, a, b in pairs:
        if a != b:
            return key, a, b
    return None


def _grid_check(name, pairs, detail="") -> Check:
    bad = _first_mismatch(pairs)
    if bad is None:
        return check(name, True, detail=detail)
    key, a, b = bad
    return check(name, False, a, b, f"first mismatch at {key}. {detail}".strip())


# ---------------------------------------------------------------------------

def core_checks(max_n: int) -> list[Check]:
    out = []
    count_pairs = []
    for n in range(1, max_n + 1):
        rows = brute_rows(n)
        count_pairs.append((n, rows[-1].count, 2 ** (n - 1)))
        count_pairs += [((n, k), rows[k].count, math.comb(n - 1, k - 1)) for k in range(1, n + 1)]
    out.append(_grid_check("core.count_identities", count_pairs))

    sym_ok, bound_ok = True, True
    for n in range(min(max_n, 12) + 1):
        for c in enumerate_compositions(n):
            rec = stat_record(c)
            rev = stat_record(type(c)(c.parts[::-1]))
            sym_ok &= rec == rev
            bound_ok &= rec.hsp >= rec.sp and rec.dsv >= rec.sv and rec.sp + rec.sv <= max(c.k - 2, 0)
    out.append(check("core.reversal_symmetry", sym_ok))
    out.append(check("core.stat_bounds", bound_ok))

    consistent = True
    for n in range(min(max_n, 12) + 1):
        tot = brute_rows(n)[-1]
        for fam, cnt, mag in (("peak", "sp", "hsp"), ("valley", "sv", "dsv")):
            joint = brute_joint(n, fam)
            consistent &= sum(j * v for (_, j, _), v in joint.items()) == getattr(tot, cnt)
            consistent &= sum(t * v for (_, _, t), v in joint.items()) == getattr(tot, mag)
    out.append(check("core.aggregate_vs_joint", consistent))

    if max_n >= 5:
        t5 = brute_rows(5)[-1]
        out.append(check("core.anchor_n5_peaks", (t5.sp, t5.hsp) == (3, 4), [t5.sp, t5.hsp], [3, 4]))
    if max_n >= 8:
        t8 = brute_rows(8)[-1]
        out.append(check("core.anchor_n8_valleys", (t8.sv, t8.dsv) == (15, 17), [t8.sv, t8.dsv], [15, 17]))
    return out


def series_checks(max_n: int, joint_n: int = 12, series_n: int = 14) -> list[Check]:
    out = []
    jn = min(max_n, joint_n)
    sn = min(max_n, series_n)
    H, D = _hsp_series(sn), _dsv_series(sn)

    for name, S, fam in (("series.joint_hsp", H, "peak"), ("series.joint_dsv", D, "valley")):
        out.append(_grid_check(name, ((n, S[n].as_tuples(), dict(sorted(brute_joint(n, fam).items())))
                                      for n in range(jn + 1))))

    Hj, Dj = _hsp_series(jn), _dsv_series(jn)
    out.append(check("series.specialization_h1_vs_sp_form",
                     Hj.substitute_one(["h"]) == series.build_sp_series(jn)))
    out.append(check("series.specialization_d1_vs_sv_form",
                     Dj.substitute_one(["d"]) == series.build_sv_series(jn)))

    norm_pairs = []
    for name, S, ms in (("hsp", H, ["q", "h"]), ("dsv", D, ["p", "d"])):
        M = S.substitute_one(ms)
        for n in range(1, sn + 1):
            norm_pairs += [((name, n, k), M.coefficient(n, (k,)), formulas.binom(n - 1, k - 1)) for k in range(n + 1)]
            norm_pairs.append(((name, n), sum(M[n].terms.values()), 2 ** (n - 1)))
    out.append(_grid_check("series.marginal_normalization", norm_pairs))

    gf = {w: series.rational_gf_coeffs(w, sn) for w in series.GF_KINDS}
    moments = {
        "hsp": series.marker_moment(H, "h").scalars(),
        "sp": series.marker_moment(H, "q").scalars(),
        "dsv": series.marker_moment(D, "d").scalars(),
        "sv": series.marker_moment(D, "p").scalars(),
    }
    for stat in ("hsp", "sp", "dsv", "sv"):
        out.append(_grid_check(f"series.moment_{stat}_vs_brute",
                               ((n, moments[stat][n], brute_total(n, stat)) for n in range(sn + 1))))
    out.append(_grid_check("series.hsp_total_moment_vs_gf", ((n, moments["hsp"][n], gf["hsp_total"][n]) for n in range(sn + 1))))
    out.append(_grid_check("series.dsv_total_moment_vs_gf", ((n, moments["dsv"][n], gf["dsv_total"][n]) for n in range(sn + 1))))

    for stat, S, mk in (("hsp", H, "h"), ("dsv", D, "d")):
        mom = series.marker_moment(S, mk, keep=["y"])
        table = gf[f"{stat}_nk"]
        out.append(_grid_check(f"series.nk_{stat}_moment_vs_gf_vs_brute", (
            ((n, k), (mom.coefficient(n, (k,)), table.get((n, k), 0)), (brute_cell(n, k, stat),) * 2)
            for n in range(sn + 1) for k in range(n + 1))))

    printed = gf["dsv_nk_printed"]
    negatives = sorted(key for key, v in printed.items() if v < 0)
    mism = [(n, k) for n in range(sn + 1) for k in range(n + 1)
            if printed.get((n, k), 0) != brute_cell(n, k, "dsv")]
    out.append(Check("series.printed_bivariate_valley_gf", FINDING,
                     len(negatives), 0,
                     f"published bivariate valley-depth GF has {len(negatives)} negative coefficients "
                     f"and disagrees with brute force at {len(mism)} cells up to n={sn}; first negative {negatives[:1]}"))
    nonneg = all(v >= 0 for w in ("hsp_total", "dsv_total") for v in gf[w]) and \
        all(v >= 0 for w in ("hsp_nk", "dsv_nk") for v in gf[w].values())
    out.append(check("series.gf_nonnegative", nonneg))

    low = _hsp_series(min(sn, 8))
    out.append(check("series.truncation_coherence",
                     all(low[n] == H[n] for n in range(low.trunc + 1))))
    return out


def closed_checks(max_n: int, closed_n: int = 200) -> list[Check]:
    out = []
    for which, exact in (("hsp", closed_form.hsp_closed_exact), ("dsv", closed_form.dsv_closed_exact)):
        vals = [exact(n) for n in range(closed_n + 1)]
        bad = [n for n, v in enumerate(vals) if v.im != 0 or v.re.denominator != 1 or v.re < 0]
        out.append(check(f"closed.{which}.integrality_n<={closed_n}", not bad, bad[:5], [],
                         "imaginary part cancels and value is a nonnegative integer"))
        rep = closed_form.closed_recurrence_check(which, closed_n,
                                                  seed=[brute_total(n, which) for n in range(min(9, max_n + 1))])
        out.append(check(f"closed.{which}.recurrence_n<={closed_n}", rep.ok, rep.mismatches[:5], []))
        three = [(n, (rep.closed[n], rep.recurrence[n]), (brute_total(n, which),) * 2) for n in range(max_n + 1)]
        out.append(_grid_check(f"closed.{which}.three_way_n<={max_n}", three))
        start, mism = closed_form.validity_range(which, max_n)
        out.append(Check(f"closed.{which}.validity_range", FINDING, start, max_n,
                         f"closed form equals brute force for {start} <= n <= {max_n}; mismatches {mism}"))
    ratios = [Fraction(closed_form.hsp_closed(n), n * 2 ** (n - 1)) for n in range(50, closed_n + 1)]
    out.append(check("closed.hsp.asymptotic_ratio", all(Fraction(12, 100) <= r <= Fraction(16, 100) for r in ratios),
                     float(min(ratios, default=0)), float(max(ratios, default=0)), "hsp(n)/(n 2^(n-1)) in [0.12, 0.16]"))
    return out


def formula_checks(max_n: int, sp_n: int = 14) -> list[Check]:
    out = []
    for stat, fn in (("hsp", formulas.hsp_nk), ("dsv", formulas.dsv_nk)):
        out.append(_grid_check(f"formulas.{stat}_nk_vs_brute",
                               (((n, k), fn(n, k), brute_cell(n, k, stat))
                                for n in range(max_n + 1) for k in range(n + 1))))
        lit = [(n, k) for n in range(max_n + 1) for k in (3,) if k <= n
               and fn(n, k, literal=True) != brute_cell(n, k, stat)]
        out.append(Check(f"formulas.{stat}_k3_literal", FINDING, len(lit), 0,
                         f"unguarded k=3 formula disagrees with brute force at n in {[n for n, _ in lit]}"))
    out.append(_grid_check("formulas.sp_count_nk_vs_brute",
                           (((n, k), formulas.sp_count_nk(n, k), brute_cell(n, k, "sp"))
                            for n in range(min(max_n, sp_n) + 1) for k in range(4, n + 1))))
    sn = min(max_n, sp_n)
    mom = series.marker_moment(_hsp_series(sn), "q", keep=["y"])
    out.append(_grid_check("formulas.sp_count_nk_vs_series",
                           (((n, k), formulas.sp_count_nk(n, k), mom.coefficient(n, (k,)))
                            for n in range(sn + 1) for k in range(4, n + 1))))
    return out


def expectation_checks(n_max: int = 12, cap: int = ORACLE_CAP) -> list[Check]:
    out = []
    series_pairs, oracle_pairs, tails = [], [], []
    for p in P_GRID:
        for stat in geometric.STATS:
            s = geometric.geometric_marker_series(stat, p, n_max, order=1)
            sweep = geometric.oracle_sweep(stat, p, n_max, cap)
            for n in range(3, n_max + 1):
                params = geometric.GeomParams(p, n)
                e = geometric.expected_value(stat, params)
                c = s[n].as_tuples()
                series_pairs.append(((stat, p, n), (c.get((0,), 0), c.get((1,), 0)), (1, e)))
                o = sweep[n]
                gap = e - o.mean
                oracle_pairs.append(((stat, p, n), 0 <= gap <= o.tail_bound, True))
                tails.append((p, n, stat, gap, o.tail_bound))
    out.append(_grid_check("geom.expectation_formula_vs_series", series_pairs))
    out.append(_grid_check("geom.expectation_formula_vs_oracle", oracle_pairs))
    big = sorted({p for p, _, _, _, t in tails if t >= TWO_POW_M30})
    worst_gap = max(gap for *_, gap, _ in tails)
    out.append(Check("geom.oracle_tail_bound_magnitude", FINDING, float(max(t for *_, t in tails)), float(TWO_POW_M30),
                     f"tail bound exceeds 2^-30 at L={cap} for p in {[str(p) for p in big]}; "
                     f"largest true truncation gap {float(worst_gap):.3g}"))
    return out


def monte_carlo_checks(trials: int, n: int = MC_LENGTH, seed: int = MC_SEED, p=Fraction(1, 2)):
    params = geometric.GeomParams(p, n)
    summaries = sampling.monte_carlo_all(params, trials, seed)
    out = []
    for stat, mc in summaries.items():
        e = geometric.expected_value(stat, params)
        z = (mc.mean - float(e)) / mc.std_error if mc.std_error else 0.0
        out.append(check(f"geom.monte_carlo_mean_{stat}", abs(z) <= 4, mc.mean, e,
                         f"{trials} trials, seed {seed}, z = {z:.3f}"))
    return out, summaries


def variance_report(summaries, oracle_n: int = 10, scan_n: int = 200, p=Fraction(1, 2),
                    cap: int = ORACLE_CAP, mc_n: int = MC_LENGTH):
    """Rows comparing printed variances with exact and simulated ones, plus checks."""
    rows, out = [], []
    neg = [n for n in range(3, scan_n + 1) if geometric.variance_formula("sp", geometric.GeomParams(p, n)) < 0]
    out.append(Check("geom.variance_sp_printed_negative", FINDING, neg[:1], [],
                     f"printed Var[sp] at p={p} is negative for {len(neg)} values of 3 <= n <= {scan_n}"
                     + (f", first at n={neg[0]}" if neg else "")))
    consistent = True
    agree: dict[str, list[int]] = {s: [] for s in geometric.VARIANCE_STATS}
    for stat in geometric.STATS:
        sweep = geometric.oracle_sweep(stat, p, oracle_n, cap)
        for n in range(3, oracle_n + 1):
            params = geometric.GeomParams(p, n)
            _, exact_var = geometric.series_moments(stat, params)
            dp_var = sweep[n].variance
            consistent &= abs(exact_var - dp_var) <= Fraction(1, 10 ** 9)
            printed = geometric.variance_formula(stat, params) if stat in geometric.VARIANCE_STATS else None
            if printed is not None and printed == exact_var:
                agree[stat].append(n)
            rows.append({"stat": stat, "p": p, "n": n, "source": "exact",
                         "printed": printed, "series_exact": exact_var, "oracle_dp": dp_var,
                         "agrees": None if printed is None else printed == exact_var})
    out.append(check("geom.variance_series_vs_oracle", consistent,
                     detail="exact series variance equals capped DP variance within 1e-9"))
    for stat, ns in agree.items():
        out.append(Check(f"geom.variance_{stat}_printed_vs_exact", FINDING, ns, list(range(3, oracle_n + 1)),
                         f"printed formula equals exact variance at n in {ns} (n = 3..{oracle_n})"))
    mc_consistent = True
    for stat, mc in summaries.items():
        params = geometric.GeomParams(p, mc_n)
        _, exact_var = geometric.series_moments(stat, params)
        tol = 4 * mc.variance_std_error
        mc_consistent &= abs(mc.variance - float(exact_var)) <= tol
        printed = geometric.variance_formula(stat, params) if stat in geometric.VARIANCE_STATS else None
        rows.append({"stat": stat, "p": p, "n": mc_n, "source": "monte_carlo",
                     "printed": printed, "series_exact": exact_var, "mc_variance": mc.variance,
                     "mc_variance_se": mc.variance_std_error,
                     "agrees": None if printed is None else abs(float(printed) - mc.variance) <= tol})
        if printed is not None:
            out.append(Check(f"geom.variance_{stat}_printed_vs_mc_n{mc_n}", FINDING, printed, mc.variance,
                             "agree" if abs(float(printed) - mc.variance) <= tol else "disagree"))
    out.append(check("geom.variance_series_vs_mc", mc_consistent,
                     detail=f"exact series variance within 4 SE of simulated variance at n={mc_n}"))
    return rows, out


def run_verify(max_n: int = 12, deep: bool = False) -> Report:
    if deep:
        max_n = max(max_n, 18)
    trials = 1_000_000 if deep else 200_000
    checks = []
    checks += core_checks(max_n)
    checks += series_checks(max_n, joint_n=14 if deep else 12, series_n=18 if deep else 14)
    checks += closed_checks(max_n)
    checks += formula_checks(max_n)
    checks += expectation_checks()
    mc_checks, summaries = monte_carlo_checks(trials)
    checks += mc_checks
    rows, vchecks = variance_report(summaries)
    checks += vchecks
    return Report("verify", {"max_n": max_n, "deep": deep, "trials": trials, "seed": MC_SEED},
                  rows, sorted(checks, key=lambda c: c.name))
