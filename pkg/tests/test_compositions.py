import math
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from sympeaks.compositions import (Composition, StatRecord, aggregate, enumerate_compositions,
                                   joint_distribution, stat_record, word_stats)


def test_compositions_of_five_match_listing():
    listed = {"5", "41", "14", "32", "23", "113", "131", "311", "221", "212",
              "122", "1112", "1211", "1121", "2111", "11111"}
    got = ["".join(map(str, c.parts)) for c in enumerate_compositions(5)]
    assert len(got) == 16
    assert set(got) == listed


def test_lexicographic_order():
    for n in range(1, 9):
        seqs = [c.parts for c in enumerate_compositions(n)]
        assert seqs == sorted(seqs)
        for k in range(1, n + 1):
            seqs = [c.parts for c in enumerate_compositions(n, k)]
            assert seqs == sorted(seqs)


def test_empty_composition():
    assert [c.parts for c in enumerate_compositions(0)] == [()]
    assert [c.parts for c in enumerate_compositions(0, 0)] == [()]
    assert list(enumerate_compositions(0, 1)) == []
    assert stat_record(Composition(())) == StatRecord()


def test_impossible_k_is_empty():
    assert list(enumerate_compositions(3, 4)) == []
    assert list(enumerate_compositions(3, 0)) == []


def test_six_into_three_parts():
    assert len(list(enumerate_compositions(6, 3))) == 10 == math.comb(5, 2)


@pytest.mark.parametrize("n", range(1, 19))
def test_count_identities(n):
    assert sum(1 for _ in enumerate_compositions(n)) == 2 ** (n - 1)
    for k in range(1, n + 1):
        assert sum(1 for _ in enumerate_compositions(n, k)) == math.comb(n - 1, k - 1)


def test_invalid_parts_rejected():
    with pytest.raises(ValueError):
        Composition((1, 0, 2))
    with pytest.raises(ValueError):
        list(enumerate_compositions(-1))


@pytest.mark.parametrize("parts, expected", [
    ((1, 3, 1), StatRecord(sp=1, sv=0, hsp=2, dsv=0)),
    ((1, 1, 1, 1, 1), StatRecord()),
    ((2, 1, 2, 1, 2), StatRecord(sp=1, sv=2, hsp=1, dsv=2)),
    ((3, 2, 3), StatRecord(sv=1, dsv=1)),
    ((1, 5, 1, 5, 1), StatRecord(sp=2, sv=1, hsp=8, dsv=4)),
])
def test_stat_record_examples(parts, expected):
    assert stat_record(Composition(parts)) == expected


def test_reversal_symmetry_and_bounds_exhaustive():
    for n in range(13):
        for c in enumerate_compositions(n):
            rec = stat_record(c)
            assert rec == stat_record(Composition(c.parts[::-1]))
            assert rec.hsp >= rec.sp and rec.dsv >= rec.sv
            assert rec.sp + rec.sv <= max(c.k - 2, 0)


@given(st.lists(st.integers(1, 6), max_size=12))
def test_word_stats_window_definition(word):
    rec = word_stats(word)
    sp = sum(1 for i in range(len(word) - 2) if word[i] < word[i + 1] and word[i] == word[i + 2])
    sv = sum(1 for i in range(len(word) - 2) if word[i] > word[i + 1] and word[i] == word[i + 2])
    assert (rec.sp, rec.sv) == (sp, sv)
    assert rec == word_stats(word[::-1])


def test_aggregate_anchor_values():
    t5 = aggregate(5)[-1]
    assert (t5.sp, t5.hsp) == (3, 4)
    t8 = aggregate(8)[-1]
    assert (t8.sv, t8.dsv) == (15, 17)
    t2 = aggregate(2)[-1]
    assert (t2.sp, t2.sv, t2.hsp, t2.dsv) == (0, 0, 0, 0)


def test_n8_valley_compositions():
    # 14 compositions carry valleys; 21212 carries two of them.
    with_valleys = [c for c in enumerate_compositions(8) if stat_record(c).sv]
    assert len(with_valleys) == 14
    assert sum(stat_record(c).sv for c in with_valleys) == 15
    assert [c.parts for c in with_valleys if stat_record(c).sv == 2] == [(2, 1, 2, 1, 2)]


def test_aggregate_rows_sum_to_totals():
    rows = aggregate(9)
    assert [r.k for r in rows] == list(range(10)) + [None]
    total = rows[-1]
    for field in ("count", "sp", "sv", "hsp", "dsv"):
        assert sum(getattr(r, field) for r in rows[:-1]) == getattr(total, field)


def test_joint_distribution_examples():
    assert joint_distribution(5, "peak")[3, 1, 2] == 1
    assert joint_distribution(1, "peak") == Counter({(1, 0, 0): 1})
    v8 = joint_distribution(8, "valley")
    assert sum(j * v for (_, j, _), v in v8.items()) == 15
    assert sum(t * v for (_, _, t), v in v8.items()) == 17
    with pytest.raises(ValueError):
        joint_distribution(3, "ridge")


@pytest.mark.parametrize("n", range(1, 11))
def test_joint_distribution_totals(n):
    for fam in ("peak", "valley"):
        assert sum(joint_distribution(n, fam).values()) == 2 ** (n - 1)
