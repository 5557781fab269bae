import math

import pytest

from compacta.exhaustive import brute_count
from compacta.recurrences import (
    build_table,
    compacted_count,
    relaxed_count,
)

COMPACTED = [1, 1, 3, 15, 111, 1119, 14487, 230943, 4395855, 97608831]
RELAXED = [1, 1, 3, 16, 127, 1363, 18628, 311250, 6173791, 142190703]


def test_base_rows():
    ct = build_table("compacted", 6)
    rt = build_table("relaxed", 6)
    assert ct.value(1, 0) == 1
    assert ct.value(0, 1) == 2
    assert ct.value(2, 0) == 3
    assert [ct.value(1, p) for p in range(5)] == [p * p + p + 1 for p in range(5)]
    assert [rt.value(0, p) for p in range(7)] == [p + 1 for p in range(7)]
    assert [rt.value(1, p) for p in range(5)] == [(p + 1) ** 2 for p in range(5)]


def test_counting_sequences():
    assert build_table("compacted", 9).counts() == COMPACTED
    assert build_table("relaxed", 9).counts() == RELAXED
    assert compacted_count(6) == 14487
    assert compacted_count(9) == 97608831
    assert relaxed_count(6) == 18628
    assert relaxed_count(8) == 6173791
    assert compacted_count(0) == relaxed_count(0) == 1


def test_relaxed_dominates_compacted():
    ct = build_table("compacted", 12)
    rt = build_table("relaxed", 12)
    for n in range(13):
        for p in range(13 - n):
            assert rt.value(n, p) >= ct.value(n, p)
    # equality fails first at n = 1 and only for p >= 1
    assert rt.value(1, 0) == ct.value(1, 0)
    for p in range(1, 10):
        assert rt.value(1, p) > ct.value(1, p)


def test_size_one_relaxed_row_against_brute_force():
    # the (p+1)^2 row is a derivation; the n <= 6 counts exercise it for
    # pools up to p = 4, so agreement here confirms it
    rt = build_table("relaxed", 6)
    for n in range(7):
        assert rt.count(n) == RELAXED[n]
    for n in range(6):
        assert brute_count(n, "relaxed") == RELAXED[n]


def test_factorial_catalan_bounds():
    ct = build_table("compacted", 60)
    rt = build_table("relaxed", 60)
    for n in range(61):
        cat = math.comb(2 * n, n) // (n + 1)
        assert math.factorial(n) <= ct.count(n) <= rt.count(n)
        assert rt.count(n) <= cat * math.factorial(n)


def test_out_of_range_errors():
    table = build_table("compacted", 4)
    with pytest.raises(ValueError):
        table.count(5)
    with pytest.raises(ValueError):
        table.value(2, 3)
    with pytest.raises(ValueError):
        build_table("gamma", 3)


def test_entries_strictly_positive():
    for kind in ("compacted", "relaxed"):
        t = build_table(kind, 15)
        assert all(v > 0 for row in t.rows for v in row)
