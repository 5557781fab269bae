from fractions import Fraction
from math import factorial

import pytest

from compacta.dfinite import (
    CoeffRecurrence,
    IntegralityError,
    SeededSequence,
    SeedUnavailableError,
    closed_form_oracle,
    ode_to_recurrence,
    seed,
    sequence_values,
    stream,
)
from compacta.exhaustive import brute_count
from compacta.operators import apply_operator, compacted_operator, relaxed_operator
from compacta.poly import IntPoly
from compacta.recurrences import build_table


def double_factorial_odd(n):
    out = 1
    for t in range(1, 2 * n, 2):
        out *= t
    return out


# --- recurrence extraction ---------------------------------------------------


def test_order_one_recurrence_shape():
    # (1-2z)D - 1 annihilates sum (2n-1)!! z^n/n!; the induced relation is
    # n a_n = (2n-1) a_{n-1}
    rec = ode_to_recurrence(relaxed_operator(1))
    assert rec.span == 1
    assert rec.valid_from == 1
    assert rec.coeffs[0] == IntPoly(0, 1)
    assert rec.coeffs[1] == IntPoly(1, -2)
    a = [Fraction(double_factorial_odd(n), factorial(n)) for n in range(10)]
    for n in range(1, 10):
        assert rec.residual(a, n) == 0


def test_recurrence_annihilates_truncated_series():
    # an annihilator composed with its solution's coefficients gives zero
    for k in (1, 2, 3):
        op = relaxed_operator(k)
        counts = sequence_values(k, "relaxed", 55)
        series = [Fraction(c, factorial(n)) for n, c in enumerate(counts)]
        residual = apply_operator(op, series, 50)
        assert all(v == 0 for v in residual)
        rec = ode_to_recurrence(op)
        for n in range(rec.valid_from, 50):
            assert rec.residual(series, n) == 0


def test_leading_integer_roots():
    rec = ode_to_recurrence(relaxed_operator(3))
    assert rec.leading_integer_roots() == [0, 1, 2]
    rec = ode_to_recurrence(compacted_operator(2))
    assert rec.leading_integer_roots() == [0, 1, 2]


def test_seeded_sequence_rejects_short_seeds():
    rec = ode_to_recurrence(relaxed_operator(3))
    with pytest.raises(ValueError):
        SeededSequence(rec, (Fraction(1),), "egf")


# --- seeding -----------------------------------------------------------------


def test_default_seeds_come_from_tables():
    rt = build_table("relaxed", 9)
    for k in range(1, 8):
        sq = seed(k, "relaxed")
        assert len(sq.seeds) <= k + 2
        for n, a in enumerate(sq.seeds):
            assert a == Fraction(rt.count(n), factorial(n))


def test_explicit_seed_count():
    sq = seed(2, "relaxed", n0=4)
    assert [a * factorial(n) for n, a in enumerate(sq.seeds)] == [1, 1, 3, 16]


def test_seed_beyond_tables_uses_brute_force():
    sq = seed(2, "relaxed", n0=5)
    assert sq.seeds[4] * factorial(4) == 126  # height-filtered count at n = 4


def test_seed_unavailable_on_tiny_budget():
    with pytest.raises(SeedUnavailableError):
        seed(2, "relaxed", n0=6, budget=10)


def test_compacted_seed_small():
    sq = seed(1, "compacted", n0=3)
    assert [a * factorial(n) for n, a in enumerate(sq.seeds)] == [1, 1, 3]


def test_relaxed_zero_has_no_operator():
    with pytest.raises(ValueError):
        seed(0, "relaxed")
    assert sequence_values(0, "relaxed", 6) == [factorial(n) for n in range(7)]


# --- streaming ----------------------------------------------------------------


def test_stream_double_factorials():
    assert sequence_values(1, "relaxed", 5) == [1, 1, 3, 15, 105, 945]
    assert sequence_values(1, "relaxed", 30)[30] == double_factorial_odd(30)


def test_stream_relaxed_two_closed_form_value():
    # 4! * F_10 = 24 * 55
    assert sequence_values(2, "relaxed", 5)[5] == 1320


def test_stream_compacted_one_series():
    # series of the integrating factor form: 1, 1, 3, 14, 92, 786, ...
    values = sequence_values(1, "compacted", 6)
    assert values == [1, 1, 3, 14, 92, 786, 8278]
    assert values[2] == 3
    for n, v in enumerate(values):
        assert closed_form_oracle(1, "compacted", n) == v


def test_stream_compacted_two_initial_values():
    assert sequence_values(2, "compacted", 2) == [1, 1, 3]


def test_streams_match_filtered_brute_force():
    for family in ("relaxed", "compacted"):
        for k in range(0, 4):
            got = sequence_values(k, family, 5)
            want = [brute_count(n, family, max_right_height=k) for n in range(6)]
            assert got == want, (family, k)


def test_streams_match_unrestricted_prefix():
    rt = build_table("relaxed", 8)
    ct = build_table("compacted", 8)
    for k in range(1, 7):
        assert sequence_values(k, "relaxed", k + 1) == [
            rt.count(n) for n in range(k + 2)
        ]
        assert sequence_values(k, "compacted", k + 1) == [
            ct.count(n) for n in range(k + 2)
        ]


def test_boundary_misses_exactly_the_right_chain():
    # the only size-(k+2) tree of right height k+1 is the all-right chain
    # (every slot pool is 0 there, so it exists once and is compacted)
    for family in ("relaxed", "compacted"):
        table = build_table(family, 7)
        for k in range(1, 6):
            bounded = sequence_values(k, family, k + 2)
            assert bounded[k + 2] == table.count(k + 2) - 1


def test_stream_monotone_in_k():
    prev = sequence_values(1, "relaxed", 40)
    for k in range(2, 6):
        now = sequence_values(k, "relaxed", 40)
        assert all(a <= b for a, b in zip(prev, now))
        prev = now


def test_non_integral_seed_raises():
    rec = ode_to_recurrence(compacted_operator(1))
    wrong = SeededSequence(rec, (Fraction(1), Fraction(1, 3)), "egf")
    with pytest.raises(IntegralityError):
        stream(wrong, 30)


def test_inexact_division_raises():
    # 2 a_n + n a_{n-1} = 0 forces a half-integer at the first step
    rec = CoeffRecurrence((IntPoly(2), IntPoly(0, 1)), valid_from=0)
    odd = SeededSequence(rec, (Fraction(1),), "egf")
    with pytest.raises(IntegralityError):
        stream(odd, 5)


def test_ogf_scale_streams_fractions():
    rec = ode_to_recurrence(compacted_operator(0))  # (1-z)D - 1
    sq = SeededSequence(rec, (Fraction(1),), "ogf")
    assert stream(sq, 5) == [Fraction(1)] * 6


# --- closed forms ---------------------------------------------------------


def test_closed_form_oracle_values():
    assert closed_form_oracle(2, "relaxed", 4) == 126
    assert closed_form_oracle(1, "relaxed", 10) == 654729075  # 19!!
    assert closed_form_oracle(0, "relaxed", 6) == 720
    assert closed_form_oracle(0, "compacted", 6) == 720
    assert closed_form_oracle(2, "compacted", 10) is None
    assert closed_form_oracle(3, "relaxed", 10) is None


def test_closed_forms_match_streams():
    r2 = sequence_values(2, "relaxed", 30)
    c1 = sequence_values(1, "compacted", 30)
    for n in range(31):
        assert closed_form_oracle(2, "relaxed", n) == r2[n]
        assert closed_form_oracle(1, "compacted", n) == c1[n]
