"""From annihilating operators to coefficient recurrences and exact streams.

For an operator sum_i p_i(z) D^i applied to an ordinary power series
sum a_nu z^nu, comparing the coefficient of z^nu gives

    sum_j ( sum_i p_{i,i+j} * (nu - j)^falling(i) ) a_{nu-j} = 0,

valid for every nu >= 0 with a_m = 0 for m < 0.  Re-indexing so the leading
term is a_n yields the normal form sum_{j=0}^{s} q_j(n) a_{n-j} = 0, valid
for n >= valid_from, with q_0 vanishing exactly at the indices where the
forward recurrence cannot determine a value; seeding past the last
nonnegative integer root of q_0 makes the stream unique.

The stream itself runs on the n!-scaled integer counts: multiplying the
relation by n! turns q_j(n) into q_j(n) * n^falling(j), so each step is a
few big-int multiplies and one exact division whose remainder doubles as
the integrality assertion.  Seeds come from the exact count tables: a tree
of size at most k+1 cannot exceed right height k, so the bounded and
unbounded counts coincide on every index the default seeding needs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .exhaustive import BudgetExceededError, brute_count
from .operators import DiffOperator, build_operator
from .poly import IntPoly, falling_factorial_poly
from .recurrences import build_table


class IntegralityError(ArithmeticError):
    """A streamed value failed the exact-division check: wrong seeds or
    an operator that does not annihilate the intended series."""


class SeedUnavailableError(RuntimeError):
    """Requested seeds need brute force beyond the enumeration budget."""


@dataclass(frozen=True)
class CoeffRecurrence:
    """sum_{j=0}^{s} coeffs[j](n) * a_{n-j} = 0 on ordinary coefficients.

    Guaranteed for n >= valid_from (with a_m = 0 for m < 0); coeffs[0] is
    not identically zero.
    """

    coeffs: tuple[IntPoly, ...]
    valid_from: int

    @property
    def span(self) -> int:
        return len(self.coeffs) - 1

    def leading_integer_roots(self, scan_limit: int | None = None) -> list[int]:
        """Nonnegative integer roots of q_0 up to a scan bound."""
        q0 = self.coeffs[0]
        if scan_limit is None:
            scan_limit = self.valid_from + self.span + max(q0.degree, 1) + 16
        return [n for n in range(scan_limit + 1) if q0(n) == 0]

    def residual(self, series, n: int):
        """Value of the relation at index n over the given coefficients."""
        acc = 0
        for j, q in enumerate(self.coeffs):
            if 0 <= n - j < len(series):
                acc += q(n) * series[n - j]
        return acc


def ode_to_recurrence(op: DiffOperator) -> CoeffRecurrence:
    """Coefficient extraction; applying the result to the ordinary
    coefficients of any series the operator annihilates gives 0."""
    if op.is_zero():
        raise ValueError("zero operator has no recurrence")
    terms: dict[int, IntPoly] = {}
    for i, p in enumerate(op.coeffs):
        for zdeg, c in enumerate(p.coeffs):
            if c == 0:
                continue
            j = zdeg - i
            contrib = c * falling_factorial_poly(i, offset=-j)
            terms[j] = terms.get(j, IntPoly()) + contrib
    js = [j for j, q in terms.items() if not q.is_zero()]
    j_min, j_max = min(js), max(js)
    shifted = []
    for j in range(j_min, j_max + 1):
        q = terms.get(j, IntPoly())
        shifted.append(q.compose_shift(j_min))
    return CoeffRecurrence(tuple(shifted), valid_from=max(-j_min, 0))


@dataclass(frozen=True)
class SeededSequence:
    """A recurrence plus enough exact leading coefficients to run it.

    seeds[n] is the ordinary coefficient a_n for n < N0 = len(seeds);
    scale "egf" reports a_n * n! (asserted integral), "ogf" reports a_n.
    """

    rec: CoeffRecurrence
    seeds: tuple[Fraction, ...]
    scale: str = "egf"

    def __post_init__(self):
        n0 = len(self.seeds)
        if n0 < 1:
            raise ValueError("need at least one seed")
        if n0 < self.rec.valid_from:
            raise ValueError(
                f"seeds cover n < {n0} but the recurrence only holds from "
                f"n = {self.rec.valid_from}"
            )
        roots = self.rec.leading_integer_roots()
        if roots and roots[-1] >= n0:
            raise ValueError(
                f"leading coefficient vanishes at n = {roots[-1]}, "
                f"seed at least {roots[-1] + 1} values"
            )


def _count_form(rec: CoeffRecurrence) -> tuple[IntPoly, ...]:
    # multiply the a_{n-j} relation by n!/(n-j)! per term
    return tuple(
        q * falling_factorial_poly(j) for j, q in enumerate(rec.coeffs)
    )


def iter_counts(seq: SeededSequence):
    """Yield (n, count) forever; count = a_n * n! as an exact integer."""
    if seq.scale != "egf":
        raise ValueError("iter_counts needs egf scale")
    window: list[int] = []  # last `span` counts, newest last
    span = seq.rec.span
    qpolys = _count_form(seq.rec)
    n = 0
    for a in seq.seeds:
        c = a * factorial(n)
        if c.denominator != 1:
            raise IntegralityError(f"seed a_{n} = {a} is not integral after scaling")
        c = int(c)
        yield n, c
        window.append(c)
        if len(window) > span:
            window.pop(0)
        n += 1
    while True:
        den = qpolys[0](n)
        if den == 0:
            raise IntegralityError(
                f"leading coefficient vanishes at n = {n}; seeds must extend past it"
            )
        num = 0
        for j in range(1, span + 1):
            if j <= len(window):
                num += qpolys[j](n) * window[-j]
        c, rem = divmod(-num, den)
        if rem:
            raise IntegralityError(f"non-integral value at n = {n}")
        yield n, c
        window.append(c)
        if len(window) > span:
            window.pop(0)
        n += 1


def stream(seq: SeededSequence, upto: int) -> list:
    """Exact values for n = 0..upto (counts for egf scale, Fractions for ogf)."""
    if upto < 0:
        raise ValueError("upto must be >= 0")
    if seq.scale == "egf":
        out = []
        for n, c in iter_counts(seq):
            out.append(c)
            if n == upto:
                return out
    # ogf: run the rational recurrence directly
    values = list(seq.seeds)
    for n in range(len(values), upto + 1):
        den = seq.rec.coeffs[0](n)
        if den == 0:
            raise IntegralityError(f"leading coefficient vanishes at n = {n}")
        acc = Fraction(0)
        for j in range(1, seq.rec.span + 1):
            if n - j >= 0:
                acc += seq.rec.coeffs[j](n) * values[n - j]
        values.append(-acc / den)
    return values[: upto + 1]


def seed(k: int, family: str, n0: int | None = None,
         budget: int | None = None) -> SeededSequence:
    """Seeded sequence for the bounded-right-height counting series.

    Default n0 is the smallest sound choice (just past the integer roots of
    the leading recurrence coefficient); every default seed index n is at
    most k+1, where bounded and unbounded counts coincide, so the exact
    tables supply the seeds.  Larger n0 falls back to height-filtered
    exhaustive counts and may exhaust the enumeration budget.
    """
    if family not in ("relaxed", "compacted"):
        raise ValueError(f"family must be 'relaxed' or 'compacted', got {family!r}")
    if k < 0:
        raise ValueError("k must be >= 0")
    if family == "relaxed" and k == 0:
        raise ValueError(
            "right height 0 has no annihilating operator; the counts are n! "
            "(use sequence_values, which special-cases it)"
        )
    op = build_operator(family, k)
    rec = ode_to_recurrence(op)
    roots = rec.leading_integer_roots()
    minimal = max(rec.valid_from, rec.span, (roots[-1] + 1) if roots else 0, 1)
    if n0 is None:
        n0 = minimal
    elif n0 < minimal:
        raise ValueError(f"n0 = {n0} too small, need at least {minimal}")

    table_max = min(n0 - 1, k + 1)
    table = build_table(family, table_max) if table_max >= 0 else None
    seeds = []
    for n in range(n0):
        if n <= k + 1:
            count = table.count(n)
        else:
            try:
                count = brute_count(n, family, max_right_height=k, budget=budget)
            except BudgetExceededError as exc:
                raise SeedUnavailableError(
                    f"seed at n = {n} needs exhaustive enumeration over budget "
                    f"({exc.estimate} objects)"
                ) from exc
        seeds.append(Fraction(count, factorial(n)))
    return SeededSequence(rec, tuple(seeds), "egf")


def sequence_values(k: int, family: str, upto: int,
                    n0: int | None = None) -> list[int]:
    """Counts of {family} trees of right height <= k for n = 0..upto."""
    if family == "relaxed" and k == 0:
        return [factorial(n) for n in range(upto + 1)]
    return stream(seed(k, family, n0), upto)


def iter_sequence(k: int, family: str):
    """Yield (n, count) forever for the bounded-right-height sequence."""
    if family == "relaxed" and k == 0:
        n, c = 0, 1
        while True:
            yield n, c
            n += 1
            c *= n
    else:
        yield from iter_counts(seed(k, family))


# ---------------------------------------------------------------------------
# Closed forms, for cross-checking the streams
# ---------------------------------------------------------------------------


def _double_factorial_odd(n: int) -> int:
    """(2n-1)!! with the empty product at n = 0."""
    out = 1
    for t in range(1, 2 * n, 2):
        out *= t
    return out


def _golden_power_component(n: int) -> Fraction:
    """b with ((3+sqrt5)/2)^n = a + b*sqrt5 over the rationals."""
    a, b = Fraction(1), Fraction(0)
    base_a, base_b = Fraction(3, 2), Fraction(1, 2)
    e = n
    while e:
        if e & 1:
            a, b = a * base_a + 5 * b * base_b, a * base_b + b * base_a
        base_a, base_b = (
            base_a * base_a + 5 * base_b * base_b,
            2 * base_a * base_b,
        )
        e >>= 1
    return b


def _relaxed_two_closed_form(n: int) -> int:
    # (n-1)!/sqrt5 * (((3+sqrt5)/2)^n - ((3-sqrt5)/2)^n); the conjugate pair
    # makes the bracket 2*b*sqrt5, so the surd cancels exactly.
    if n == 0:
        return 1
    value = factorial(n - 1) * 2 * _golden_power_component(n)
    assert value.denominator == 1
    return int(value)


def _rising(x: Fraction, m: int) -> Fraction:
    out = Fraction(1)
    for t in range(m):
        out *= x + t
    return out


def _compacted_one_closed_form(n: int) -> int:
    # coefficient extraction from exp(z/2) * (1-2z)^(-5/4)
    if n == 0:
        return 1
    total = Fraction(0)
    for j in range(n):
        m = n - 1 - j
        total += (
            Fraction(1, 2**j)
            / factorial(j)
            * (2**m)
            * _rising(Fraction(5, 4), m)
            / factorial(m)
        )
    value = factorial(n - 1) * total
    assert value.denominator == 1
    return int(value)


def closed_form_oracle(k: int, family: str, n: int) -> int | None:
    """Exact count by a closed form, or None when no closed form exists."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if family == "relaxed":
        if k == 0:
            return factorial(n)
        if k == 1:
            return _double_factorial_odd(n)
        if k == 2:
            return _relaxed_two_closed_form(n)
        return None
    if family == "compacted":
        if k == 0:
            return factorial(n)
        if k == 1:
            return _compacted_one_closed_form(n)
        return None
    raise ValueError(f"unknown family {family!r}")
