"""Linear differential operators with integer-polynomial coefficients.

An operator is kept in right-canonical form sum_i p_i(z) * D^i (all
derivatives to the right of the polynomials).  Composition normalizes with
the commutation rule D * p(z) = p(z) * D + p'(z).

Two operator families are built here by recursion on the right-height bound:
one annihilating the exponential generating function of relaxed binary
trees, one annihilating that of compacted binary trees.  Their canonical
coefficients satisfy closed per-index recurrences and Chebyshev closed
forms, which the checker functions verify independently of the composition
path.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

from .poly import (
    IntPoly,
    ONE,
    Z,
    ZERO,
    binomial_alternating_poly,
    chebyshev_t,
    chebyshev_u,
    format_poly,
    quarter_square_transform,
)


class DiffOperator:
    """sum coeffs[i] * D^i with IntPoly coefficients, highest zero stripped."""

    __slots__ = ("coeffs",)

    def __init__(self, *coeffs: IntPoly):
        end = len(coeffs)
        while end > 0 and coeffs[end - 1].is_zero():
            end -= 1
        object.__setattr__(self, "coeffs", tuple(coeffs[:end]))

    @property
    def order(self) -> int:
        """Highest derivative order; -1 for the zero operator."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> IntPoly:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return ZERO

    def __eq__(self, other) -> bool:
        return isinstance(other, DiffOperator) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "DiffOperator") -> "DiffOperator":
        n = max(len(self.coeffs), len(other.coeffs))
        return DiffOperator(*(self.coeff(i) + other.coeff(i) for i in range(n)))

    def __neg__(self) -> "DiffOperator":
        return DiffOperator(*(-p for p in self.coeffs))

    def __sub__(self, other: "DiffOperator") -> "DiffOperator":
        return self + (-other)

    def __mul__(self, other: "DiffOperator") -> "DiffOperator":
        return op_compose(self, other)

    def scale(self, c: int) -> "DiffOperator":
        return DiffOperator(*(p * c for p in self.coeffs))

    def __repr__(self) -> str:
        return f"DiffOperator({', '.join(map(repr, self.coeffs))})"

    def __str__(self) -> str:
        return format_operator(self)


D = DiffOperator(ZERO, ONE)
MUL_Z = DiffOperator(Z)
IDENTITY = DiffOperator(ONE)


def op_compose(a: DiffOperator, b: DiffOperator) -> DiffOperator:
    """Canonical form of a*b, so that (a*b)(f) = a(b(f)).

    Uses D^i q(z) = sum_t C(i,t) q^(t)(z) D^(i-t) termwise.
    """
    if a.is_zero() or b.is_zero():
        return DiffOperator()
    out = [ZERO] * (a.order + b.order + 1)
    for j, q in enumerate(b.coeffs):
        if q.is_zero():
            continue
        for i, p in enumerate(a.coeffs):
            if p.is_zero():
                continue
            deriv = q
            for t in range(i + 1):
                if not deriv.is_zero():
                    out[i - t + j] = out[i - t + j] + comb(i, t) * (p * deriv)
                deriv = deriv.derivative()
    return DiffOperator(*out)


def format_operator(op: DiffOperator, latex: bool = False) -> str:
    """Plain form: ``(poly)*D^i`` terms joined by `` + ``, ascending i."""
    if op.is_zero():
        return "0"
    parts = []
    for i, p in enumerate(op.coeffs):
        if p.is_zero():
            continue
        if latex:
            parts.append(f"\\left({format_poly(p)}\\right) D^{{{i}}}")
        else:
            parts.append(f"({format_poly(p)})*D^{i}")
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# Operator families indexed by the right-height bound k.
# ---------------------------------------------------------------------------

D2Z = op_compose(op_compose(D, D), MUL_Z)  # z D^2 + 2 D
ZD = op_compose(MUL_Z, D)


@lru_cache(maxsize=None)
def relaxed_operator(k: int) -> DiffOperator:
    """Annihilator of the EGF of relaxed trees of right height <= k (k >= 1).

    A_0 = (1-z), A_1 = (1-2z)D - 1, A_k = A_{k-1} D - A_{k-2} D^2 z.
    A_0 is the recursion base only: it does not annihilate the k=0 series.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return DiffOperator(IntPoly(1, -1))
    if k == 1:
        return DiffOperator(IntPoly(-1), IntPoly(1, -2))
    return op_compose(relaxed_operator(k - 1), D) - op_compose(relaxed_operator(k - 2), D2Z)


@lru_cache(maxsize=None)
def compacted_operator(k: int) -> DiffOperator:
    """Annihilator of the EGF of compacted trees of right height <= k (k >= 0).

    B_0 = (1-z)D - 1, B_1 = (1-2z)D^2 - (3-z)D,
    B_k = B_{k-1} D - B_{k-2} (D^2 z - z D).
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return DiffOperator(IntPoly(-1), IntPoly(1, -1))
    if k == 1:
        return DiffOperator(ZERO, IntPoly(-3, 1), IntPoly(1, -2))
    return op_compose(compacted_operator(k - 1), D) - op_compose(
        compacted_operator(k - 2), D2Z - ZD
    )


def build_operator(family: str, k: int) -> DiffOperator:
    """family in {"relaxed", "compacted"} (CLI aliases "L" / "M" accepted)."""
    key = family.lower()
    if key in ("relaxed", "l"):
        return relaxed_operator(k)
    if key in ("compacted", "m"):
        return compacted_operator(k)
    raise ValueError(f"unknown operator family: {family!r}")


# ---------------------------------------------------------------------------
# Independent per-coefficient recurrences for the canonical coefficients.
#
# Relaxed family, writing the order-k operator as sum_i a_{k,i}(z) D^i:
#   a_{k,0} = 0,  a_{k,1} = a_{k-1,0} - 2 a_{k-2,0},
#   a_{k,i} = a_{k-1,i-1} - (i+1) a_{k-2,i-1} - z a_{k-2,i-2}   (2 <= i <= k-1),
#   a_{k,k} = a_{k-1,k-1} - z a_{k-2,k-2}.
#
# Compacted family, order k+1, writing it as sum_i b_{k,i}(z) D^(i+1) with a
# trailing b_{k,-1}(z) D^0 term:
#   b_{k,-1} = 0,  b_{k,0} = 3-2z (k even) / z-3 (k odd),
#   b_{k,i} = b_{k-1,i-1} + (i+1) b_{k-2,i} + (z-i-2) b_{k-2,i-1} - z b_{k-2,i-2},
#   b_{k,k} = b_{k-1,k-1} - z b_{k-2,k-2}.
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def relaxed_coefficients(k: int) -> tuple[IntPoly, ...]:
    """Coefficients (index i = D^i) of the order-k relaxed operator, computed
    from the per-coefficient recurrences rather than by composition."""
    if k == 0:
        return (IntPoly(1, -1),)
    if k == 1:
        return (IntPoly(-1), IntPoly(1, -2))
    prev = relaxed_coefficients(k - 1)
    prev2 = relaxed_coefficients(k - 2)

    def at(coeffs, i):
        return coeffs[i] if 0 <= i < len(coeffs) else ZERO

    out = [ZERO] * (k + 1)
    out[1] = at(prev, 0) - 2 * at(prev2, 0)
    for i in range(2, k):
        out[i] = at(prev, i - 1) - (i + 1) * at(prev2, i - 1) - Z * at(prev2, i - 2)
    out[k] = at(prev, k - 1) - Z * at(prev2, k - 2)
    return tuple(out)


@lru_cache(maxsize=None)
def compacted_coefficients(k: int) -> tuple[IntPoly, ...]:
    """Coefficients (index i = D^(i+1), position 0 of the tuple = D^0 term)
    of the order-(k+1) compacted operator, via the per-coefficient
    recurrences.  Returned ascending by derivative order, like
    DiffOperator.coeffs."""
    if k == 0:
        return (IntPoly(-1), IntPoly(1, -1))
    if k == 1:
        return (ZERO, IntPoly(-3, 1), IntPoly(1, -2))

    def b(kk, i):
        coeffs = compacted_coefficients(kk)
        # position i+1 of the tuple holds b_{kk,i}
        return coeffs[i + 1] if -1 <= i <= kk else ZERO

    out = [ZERO] * (k + 2)
    out[1] = IntPoly(3, -2) if k % 2 == 0 else IntPoly(-3, 1)
    for i in range(1, k):
        out[i + 1] = (
            b(k - 1, i - 1)
            + (i + 1) * b(k - 2, i)
            + (IntPoly(-i - 2, 1)) * b(k - 2, i - 1)
            - Z * b(k - 2, i - 2)
        )
    out[k + 1] = b(k - 1, k - 1) - Z * b(k - 2, k - 2)
    return tuple(out)


def leading_coefficient_closed_form(k: int) -> IntPoly:
    """Top coefficient of either order-k family operator, in closed form."""
    return binomial_alternating_poly(k)


def subleading_compacted_transform_reference(m: int) -> IntPoly:
    """h_m(x) = [(m-3-2(m^2+m-2)x^2) T_m(x) + (1+2(m-1)x^2) U_m(x)] / (2(x^2-1)).

    Exact target for the quarter-square fold of the subleading compacted
    coefficient; the division is exact.
    """
    num = (IntPoly(m - 3, 0, -2 * (m * m + m - 2)) * chebyshev_t(m)) + (
        IntPoly(1, 0, 2 * (m - 1)) * chebyshev_u(m)
    )
    return num.divexact(IntPoly(-2, 0, 2))


def coeff_recurrences_check(k: int) -> str | None:
    """Cross-check composed operators against the coefficient recurrences.

    Compares every coefficient of the composed relaxed/compacted operators of
    index k with the independently recurred polynomials, and checks the two
    families share the same top coefficient.  Returns None when everything
    matches, else a message naming the first mismatching (k, i).
    """
    if k < 2:
        raise ValueError("check needs k >= 2")
    rel = relaxed_operator(k)
    rel_rec = relaxed_coefficients(k)
    for i in range(k + 1):
        if rel.coeff(i) != rel_rec[i]:
            return f"relaxed coefficient mismatch at (k={k}, i={i})"
    comp = compacted_operator(k)
    comp_rec = compacted_coefficients(k)
    for i in range(k + 2):
        if comp.coeff(i) != comp_rec[i]:
            return f"compacted coefficient mismatch at (k={k}, i={i - 1})"
    if comp.coeff(k + 1) != rel.coeff(k):
        return f"top coefficients differ between families at k={k}"
    return None


def reduce_order(op: DiffOperator) -> tuple[DiffOperator, int]:
    """Strip identically-zero low-order coefficients.

    Returns (reduced, shift): the reduced operator annihilates the shift-th
    derivative of anything the original annihilates.
    """
    shift = 0
    coeffs = op.coeffs
    while shift < len(coeffs) and coeffs[shift].is_zero():
        shift += 1
    return DiffOperator(*coeffs[shift:]), shift


def equal_up_to_scalar(a: DiffOperator, b: DiffOperator) -> bool:
    """True if a = (p/q) b for some nonzero rational p/q."""
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    if a.order != b.order:
        return False
    pa = a.coeffs[-1]
    pb = b.coeffs[-1]
    # cross-multiply with the leading coefficients' top terms
    ca, cb = pa.coeffs[-1], pb.coeffs[-1]
    return all(a.coeff(i) * cb == b.coeff(i) * ca for i in range(a.order + 1))


def apply_operator(op: DiffOperator, series, terms: int):
    """Apply the operator to an ordinary power series (list of Fractions).

    Returns the first ``terms`` coefficients of op(f); requires the input to
    carry at least terms + op.order coefficients.
    """
    if op.is_zero():
        return [0] * terms
    need = terms + op.order
    if len(series) < need:
        raise ValueError(f"need {need} input coefficients, got {len(series)}")
    out = [0] * terms
    for i, p in enumerate(op.coeffs):
        if p.is_zero():
            continue
        # i-th derivative of the series
        deriv = []
        for n in range(need - i):
            c = series[n + i]
            for t in range(n + 1, n + i + 1):
                c *= t
            deriv.append(c)
        for j, pc in enumerate(p.coeffs):
            if pc == 0:
                continue
            for n in range(terms - j):
                out[n + j] += pc * deriv[n]
    return out
