"""Quadratic-table recurrences for the two counting sequences.

The pool-indexed counts t[n][p] (c-subtrees of size n over a pool of p
already-built subtrees) satisfy, for both kinds,

    t[n+1][p] = sum_{i=0}^{n} t[i][p] * t[n-i][p+i]      (n >= 1)

with base rows
    compacted:  t[0][p] = p+1,  t[1][p] = p^2 + p + 1
    relaxed:    t[0][p] = p+1,  t[1][p] = (p+1)^2

The size-1 relaxed row is not an independent assumption: a single node with
two pointers has (p+1)^2 target choices.  It is validated against brute
force through the n <= 6 counts, which exercise t[1][p] for p up to 4.

The counting sequence of interest is column p = 0.
"""

from __future__ import annotations

from dataclasses import dataclass

VALID_KINDS = ("compacted", "relaxed")


@dataclass(frozen=True)
class CountTable:
    """Triangular table: rows[n][p] defined for 0 <= n <= nmax, p <= nmax - n."""

    kind: str
    nmax: int
    rows: tuple[tuple[int, ...], ...]

    def value(self, n: int, p: int) -> int:
        if not (0 <= n <= self.nmax and 0 <= p <= self.nmax - n):
            raise ValueError(
                f"entry ({n},{p}) outside the triangle of a table built to nmax={self.nmax}"
            )
        return self.rows[n][p]

    def count(self, n: int) -> int:
        """Number of {kind} trees of size n (column p = 0)."""
        if not 0 <= n <= self.nmax:
            raise ValueError(f"n={n} out of range for a table built to nmax={self.nmax}")
        return self.rows[n][0]

    def counts(self) -> list[int]:
        return [self.rows[n][0] for n in range(self.nmax + 1)]


def build_table(kind: str, nmax: int) -> CountTable:
    if kind not in VALID_KINDS:
        raise ValueError(f"kind must be one of {VALID_KINDS}, got {kind!r}")
    if nmax < 0:
        raise ValueError("nmax must be >= 0")
    rows: list[list[int]] = [[p + 1 for p in range(nmax + 1)]]
    if nmax >= 1:
        if kind == "compacted":
            rows.append([p * p + p + 1 for p in range(nmax)])
        else:
            rows.append([(p + 1) * (p + 1) for p in range(nmax)])
    for n in range(1, nmax):
        # fill row n+1 from the convolution over split sizes i
        width = nmax - n  # p ranges 0..width-1
        row = []
        for p in range(width):
            acc = 0
            for i in range(n + 1):
                acc += rows[i][p] * rows[n - i][p + i]
            row.append(acc)
        rows.append(row)
    return CountTable(kind, nmax, tuple(tuple(r) for r in rows))


def compacted_count(n: int) -> int:
    """Convenience single-value accessor (builds a throwaway table)."""
    return build_table("compacted", n).count(n)


def relaxed_count(n: int) -> int:
    return build_table("relaxed", n).count(n)
