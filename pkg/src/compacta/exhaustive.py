"""Brute-force oracles: exhaustive generation of relaxed/compacted DAGs.

Generation is spine-by-spine.  For a fixed spine the legal pointer targets
of each slot form the range 0..pool (pool = spine nodes completed before the
slot is visited), so the assignments are enumerated by mixed-radix counting
and the number of relaxed DAGs over a spine is the product of (pool + 1)
over its slots.  Summing that product over spines is the fast relaxed-count
oracle; the compacted count has no such shortcut because subtree uniqueness
couples the slots, so compacted enumeration filters the relaxed stream.
That filter is why brute force tops out around size 6.

Output order is deterministic: spines are emitted smallest-left-subtree
first, assignments in mixed-radix order with the last slot fastest.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import product
from typing import Iterator

from .compaction import is_compacted
from .trees import RelaxedDag, SpineTree, right_height, slot_sequence

DEFAULT_BUDGET = 10**8


class BudgetExceededError(RuntimeError):
    """Raised when an exhaustive run would emit more objects than allowed."""

    def __init__(self, estimate: int, budget: int):
        super().__init__(
            f"enumeration would produce {estimate} objects, budget is {budget}"
        )
        self.estimate = estimate
        self.budget = budget


@dataclass(frozen=True)
class GenFilter:
    """What to generate: size, optional right-height bound, and the kind."""

    n: int
    max_right_height: int | None = None
    kind: str = "relaxed"

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be >= 0")
        if self.max_right_height is not None and self.max_right_height < 0:
            raise ValueError("right-height bound must be >= 0")
        if self.kind not in ("relaxed", "compacted"):
            raise ValueError(f"kind must be 'relaxed' or 'compacted', got {self.kind!r}")


def current_budget(budget: int | None = None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get("COMPACTA_BUDGET")
    if env:
        return int(env)
    return DEFAULT_BUDGET


def gen_spines(n: int, max_right_height: int | None = None) -> Iterator[SpineTree | None]:
    """All binary trees on n nodes (right height <= bound if given).

    Without the bound there are Catalan(n) of them; the size-0 spine is
    yielded as None.
    """
    if n == 0:
        yield None
        return
    for left_size in range(n):
        for left in gen_spines(left_size, max_right_height):
            right_bound = None if max_right_height is None else max_right_height - 1
            if right_bound is not None and right_bound < 0:
                if n - 1 - left_size == 0:
                    yield SpineTree(left, None)
                continue
            for right in gen_spines(n - 1 - left_size, right_bound):
                yield SpineTree(left, right)


def spine_assignment_count(spine: SpineTree | None) -> int:
    """Number of relaxed DAGs over a fixed spine: prod over slots of (pool+1)."""
    total = 1
    for slot in slot_sequence(spine):
        total *= slot.pool + 1
    return total


def count_relaxed_spine_product(n: int, max_right_height: int | None = None) -> int:
    """Relaxed-tree count by the spine product, independent of any table."""
    return sum(spine_assignment_count(s) for s in gen_spines(n, max_right_height))


def spine_assignments(spine: SpineTree | None) -> Iterator[RelaxedDag]:
    """All relaxed DAGs over a fixed spine, in mixed-radix target order."""
    slots = slot_sequence(spine)
    if not slots:
        yield RelaxedDag(None, {})
        return
    keys = [(s.owner, s.side) for s in slots[1:]]
    ranges = [range(s.pool + 1) for s in slots[1:]]
    # slots[0] is the leaf slot: its pool is 0, nothing to choose
    for targets in product(*ranges):
        yield RelaxedDag(spine, dict(zip(keys, targets)))


def gen_relaxed(f: GenFilter, budget: int | None = None) -> Iterator[RelaxedDag]:
    """Every relaxed DAG matching the filter, exactly once."""
    estimate = count_relaxed_spine_product(f.n, f.max_right_height)
    limit = current_budget(budget)
    if estimate > limit:
        raise BudgetExceededError(estimate, limit)
    for spine in gen_spines(f.n, f.max_right_height):
        yield from spine_assignments(spine)


def gen_compacted(f: GenFilter, budget: int | None = None) -> Iterator[RelaxedDag]:
    """The relaxed stream filtered by subtree uniqueness."""
    relaxed_filter = GenFilter(f.n, f.max_right_height, "relaxed")
    for dag in gen_relaxed(relaxed_filter, budget):
        if is_compacted(dag):
            yield dag


def generate(f: GenFilter, budget: int | None = None) -> Iterator[RelaxedDag]:
    if f.kind == "relaxed":
        return gen_relaxed(f, budget)
    return gen_compacted(f, budget)


def brute_count(n: int, kind: str, max_right_height: int | None = None,
                budget: int | None = None) -> int:
    """Count by explicit generation (the slow, assumption-free oracle)."""
    return sum(1 for _ in generate(GenFilter(n, max_right_height, kind), budget))
