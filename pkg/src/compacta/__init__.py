"""Exact enumeration and asymptotics of compacted and relaxed binary trees.

A compacted binary tree is the DAG a hash-consing pass (the compiler
"value number" technique) produces from a full binary tree: every distinct
subtree is stored once, repeats become pointers to the first occurrence.
Relaxed trees drop the uniqueness requirement.  This package enumerates
both families exactly, with and without a bound on the right height, and
computes the growth constants and critical exponents of the bounded
families, cross-checking everything against independent brute-force
oracles.
"""

from .asympt import (
    FitResult,
    SingularityData,
    exponent_regression,
    fit_constant,
    proportion_exponent,
    singularity_data,
    table1,
)
from .compaction import (
    UidTable,
    first_duplicate,
    is_cherry,
    is_compacted,
    uid_compact,
    unfold,
)
from .dfinite import (
    CoeffRecurrence,
    IntegralityError,
    SeededSequence,
    SeedUnavailableError,
    closed_form_oracle,
    iter_sequence,
    ode_to_recurrence,
    seed,
    sequence_values,
    stream,
)
from .exhaustive import (
    BudgetExceededError,
    GenFilter,
    brute_count,
    count_relaxed_spine_product,
    gen_compacted,
    gen_relaxed,
    gen_spines,
)
from .operators import (
    DiffOperator,
    build_operator,
    coeff_recurrences_check,
    compacted_operator,
    equal_up_to_scalar,
    leading_coefficient_closed_form,
    op_compose,
    reduce_order,
    relaxed_operator,
)
from .poly import IntPoly, chebyshev_t, chebyshev_u
from .recurrences import CountTable, build_table, compacted_count, relaxed_count
from .trees import (
    BinaryTree,
    ParseError,
    RelaxedDag,
    SpineTree,
    dag_from_text,
    dag_to_text,
    parse_tree,
    post_order,
    print_tree,
    right_height,
    validate,
)

__version__ = "0.1.0"
