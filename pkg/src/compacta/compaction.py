"""Hash-consing of binary trees and the uniqueness test on relaxed DAGs.

``uid_compact`` assigns a unique identifier to every distinct (fringe)
subtree of a full binary tree and returns both the identifier table and the
compacted DAG: every edge to an already-seen subtree becomes a pointer to
the subtree's first occurrence in post-order, so each distinct subtree is
stored exactly once.

Identifier numbering follows the classic value-numbering schedule: all
subtrees of height h receive their ids before any subtree of height h+1,
left to right within a height.  Id 0 is reserved for the empty tree, so an
unlabeled leaf contributes no table row while a labeled leaf x produces the
row ((x, 0, 0), uid).

The DAG construction itself is independent of the id numbering: spine nodes
sit at post-order first occurrences and pointer targets are post-order
indices, so the result is a valid relaxed DAG.  For unlabeled input the DAG
always passes ``is_compacted``; labeled leaves with distinct labels erase
to structurally equal nodes, so the label-erased DAG of a labeled tree need
not.
"""

from __future__ import annotations

from dataclasses import dataclass

from .trees import (
    LEAF,
    BinaryTree,
    RelaxedDag,
    SpineTree,
    dag_adjacency,
    postorder_nodes,
)

Triple = tuple[str | None, int, int]


@dataclass(frozen=True)
class UidTable:
    """Rows ((label, uid_left, uid_right), uid) in discovery order."""

    rows: tuple[tuple[Triple, int], ...]

    @property
    def counter(self) -> int:
        return len(self.rows)

    def lookup(self, triple: Triple) -> int | None:
        for row_triple, uid in self.rows:
            if row_triple == triple:
                return uid
        return None


def _is_nil(t: BinaryTree) -> bool:
    # an unlabeled leaf plays the role of the empty tree (id 0)
    return t.is_leaf and t.label is None


def uid_compact(tree: BinaryTree) -> tuple[RelaxedDag, UidTable]:
    """Compact a full binary tree; returns (dag, identifier table)."""
    # Phase 1: intern distinct subtrees bottom-up, recording height and the
    # post-order time of the first occurrence.  Keys are built from child
    # keys, so structural equality costs O(1) per node.
    info: dict[tuple, tuple[int, int, str | None, tuple, tuple]] = {}
    # key -> (height, first_seen, label, left_key, right_key)
    order = 0
    NIL = ("nil",)

    def intern(t: BinaryTree) -> tuple:
        nonlocal order
        if _is_nil(t):
            return NIL
        if t.is_leaf:
            lk = rk = NIL
        else:
            lk = intern(t.left)
            rk = intern(t.right)
        key = (t.label, lk, rk)
        if key not in info:
            hl = info[lk][0] if lk != NIL else -1
            hr = info[rk][0] if rk != NIL else -1
            order += 1
            info[key] = (max(hl, hr) + 1, order, t.label, lk, rk)
        return key

    intern(tree)

    uid: dict[tuple, int] = {NIL: 0}
    rows = []
    for key, (_h, _seen, label, lk, rk) in sorted(
        info.items(), key=lambda kv: (kv[1][0], kv[1][1])
    ):
        uid[key] = len(rows) + 1
        rows.append(((label, uid[lk], uid[rk]), uid[key]))
    table = UidTable(tuple(rows))

    # Phase 2: build the DAG of first occurrences in post-order.  first[key]
    # holds the post-order index a subtree got at its first completion; the
    # first nil visited becomes the unique leaf, later nils are pointers @0.
    # Keys are recomputed bottom-up during this walk, so the pass is linear
    # in the input size.  Inside a repeated subtree every descendant class
    # was registered by the earlier occurrence, so the recursion never
    # mutates state there.
    first: dict[tuple, int] = {}
    pointers: dict[tuple[int, str], int] = {}
    completed = 0
    leaf_taken = False

    def build(t: BinaryTree):
        """(key, spine subtree, target, slot-is-the-leaf) for one child slot."""
        nonlocal completed, leaf_taken
        if _is_nil(t):
            took_leaf = not leaf_taken
            leaf_taken = True
            return NIL, None, 0, took_leaf
        if t.is_leaf:
            children = (LEAF, LEAF)  # labeled leaf: two empty child slots
        else:
            children = (t.left, t.right)
        left = build(children[0])
        right = build(children[1])
        key = (t.label, left[0], right[0])
        if key in first:
            return key, None, first[key], False
        completed += 1
        index = completed
        first[key] = index
        node = SpineTree(left[1], right[1])
        for side, (_, sub, target, took_leaf) in (("left", left), ("right", right)):
            if sub is None and not took_leaf:
                pointers[(index, side)] = target
        return key, node, None, False

    root = build(tree)
    dag = RelaxedDag(root[1], pointers)
    return dag, table


def unfold(dag: RelaxedDag, at: int | None = None) -> BinaryTree:
    """Expand a DAG node back into the full binary tree it denotes.

    ``at`` is a post-order index (default: the root, which completes last).
    Subtrees are shared in memory, so the result can be exponentially larger
    than the DAG without exponential cost to build.
    """
    n = dag.n
    if at is None:
        at = n
    if not 0 <= at <= n:
        raise ValueError(f"index {at} out of range 0..{n}")
    adj = dag_adjacency(dag)
    trees: list[BinaryTree] = [LEAF]
    for i in range(1, at + 1):
        l, r = adj[i - 1]
        trees.append(BinaryTree(trees[l], trees[r]))
    return trees[at]


def first_duplicate(dag: RelaxedDag) -> int | None:
    """Post-order index of the first spine node whose subtree repeats, or None.

    Runs the identifier assignment over the DAG: the leaf is 0 and each node
    gets the id of its (left, right) child-id pair, fresh if unseen.  Up to
    the first repeat every node's id equals its own index, so the check
    reduces to distinctness of the reference pairs.
    """
    seen: set[tuple[int, int]] = set()
    for i, refs in enumerate(dag_adjacency(dag), start=1):
        if refs in seen:
            return i
        seen.add(refs)
    return None


def is_compacted(dag: RelaxedDag) -> bool:
    """True iff all subtrees hanging off spine nodes are pairwise distinct."""
    return first_duplicate(dag) is None


def is_cherry(dag: RelaxedDag, index: int) -> bool:
    """True if both children of the spine node at ``index`` are pointers
    (or the leaf), i.e. neither child is a spine node."""
    node = postorder_nodes(dag.spine)[index - 1]
    return node.left is None and node.right is None
