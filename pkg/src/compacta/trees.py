"""Plane binary trees, spines, and pointer-enriched DAGs.

A relaxed binary tree of size n is stored as a spine (binary tree on the n
internal nodes) plus one pointer per non-spine child slot.  Slots and nodes
are addressed by post-order position: spine nodes get indices 1..n in the
order they complete during a post-order traversal, index 0 is the unique
leaf.  The first slot visited by the traversal is always the leaf slot; it
is not part of the pointer map.  A pointer at a slot may target 0 or any
spine node that completed strictly before the slot is visited, which is
exactly the acyclicity discipline a post-order hash-consing pass produces.

Text forms:
  tree      "."  |  "(tree tree)"  |  atom  |  "(atom tree tree)"
  dag       "@0" for size 0, otherwise the spine with every non-spine slot
            written "@i" (the leaf slot prints as "@0" too): "(@0 @0)" is
            the size-1 dag.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class ParseError(ValueError):
    """Malformed text input; carries the byte offset of the failure."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


# ---------------------------------------------------------------------------
# Binary trees
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BinaryTree:
    """Full binary tree: a node has either no children (leaf) or two.

    ``label`` is optional and only used by the compaction use case; the
    enumeration machinery works on unlabeled trees.
    """

    left: "BinaryTree | None" = None
    right: "BinaryTree | None" = None
    label: str | None = None

    def __post_init__(self):
        if (self.left is None) != (self.right is None):
            raise ValueError("a node has either 0 or 2 children")

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    @property
    def size(self) -> int:
        """Number of internal nodes."""
        total = 0
        stack = [self]
        while stack:
            t = stack.pop()
            if not t.is_leaf:
                total += 1
                stack.append(t.left)
                stack.append(t.right)
        return total


LEAF = BinaryTree()


def _tokenize(text: str):
    """Yield (token, offset) with parens, '.', '@k' and atoms as tokens."""
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in "()":
            yield c, i
            i += 1
            continue
        j = i
        while j < n and not text[j].isspace() and text[j] not in "()":
            j += 1
        yield text[i:j], i
        i = j


def parse_tree(text: str) -> BinaryTree:
    """Parse the s-expression tree grammar (labeled or unlabeled)."""
    tokens = list(_tokenize(text))
    pos = 0

    def fail(msg, at=None):
        offset = tokens[at][1] if at is not None and at < len(tokens) else len(text)
        raise ParseError(msg, offset)

    def parse() -> BinaryTree:
        nonlocal pos
        if pos >= len(tokens):
            fail("unexpected end of input")
        tok, off = tokens[pos]
        if tok == ".":
            pos += 1
            return LEAF
        if tok == "(":
            pos += 1
            if pos >= len(tokens):
                fail("unexpected end of input")
            head, _ = tokens[pos]
            label = None
            if head not in ("(", ")", ".") and not head.startswith("@"):
                label = head
                pos += 1
            left = parse()
            right = parse()
            if pos >= len(tokens) or tokens[pos][0] != ")":
                fail("expected ')'", pos)
            pos += 1
            return BinaryTree(left, right, label)
        if tok == ")":
            fail("unexpected ')'", pos)
        # bare atom: labeled leaf
        pos += 1
        return BinaryTree(label=tok)

    result = parse()
    if pos != len(tokens):
        fail("trailing input", pos)
    return result


def print_tree(t: BinaryTree) -> str:
    if t.is_leaf:
        return t.label if t.label is not None else "."
    inner = f"{print_tree(t.left)} {print_tree(t.right)}"
    if t.label is not None:
        return f"({t.label} {inner})"
    return f"({inner})"


# ---------------------------------------------------------------------------
# Spines and relaxed DAGs
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SpineTree:
    """Spine node with optional left/right children (identity semantics)."""

    left: "SpineTree | None" = None
    right: "SpineTree | None" = None


def spine_size(spine: SpineTree | None) -> int:
    total = 0
    stack = [spine] if spine is not None else []
    while stack:
        node = stack.pop()
        total += 1
        if node.left is not None:
            stack.append(node.left)
        if node.right is not None:
            stack.append(node.right)
    return total


def right_height(spine: SpineTree | None) -> int:
    """Maximum number of right spine edges on any root-to-node path."""
    if spine is None:
        return 0
    best = 0
    stack = [(spine, 0)]
    while stack:
        node, level = stack.pop()
        if level > best:
            best = level
        if node.left is not None:
            stack.append((node.left, level))
        if node.right is not None:
            stack.append((node.right, level + 1))
    return best


def postorder_nodes(spine: SpineTree | None) -> list[SpineTree]:
    """Spine nodes in completion order; node at list position i has index i+1."""
    out: list[SpineTree] = []
    if spine is None:
        return out
    stack: list[tuple[SpineTree, bool]] = [(spine, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            out.append(node)
            continue
        stack.append((node, True))
        if node.right is not None:
            stack.append((node.right, False))
        if node.left is not None:
            stack.append((node.left, False))
    return out


@dataclass(frozen=True)
class Slot:
    """A non-spine child position, in post-order visit order.

    ``owner`` is the post-order index of the node owning the slot, ``side``
    is "left"/"right", and ``pool`` is the number of spine nodes already
    completed when the slot is visited, so the legal targets are 0..pool.
    """

    owner: int
    side: str
    pool: int


def slot_sequence(spine: SpineTree | None) -> list[Slot]:
    """All n+1 non-spine slots in traversal order (the first is the leaf's)."""
    if spine is None:
        return []
    index: dict[int, int] = {}
    for i, node in enumerate(postorder_nodes(spine)):
        index[id(node)] = i + 1
    slots: list[Slot] = []
    completed = 0

    # iterative post-order that also visits the empty child positions
    stack: list[tuple[SpineTree, int]] = [(spine, 0)]
    while stack:
        node, state = stack.pop()
        if state == 0:
            stack.append((node, 1))
            if node.left is not None:
                stack.append((node.left, 0))
            else:
                slots.append(Slot(index[id(node)], "left", completed))
        elif state == 1:
            stack.append((node, 2))
            if node.right is not None:
                stack.append((node.right, 0))
            else:
                slots.append(Slot(index[id(node)], "right", completed))
        else:
            completed += 1
    return slots


@dataclass(frozen=True, eq=False)
class RelaxedDag:
    """Spine plus pointer assignment; pointer keys are (owner index, side).

    The leaf slot (first slot in traversal order) is not in the map, so a
    size-n dag carries exactly n pointers.  Instances are immutable; the
    pointer dict must not be mutated after construction.
    """

    spine: SpineTree | None
    pointers: dict[tuple[int, str], int] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return spine_size(self.spine)


def post_order(dag: RelaxedDag) -> list[int]:
    """Indices of the spine nodes in completion order, i.e. 1..n."""
    return [i + 1 for i in range(len(postorder_nodes(dag.spine)))]


def validate(dag: RelaxedDag) -> str | None:
    """None when every invariant holds, else the first violation."""
    slots = slot_sequence(dag.spine)
    n = dag.n
    if n == 0:
        if dag.pointers:
            return "size-0 dag must have no pointers"
        return None
    expected_keys = {(s.owner, s.side) for s in slots[1:]}
    actual_keys = set(dag.pointers)
    if actual_keys != expected_keys:
        missing = expected_keys - actual_keys
        extra = actual_keys - expected_keys
        if missing:
            return f"missing pointer for slot {sorted(missing)[0]}"
        return f"unexpected pointer key {sorted(extra)[0]}"
    leaf = slots[0]
    if (leaf.owner, leaf.side) in dag.pointers:
        return f"leaf slot {(leaf.owner, leaf.side)} must not carry a pointer"
    for s in slots[1:]:
        target = dag.pointers[(s.owner, s.side)]
        if not isinstance(target, int) or target < 0 or target > s.pool:
            return (
                f"pointer at slot {(s.owner, s.side)} targets {target}, "
                f"legal range is 0..{s.pool}"
            )
    return None


def dag_adjacency(dag: RelaxedDag) -> list[tuple[int, int]]:
    """For each spine index 1..n, the (left, right) successor indices.

    A spine child contributes its own index; a pointer contributes its
    target; the leaf slot contributes 0.  Entry i-1 describes node i.
    """
    nodes = postorder_nodes(dag.spine)
    index = {id(node): i + 1 for i, node in enumerate(nodes)}
    out = []
    for i, node in enumerate(nodes):
        refs = []
        for side, child in (("left", node.left), ("right", node.right)):
            if child is not None:
                refs.append(index[id(child)])
            else:
                refs.append(dag.pointers.get((i + 1, side), 0))
        out.append((refs[0], refs[1]))
    return out


def dag_to_text(dag: RelaxedDag) -> str:
    if dag.spine is None:
        return "@0"
    index = {id(node): i + 1 for i, node in enumerate(postorder_nodes(dag.spine))}

    def render(node: SpineTree) -> str:
        parts = []
        for side, child in (("left", node.left), ("right", node.right)):
            if child is not None:
                parts.append(render(child))
            else:
                target = dag.pointers.get((index[id(node)], side), 0)
                parts.append(f"@{target}")
        return f"({parts[0]} {parts[1]})"

    return render(dag.spine)


def dag_from_text(text: str) -> RelaxedDag:
    """Parse the "@i" dag form and validate the result."""
    tokens = list(_tokenize(text))
    pos = 0

    def fail(msg, at=None):
        offset = tokens[at][1] if at is not None and at < len(tokens) else len(text)
        raise ParseError(msg, offset)

    # first pass: build the spine skeleton, remembering raw targets per slot
    raw_slots: list[tuple[SpineTree, str, int]] = []

    def parse() -> SpineTree | None:
        nonlocal pos
        if pos >= len(tokens):
            fail("unexpected end of input")
        tok, off = tokens[pos]
        if tok.startswith("@"):
            pos += 1
            return None  # slot; target resolved by the caller
        if tok != "(":
            fail("expected '(' or '@i'", pos)
        pos += 1
        children = []
        targets = []
        for _ in range(2):
            if pos < len(tokens) and tokens[pos][0].startswith("@"):
                tok2, off2 = tokens[pos]
                try:
                    targets.append(int(tok2[1:]))
                except ValueError:
                    raise ParseError(f"bad pointer token {tok2!r}", off2) from None
                children.append(None)
                pos += 1
            else:
                children.append(parse())
                targets.append(None)
        if pos >= len(tokens) or tokens[pos][0] != ")":
            fail("expected ')'", pos)
        pos += 1
        node = SpineTree(children[0], children[1])
        if targets[0] is not None:
            raw_slots.append((node, "left", targets[0]))
        if targets[1] is not None:
            raw_slots.append((node, "right", targets[1]))
        return node

    if tokens and tokens[0][0] == "@0" and len(tokens) == 1:
        return RelaxedDag(None, {})
    spine = parse()
    if spine is None:
        fail("a bare pointer token is only valid as '@0'", 0)
    if pos != len(tokens):
        fail("trailing input", pos)
    index = {id(node): i + 1 for i, node in enumerate(postorder_nodes(spine))}
    slots = slot_sequence(spine)
    by_key = {(s.owner, s.side): s for s in slots}
    pointers = {}
    leaf_key = (slots[0].owner, slots[0].side)
    for node, side, target in raw_slots:
        key = (index[id(node)], side)
        if key == leaf_key:
            if target != 0:
                raise ParseError(f"leaf slot must read @0, got @{target}", 0)
            continue
        pointers[key] = target
    dag = RelaxedDag(spine, pointers)
    problem = validate(dag)
    if problem is not None:
        raise ParseError(f"invalid dag: {problem}", 0)
    return dag
