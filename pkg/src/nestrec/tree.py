"""Lazily enumerated labelled k-ary trees and their cell counting functions.

The tree has an infinite spine of supernodes on the extreme left.  The first
supernode has k leaf children; every later supernode has the previous
supernode plus k-1 regular subtrees for its k children.  Labels are poured
into the nodes in insertion order: each supernode takes s labels, each
regular node x labels, and each leaf is split into j cells taking c labels
apiece except the last cell, which takes l.  The cell counting function
C_T(n) is the number of cells whose first label is among 1..n.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import islice
from typing import Iterator, Optional

SUPERNODE = "supernode"
REGULAR = "regular"
LEAF = "leaf"


@dataclass(frozen=True)
class TreeSpec:
    """Shape and label allocation of one labelled k-ary tree.

    Field order matches the running example TreeSpec(2, 1, 3, 1, 2, 2):
    arity 2, one label per supernode, leaves of three cells holding one
    label each except two in the last, and two labels per regular node.
    """

    arity: int
    supernode_labels: int
    leaf_cells: int
    per_cell: int
    last_cell: int
    regular_labels: int

    def __post_init__(self):
        if self.arity < 2:
            raise ValueError("arity must be at least 2")
        if self.leaf_cells < 1:
            raise ValueError("leaves need at least one cell")
        if self.per_cell < 1 or self.last_cell < 1:
            raise ValueError("every cell must hold at least one label")
        if self.supernode_labels < 0 or self.regular_labels < 0:
            raise ValueError("internal label counts cannot be negative")

    def leaf_labels(self) -> int:
        """Labels held by one full leaf."""
        return self.per_cell * (self.leaf_cells - 1) + self.last_cell

    def cell_sizes(self) -> tuple[int, ...]:
        return (self.per_cell,) * (self.leaf_cells - 1) + (self.last_cell,)


@dataclass(frozen=True)
class NodeDescriptor:
    ordinal: int
    kind: str
    index: int  # supernode number, leaf number, or regular-node level
    parent_ordinal: Optional[int]


def node_stream(k: int) -> Iterator[tuple[str, int]]:
    """Yield (kind, index) for every node in insertion order.

    The stream opens with the first supernode's family, leaf 1 first, and
    then emits supernode i followed by its k-1 complete k-ary subtrees of
    height i-1, each in node-before-children order.
    """
    if k < 2:
        raise ValueError("arity must be at least 2")
    yield (LEAF, 1)
    yield (SUPERNODE, 1)
    leaf = 1
    for _ in range(k - 1):
        leaf += 1
        yield (LEAF, leaf)
    i = 2
    while True:
        yield (SUPERNODE, i)
        for _ in range(k - 1):
            stack = [i - 1]
            while stack:
                level = stack.pop()
                if level == 0:
                    leaf += 1
                    yield (LEAF, leaf)
                else:
                    yield (REGULAR, level)
                    stack.extend((level - 1,) * k)
        i += 1


def _descriptors(k: int) -> Iterator[NodeDescriptor]:
    # Independent of node_stream on purpose; the two walks are tested
    # against each other.
    ordinal = 0

    def make(kind, index, parent):
        nonlocal ordinal
        ordinal += 1
        return NodeDescriptor(ordinal, kind, index, parent)

    yield make(LEAF, 1, 2)  # leaf 1 precedes its parent, the first supernode
    first_super = make(SUPERNODE, 1, None)
    yield first_super
    leaf = 1
    for _ in range(k - 1):
        leaf += 1
        yield make(LEAF, leaf, first_super.ordinal)
    i = 2
    while True:
        super_i = make(SUPERNODE, i, None)
        yield super_i
        for _ in range(k - 1):
            stack = [(i - 1, super_i.ordinal)]
            while stack:
                level, parent = stack.pop()
                if level == 0:
                    leaf += 1
                    yield make(LEAF, leaf, parent)
                else:
                    node = make(REGULAR, level, parent)
                    yield node
                    stack.extend(((level - 1, node.ordinal),) * k)
        i += 1


def enumerate_nodes(k: int, count: int) -> list[NodeDescriptor]:
    """First `count` nodes of the arity-k skeleton, in insertion order."""
    if count < 0:
        raise ValueError("count cannot be negative")
    return list(islice(_descriptors(k), count))


def labels_in(spec: TreeSpec, node: NodeDescriptor) -> int:
    """Labels a full copy of `node` holds under `spec`."""
    if node.kind == SUPERNODE:
        return spec.supernode_labels
    if node.kind == REGULAR:
        return spec.regular_labels
    return spec.leaf_labels()


def cell_positions(spec: TreeSpec, n_max: int) -> Iterator[tuple[int, int, int]]:
    """Yield (first_label, leaf_index, cell_index) for cells starting by n_max.

    This is the hot path behind every counting routine, so the skeleton walk
    is inlined rather than layered over node_stream.
    """
    k = spec.arity
    s = spec.supernode_labels
    x = spec.regular_labels
    sizes = spec.cell_sizes()
    pos = 0
    leaf = 0

    def emit_leaf():
        nonlocal pos, leaf
        leaf += 1
        for ci, size in enumerate(sizes, 1):
            if pos >= n_max:
                return
            yield (pos + 1, leaf, ci)
            pos += size

    # leaf 1, supernode 1, leaves 2..k
    yield from emit_leaf()
    pos += s
    for _ in range(k - 1):
        if pos >= n_max:
            return
        yield from emit_leaf()
    i = 2
    while True:
        if pos >= n_max:
            return
        pos += s
        for _ in range(k - 1):
            stack = [i - 1]
            while stack:
                if pos >= n_max:
                    return
                level = stack.pop()
                if level == 0:
                    yield from emit_leaf()
                else:
                    pos += x
                    stack.extend((level - 1,) * k)
        i += 1


def cell_count(spec: TreeSpec, n: int) -> int:
    """Number of nonempty cells among the first n labels."""
    if n < 0:
        raise ValueError("n cannot be negative")
    return sum(1 for _ in cell_positions(spec, n))


def cell_count_sequence(spec: TreeSpec, n_max: int) -> list[int]:
    """C_T(1), ..., C_T(n_max) in one pass."""
    seq: list[int] = []
    count = 0
    for first, _, _ in cell_positions(spec, n_max):
        if first - 1 > len(seq):
            seq.extend([count] * (first - 1 - len(seq)))
        count += 1
        seq.append(count)
    seq.extend([count] * (n_max - len(seq)))
    return seq


def initial_conditions(spec: TreeSpec, count: int) -> list[int]:
    """The first `count` cell counts, the ICs that follow the tree."""
    return cell_count_sequence(spec, count)


def cell_count_split(spec: TreeSpec, n: int) -> tuple[int, ...]:
    """Nonempty cells among labels 1..n, grouped by leaf child position."""
    counts = [0] * spec.arity
    for _, leaf, _ in cell_positions(spec, n):
        counts[(leaf - 1) % spec.arity] += 1
    return tuple(counts)


def regular_nodes_between_leaves(k: int, h: int) -> int:
    """Regular nodes strictly between leaf h and leaf h+1.

    Equals the k-adic valuation of h; a supernode also intervenes exactly
    when h is a power of k (1 included).
    """
    if k < 2 or h < 1:
        raise ValueError("need k >= 2 and h >= 1")
    count = 0
    while h % k == 0:
        h //= k
        count += 1
    return count


def to_document(spec: TreeSpec) -> dict:
    return {
        "k": spec.arity,
        "s": spec.supernode_labels,
        "j": spec.leaf_cells,
        "per_cell": spec.per_cell,
        "last_cell": spec.last_cell,
        "regular": spec.regular_labels,
    }


def from_document(doc: dict) -> TreeSpec:
    try:
        return TreeSpec(
            arity=int(doc["k"]),
            supernode_labels=int(doc["s"]),
            leaf_cells=int(doc["j"]),
            per_cell=int(doc["per_cell"]),
            last_cell=int(doc["last_cell"]),
            regular_labels=int(doc["regular"]),
        )
    except KeyError as missing:
        raise ValueError(f"tree document is missing field {missing}") from None
