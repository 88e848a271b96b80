"""Bucket trees: the core combinatorial objects.

A bucket tree is a rooted ordered tree whose nodes are buckets holding
between 1 and b labels.  Labels increase inside every bucket and along
every root-to-leaf path, and every internal (non-leaf) bucket is full.
All structures here are immutable tuples, so trees can be shared freely
between workers; growth and rewriting always build new trees.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator


@dataclass(frozen=True)
class BucketNode:
    """One bucket: a strictly increasing label tuple plus ordered children."""

    labels: tuple[int, ...]
    children: tuple["BucketNode", ...] = ()

    def capacity(self) -> int:
        return len(self.labels)

    def degree(self) -> int:
        return len(self.children)


@dataclass(frozen=True)
class BucketTree:
    """A bucket tree together with its capacity bound b."""

    b: int
    root: BucketNode
    size: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "size", sum(len(n.labels) for n in iter_nodes(self.root)))


@dataclass(frozen=True)
class NodeCensus:
    """Counts of unsaturated buckets by capacity and saturated buckets by out-degree."""

    b: int
    n: int
    m: dict  # capacity k in 1..b-1 -> count of unsaturated buckets
    n_deg: dict  # out-degree k >= 0 -> count of saturated buckets

    def node_sum_identity(self) -> bool:
        # n = sum k*m_k + b * sum n_k
        return self.n == sum(k * c for k, c in self.m.items()) + self.b * sum(self.n_deg.values())

    def edge_sum_identity(self) -> bool:
        # 1 = sum m_k - sum (k-1)*n_k
        return 1 == sum(self.m.values()) - sum((k - 1) * c for k, c in self.n_deg.items())


def iter_nodes(node: BucketNode) -> Iterator[BucketNode]:
    """Preorder iteration over all buckets."""
    stack = [node]
    while stack:
        cur = stack.pop()
        yield cur
        stack.extend(reversed(cur.children))


def iter_nodes_with_path(node: BucketNode, path=()) -> Iterator[tuple[tuple, BucketNode]]:
    yield path, node
    for i, c in enumerate(node.children):
        yield from iter_nodes_with_path(c, path + (i,))


def validate(tree: BucketTree) -> list[str]:
    """Return a list of invariant violations; empty means the tree is valid.

    Violations name the offending node by its child-index path from the root.
    """
    violations = []
    b = tree.b
    if b < 1:
        violations.append("capacity bound b must be >= 1")
        return violations
    all_labels = []
    for path, node in iter_nodes_with_path(tree.root):
        where = "/".join(map(str, path)) or "root"
        k = len(node.labels)
        if not 1 <= k <= b:
            violations.append(f"{where}: bucket capacity {k} outside 1..{b}")
        if any(x < 1 for x in node.labels):
            violations.append(f"{where}: labels must be positive")
        if any(x >= y for x, y in zip(node.labels, node.labels[1:])):
            violations.append(f"{where}: bucket labels not strictly increasing")
        if node.children and k != b:
            violations.append(f"{where}: internal node unsaturated (capacity {k} < {b})")
        for i, child in enumerate(node.children):
            if child.labels and node.labels and min(child.labels) <= max(node.labels):
                violations.append(f"{where}/{i}: child label {min(child.labels)} "
                                  f"not above parent maximum {max(node.labels)}")
        all_labels.extend(node.labels)
    n = len(all_labels)
    if sorted(all_labels) != list(range(1, n + 1)):
        violations.append(f"label multiset is not {{1..{n}}}")
    return violations


def check_valid(tree: BucketTree) -> None:
    violations = validate(tree)
    if violations:
        raise ValueError("invalid bucket tree: " + "; ".join(violations))


def min_label(node: BucketNode) -> int:
    # labels increase along paths, so the subtree minimum sits in the root bucket
    return node.labels[0]


def _canon(node: BucketNode) -> BucketNode:
    kids = tuple(sorted((_canon(c) for c in node.children), key=min_label))
    return BucketNode(node.labels, kids)


def canonicalize(tree: BucketTree) -> BucketTree:
    """Canonical ordered representative: children sorted by smallest contained label."""
    check_valid(tree)
    return BucketTree(tree.b, _canon(tree.root))


def census(tree: BucketTree) -> NodeCensus:
    check_valid(tree)
    m: dict = {}
    n_deg: dict = {}
    for node in iter_nodes(tree.root):
        k = len(node.labels)
        if k < tree.b:
            m[k] = m.get(k, 0) + 1
        else:
            d = len(node.children)
            n_deg[d] = n_deg.get(d, 0) + 1
    return NodeCensus(tree.b, tree.size, m, n_deg)


# ---------------------------------------------------------------------------
# text codec: {1,2}({3},{4,5})


def encode(tree: BucketTree) -> str:
    return _encode_node(tree.root)


def _encode_node(node: BucketNode) -> str:
    s = "{" + ",".join(map(str, node.labels)) + "}"
    if node.children:
        s += "(" + ",".join(_encode_node(c) for c in node.children) + ")"
    return s


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


def decode(text: str, b: int) -> BucketTree:
    """Parse the canonical text form and validate the result."""
    node, pos = _parse_node(text, 0)
    if pos != len(text):
        raise ParseError("trailing input", pos)
    tree = BucketTree(b, node)
    check_valid(tree)
    return tree


def _parse_int(text: str, pos: int) -> tuple[int, int]:
    start = pos
    while pos < len(text) and text[pos].isdigit():
        pos += 1
    if pos == start:
        raise ParseError("expected integer", pos)
    return int(text[start:pos]), pos


def _parse_node(text: str, pos: int) -> tuple[BucketNode, int]:
    if pos >= len(text) or text[pos] != "{":
        raise ParseError("expected '{'", pos)
    pos += 1
    labels = []
    while True:
        value, pos = _parse_int(text, pos)
        labels.append(value)
        if pos < len(text) and text[pos] == ",":
            pos += 1
            continue
        break
    if pos >= len(text) or text[pos] != "}":
        raise ParseError("expected '}'", pos)
    pos += 1
    children = []
    if pos < len(text) and text[pos] == "(":
        pos += 1
        while True:
            child, pos = _parse_node(text, pos)
            children.append(child)
            if pos < len(text) and text[pos] == ",":
                pos += 1
                continue
            break
        if pos >= len(text) or text[pos] != ")":
            raise ParseError("expected ')'", pos)
        pos += 1
    return BucketNode(tuple(labels), tuple(children)), pos


# ---------------------------------------------------------------------------
# structured-document codec (one object per node), for machine interchange


def to_doc(tree: BucketTree) -> dict:
    return {"b": tree.b, "root": _node_doc(tree.root)}


def _node_doc(node: BucketNode) -> dict:
    return {"labels": list(node.labels), "children": [_node_doc(c) for c in node.children]}


def from_doc(doc: dict) -> BucketTree:
    tree = BucketTree(int(doc["b"]), _node_from_doc(doc["root"]))
    check_valid(tree)
    return tree


def _node_from_doc(doc: dict) -> BucketNode:
    return BucketNode(tuple(int(x) for x in doc["labels"]),
                      tuple(_node_from_doc(c) for c in doc.get("children", [])))


# ---------------------------------------------------------------------------
# bundled trees: children partitioned into a fixed number of ordered bundles


@dataclass(frozen=True)
class BundledNode:
    """A bucket whose children are split into d ordered (possibly empty) bundles."""

    labels: tuple[int, ...]
    bundles: tuple[tuple["BundledNode", ...], ...] = ()

    @property
    def children(self) -> tuple["BundledNode", ...]:
        return tuple(c for bundle in self.bundles for c in bundle)


@dataclass(frozen=True)
class BundledBucketTree:
    b: int
    d: int  # bundles per saturated node
    root: BundledNode


def strip_bundles(node: BundledNode) -> BucketNode:
    """Forget bundle boundaries, keeping the concatenated child order."""
    return BucketNode(node.labels, tuple(strip_bundles(c) for c in node.children))
