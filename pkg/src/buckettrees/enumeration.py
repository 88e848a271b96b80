"""Exhaustive exact-rational oracle over ordered bucket increasing trees.

Everything here is brute force on purpose: it enumerates every valid
ordered tree of a given size, weighs it, and derives probabilities and
statistic distributions by direct summation, so the fast closed-form code
elsewhere can be checked against it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import families
from .families import FamilySpec, phi, psi, total_weight_closed
from .pmf import Pmf
from .trees import BucketNode, BucketTree, canonicalize, iter_nodes

DEFAULT_MAX_N = 10

ORDERED_MODEL = "ordered-model"
UNORDERED_MODEL = "unordered-model"
UNORDERED_GROWTH = "unordered-growth"


class EnumerationBoundError(ValueError):
    pass


def _check_bound(n: int, max_n) -> None:
    bound = DEFAULT_MAX_N if max_n is None else max_n
    if n > bound:
        raise EnumerationBoundError(
            f"n={n} exceeds the enumeration bound {bound}; "
            "pass max_n explicitly to override (memory grows factorially)")


def _ordered_partitions(items: tuple):
    """All ordered sequences of disjoint nonempty blocks covering `items`."""
    if not items:
        yield ()
        return
    s = len(items)
    for mask in range(1, 1 << s):
        block = tuple(items[i] for i in range(s) if mask >> i & 1)
        rest = tuple(items[i] for i in range(s) if not mask >> i & 1)
        for tail in _ordered_partitions(rest):
            yield (block,) + tail


def _relabel(node: BucketNode, labels: tuple) -> BucketNode:
    return BucketNode(tuple(labels[i - 1] for i in node.labels),
                      tuple(_relabel(c, labels) for c in node.children))


@lru_cache(maxsize=None)
def _structures(b: int, n: int) -> tuple:
    """All ordered bucket increasing trees on labels 1..n with bound b."""
    if n < 1:
        return ()
    if n <= b:
        # a single bucket; saturated iff n == b
        return (BucketNode(tuple(range(1, n + 1))),)
    root_labels = tuple(range(1, b + 1))
    rest = tuple(range(b + 1, n + 1))
    out = []
    for blocks in _ordered_partitions(rest):
        # cartesian product of subtree choices, one per block
        choices = [[_relabel(t, block) for t in _structures(b, len(block))]
                   for block in blocks]
        stack = [(0, ())]
        while stack:
            i, kids = stack.pop()
            if i == len(choices):
                out.append(BucketNode(root_labels, kids))
            else:
                for sub in choices[i]:
                    stack.append((i + 1, kids + (sub,)))
    return tuple(out)


def all_trees(b: int, n: int, max_n=None) -> list[BucketTree]:
    _check_bound(n, max_n)
    return [BucketTree(b, root) for root in _structures(b, n)]


def _fast_weight(spec: FamilySpec, root: BucketNode, phi_cache: dict, psi_cache: dict) -> Fraction:
    w = Fraction(1)
    b = spec.b
    for node in iter_nodes(root):
        k = len(node.labels)
        if k == b:
            d = len(node.children)
            if d not in phi_cache:
                phi_cache[d] = phi(spec, d)
            w *= phi_cache[d]
        else:
            if k not in psi_cache:
                psi_cache[k] = psi(spec, k)
            w *= psi_cache[k]
        if w == 0:
            return w
    return w


@dataclass
class WeightedTreeSet:
    spec: FamilySpec
    n: int
    items: list  # (BucketTree, Fraction weight), nonzero weights only

    def total_weight(self) -> Fraction:
        return sum((w for _, w in self.items), Fraction(0))


def enumerate_trees(spec: FamilySpec, n: int, max_n=None) -> WeightedTreeSet:
    """All valid ordered trees of size n with their exact weights (zeros dropped)."""
    if spec.kind == families.LINEAR:
        raise ValueError("the linear family has no combinatorial weights to enumerate")
    _check_bound(n, max_n)
    phi_cache: dict = {}
    psi_cache: dict = {}
    items = []
    for root in _structures(spec.b, n):
        w = _fast_weight(spec, root, phi_cache, psi_cache)
        if w != 0:
            items.append((BucketTree(spec.b, root), w))
    return WeightedTreeSet(spec, n, items)


# ---------------------------------------------------------------------------
# exact probabilities under the three measures


def _is_canonical(node: BucketNode) -> bool:
    mins = [c.labels[0] for c in node.children]
    return mins == sorted(mins) and all(_is_canonical(c) for c in node.children)


def _growth_weight(spec: FamilySpec, cap: int, deg: int) -> Fraction:
    if spec.kind == families.LINEAR:
        return families.linear_node_weight(spec, cap, deg)
    gc = families.growth_coeffs(spec)
    return Fraction(gc.node_weight(cap, deg))


def _growth_total(spec: FamilySpec, n: int, node_count: int) -> Fraction:
    if spec.kind == families.LINEAR:
        return (spec.lin_a * (n - node_count) + spec.lin_beta * (node_count - 1)
                + spec.lin_m * node_count)
    gc = families.growth_coeffs(spec)
    return Fraction(gc.total(n))


def growth_history_probability(spec: FamilySpec, tree: BucketTree) -> Fraction:
    """Probability that the growth process builds exactly this unordered tree.

    The product over j = 2..n of the attraction probability of the node that
    received label j, evaluated on the restriction to labels < j.
    """
    # bucket holding each label, plus parent links
    holder: dict = {}
    parent: dict = {}
    for node in iter_nodes(tree.root):
        for lab in node.labels:
            holder[lab] = node
        for c in node.children:
            parent[c] = node
    n = tree.size
    prob = Fraction(1)
    for j in range(2, n + 1):
        v = holder[j]
        rank = v.labels.index(j)  # labels of v below j
        if rank > 0:
            cap, deg = rank, 0  # v was unsaturated just before j arrived
        else:
            p = parent[v]
            cap = tree.b
            deg = sum(1 for c in p.children if c.labels[0] < j)
        # node count of the restriction to labels < j
        node_count = len({id(holder[x]) for x in range(1, j)})
        w = _growth_weight(spec, cap, deg)
        prob *= w / _growth_total(spec, j - 1, node_count)
    return prob


def exact_probability(spec: FamilySpec, tree: BucketTree, measure: str,
                      max_n=None) -> Fraction:
    _check_bound(tree.size, max_n)
    if measure == ORDERED_MODEL:
        w = families.tree_weight(spec, tree)
        return w / total_weight_closed(spec, tree.size)
    if measure in (UNORDERED_MODEL, UNORDERED_GROWTH):
        if not _is_canonical(tree.root):
            raise ValueError("unordered measures require the canonical ordered representative")
        if measure == UNORDERED_GROWTH:
            return growth_history_probability(spec, tree)
        w = families.tree_weight(spec, tree)
        orderings = Fraction(1)
        for node in iter_nodes(tree.root):
            f = 1
            for i in range(2, len(node.children) + 1):
                f *= i
            orderings *= f
        return w * orderings / total_weight_closed(spec, tree.size)
    raise ValueError(f"unknown measure {measure!r}")


# ---------------------------------------------------------------------------
# statistics on static trees


def _bucket_of(root: BucketNode, label: int):
    """Return (node, subtree_size) for the bucket holding `label`."""
    for node in iter_nodes(root):
        if label in node.labels:
            sub = sum(len(m.labels) for m in iter_nodes(node))
            return node, sub
    raise ValueError(f"label {label} not in tree")


def stat_initial_bucket_size(tree: BucketTree) -> int:
    node, _ = _bucket_of(tree.root, tree.size)
    return len(node.labels)


def stat_descendants(tree: BucketTree, j: int) -> int:
    node, sub = _bucket_of(tree.root, j)
    return sub - node.labels.index(j)


def stat_out_degree(tree: BucketTree, j: int) -> int:
    node, _ = _bucket_of(tree.root, j)
    return len(node.children)


def stat_capacity_count(tree: BucketTree, k: int) -> int:
    return sum(1 for node in iter_nodes(tree.root) if len(node.labels) == k)


def stat_saturation_time(tree: BucketTree, j: int) -> int:
    node, _ = _bucket_of(tree.root, j)
    if len(node.labels) == tree.b:
        return node.labels[-1]  # buckets fill in label order
    return tree.size


def _statistic_fn(statistic: str, b: int):
    name, _, arg = statistic.partition(":")
    name = name.strip()
    if name == "K":
        return lambda t: stat_initial_bucket_size(t)
    if name == "Y":
        j = int(arg)
        return lambda t: stat_descendants(t, j)
    if name == "X":
        j = int(arg)
        return lambda t: stat_out_degree(t, j)
    if name == "N":
        k = int(arg)
        if not 1 <= k <= b:
            raise ValueError(f"capacity {k} outside 1..{b}")
        return lambda t: stat_capacity_count(t, k)
    if name == "tau":
        j = int(arg)
        return lambda t: stat_saturation_time(t, j)
    raise ValueError(f"unknown statistic {statistic!r}")


def exact_statistic_pmf(spec: FamilySpec, n: int, statistic: str, max_n=None) -> Pmf:
    """Exact distribution of a tree statistic by brute-force summation.

    The statistics are invariant under reordering of children, so summing
    ordered-model probabilities gives the unordered-model distribution too.
    """
    name, _, arg = statistic.partition(":")
    if arg and not 1 <= int(arg) <= n:
        raise ValueError(f"statistic argument {arg} outside 1..{n}")
    fn = _statistic_fn(statistic, spec.b)
    ts = enumerate_trees(spec, n, max_n=max_n)
    total = ts.total_weight()
    mass: dict = {}
    for tree, w in ts.items:
        v = fn(tree)
        mass[v] = mass.get(v, Fraction(0)) + w
    return Pmf({v: w / total for v, w in mass.items()}).check()


def expected_capacity_counts(spec: FamilySpec, n: int, max_n=None) -> dict:
    """Exact E[N_{n,k}] for k = 1..b under the random tree model."""
    ts = enumerate_trees(spec, n, max_n=max_n)
    total = ts.total_weight()
    out = {k: Fraction(0) for k in range(1, spec.b + 1)}
    for tree, w in ts.items:
        for node in iter_nodes(tree.root):
            out[len(node.labels)] += w
    return {k: v / total for k, v in out.items()}


def distinct_unordered(ts: WeightedTreeSet) -> list:
    """Canonical representatives present in an ordered tree set (deduplicated)."""
    seen = {}
    for tree, _ in ts.items:
        c = canonicalize(tree)
        seen[c.root] = c
    return list(seen.values())
