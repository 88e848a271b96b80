"""Label-by-label growth of random bucket trees.

The sampler keeps the attraction weights in denominator-cleared integer
form, so every step draws one uniform integer below the (deterministic)
total weight and resolves it to a node in O(1) amortized time.  The
resulting tree has exactly the distribution induced by the family's
growth rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import families
from .families import FamilySpec
from .trees import BucketNode, BucketTree, NodeCensus, iter_nodes_with_path


@dataclass
class RngStream:
    """A seeded random stream that can spawn independent child streams."""

    seed: int
    spawn_key: tuple = ()

    def __post_init__(self):
        self.generator = np.random.Generator(
            np.random.PCG64(np.random.SeedSequence(self.seed, spawn_key=self.spawn_key)))

    def child(self, index: int) -> "RngStream":
        return RngStream(self.seed, self.spawn_key + (index,))

    def integers(self, high) -> int:
        return int(self.generator.integers(high))


def _as_rng(rng) -> RngStream:
    if isinstance(rng, RngStream):
        return rng
    return RngStream(int(rng))


# ---------------------------------------------------------------------------
# exact attraction probabilities on a static tree


def attraction_probs(spec: FamilySpec, tree: BucketTree) -> list:
    """Exact attraction probability of every bucket: [(path, node, Fraction)].

    The probabilities always sum to one; a ValueError is raised otherwise
    (which can only happen for a linear rule with a negative weight).
    """
    entries = []
    if spec.kind == families.LINEAR:
        weights = [(path, node,
                    families.linear_node_weight(spec, len(node.labels), len(node.children)))
                   for path, node in iter_nodes_with_path(tree.root)]
        total = sum(w for _, _, w in weights)
        if total <= 0:
            raise ValueError("linear growth rule has nonpositive total weight")
        entries = [(path, node, w / total) for path, node, w in weights]
    else:
        gc = families.growth_coeffs(spec)
        total = gc.total(tree.size)
        for path, node in iter_nodes_with_path(tree.root):
            w = gc.node_weight(len(node.labels), len(node.children))
            entries.append((path, node, Fraction(w, total)))
    if sum(p for _, _, p in entries) != 1:
        raise ValueError("attraction probabilities do not sum to 1")
    return entries


# ---------------------------------------------------------------------------
# the growth sampler


class _Grower:
    """Mutable growth state; node attributes live in parallel lists."""

    def __init__(self, spec: FamilySpec):
        self.spec = spec
        self.b = spec.b
        if spec.kind == families.LINEAR:
            den = 1
            for f in (spec.lin_a, spec.lin_beta, spec.lin_m):
                den = den * f.denominator // math.gcd(den, f.denominator)
            self.lin = (int(spec.lin_a * den), int(spec.lin_beta * den), int(spec.lin_m * den))
            self.gc = None
        else:
            self.gc = families.growth_coeffs(spec)
            self.lin = None
            # deg-0 weight of a capacity-k bucket
            self.w = [0] + [self.gc.node_weight(k, 0) for k in range(1, self.b + 1)]
        # node storage
        self.labels: list[list[int]] = [[1]]
        self.children: list[list[int]] = [[]]
        self.deg = [0]
        self.size = 1
        # selection groups (named families only): nodes of equal weight share
        # a group, so one uniform integer resolves to a node exactly.
        # unsat[k] holds unsaturated capacity-k nodes; sat[d] holds saturated
        # nodes of out-degree d (a single flat list when bdeg == 0).
        self.unsat: list[list[int]] = [[] for _ in range(self.b)]
        self.sat: list[list[int]] = [[]]
        self.pos = {0: 0}
        if self.b == 1:
            self.sat[0] = [0]
        else:
            self.unsat[1] = [0]
        # O(1) selection fast paths.  When the weight is a*c(v) the draw is a
        # uniform label; when bdeg > 0 weights only ever increase, so the
        # weight units form an append-only table of node indices.
        self.holder = self.slots = None
        if self.gc is not None:
            if self.gc.bdeg == 0 and self.gc.c == 0:
                self.holder = [0]
            elif self.gc.bdeg > 0:
                self.slots = [0] * self.gc.total(1)

    # -- named-family node selection, one uniform integer draw --------------

    def _select_named(self, rng: RngStream, u=None) -> int:
        gc, b = self.gc, self.b
        if u is None:
            u = rng.integers(gc.total(self.size))
        for k in range(1, b):
            group = self.unsat[k]
            gw = self.w[k] * len(group)
            if u < gw:
                return group[u // self.w[k]]
            u -= gw
        wb, bd = self.w[b], gc.bdeg
        if bd == 0:
            return self.sat[0][u // wb]
        for d, group in enumerate(self.sat):
            if not group:
                continue
            w = wb + bd * d
            if w > 0:
                gw = w * len(group)
                if u < gw:
                    return group[u // w]
                u -= gw
        raise AssertionError("selection overflow")

    def _pop_group(self, group: list[int], v: int) -> None:
        i = self.pos.pop(v)
        last = group.pop()
        if last != v:
            group[i] = last
            self.pos[last] = i

    def _push_group(self, group: list[int], v: int) -> None:
        self.pos[v] = len(group)
        group.append(v)

    def _select_linear(self, rng: RngStream) -> int:
        a, beta, m = self.lin
        weights = []
        total = 0
        for v in range(len(self.labels)):
            w = a * (len(self.labels[v]) - 1) + beta * self.deg[v] + m
            if w < 0:
                raise ValueError(f"linear growth weight negative at size {self.size}")
            weights.append(w)
            total += w
        u = rng.integers(total)
        for v, w in enumerate(weights):
            if u < w:
                return v
            u -= w
        raise AssertionError("unreachable")

    def step(self, rng: RngStream, u=None) -> None:
        gc = self.gc
        if self.lin is not None:
            v = self._select_linear(rng)
        elif self.holder is not None:
            if u is None:
                u = rng.integers(gc.total(self.size))
            v = self.holder[u // gc.a]
        elif self.slots is not None:
            if u is None:
                u = rng.integers(gc.total(self.size))
            v = self.slots[u]
        else:
            v = self._select_named(rng, u)
        label = self.size + 1
        k = len(self.labels[v])
        if k < self.b:
            self.labels[v].append(label)
            if self.holder is not None:
                self.holder.append(v)
            elif self.slots is not None:
                self.slots.extend([v] * gc.a)
            elif gc is not None:
                self._pop_group(self.unsat[k], v)
                if k + 1 < self.b:
                    self._push_group(self.unsat[k + 1], v)
                else:
                    self._push_group(self.sat[0], v)
        else:
            child = len(self.labels)
            self.labels.append([label])
            self.children.append([])
            self.deg.append(0)
            self.children[v].append(child)
            d = self.deg[v] = self.deg[v] + 1
            if self.holder is not None:
                self.holder.append(child)
            elif self.slots is not None:
                self.slots.extend([child] * (gc.a - gc.bdeg))
                self.slots.extend([v] * gc.bdeg)
            elif gc is not None:
                if gc.bdeg != 0:
                    self._pop_group(self.sat[d - 1], v)
                    if d == len(self.sat):
                        self.sat.append([])
                    self._push_group(self.sat[d], v)
                if self.b == 1:
                    self._push_group(self.sat[0], child)
                else:
                    self._push_group(self.unsat[1], child)
        self.size += 1

    def build(self) -> BucketTree:
        def make(v: int) -> BucketNode:
            return BucketNode(tuple(self.labels[v]),
                              tuple(make(c) for c in self.children[v]))
        return BucketTree(self.b, make(0))

    def census(self) -> NodeCensus:
        m: dict = {}
        n_deg: dict = {}
        for v in range(len(self.labels)):
            k = len(self.labels[v])
            if k < self.b:
                m[k] = m.get(k, 0) + 1
            else:
                n_deg[self.deg[v]] = n_deg.get(self.deg[v], 0) + 1
        return NodeCensus(self.b, self.size, m, n_deg)


def _grown(spec: FamilySpec, n: int, rng) -> _Grower:
    if n < 1:
        raise ValueError("tree size must be >= 1")
    stream = _as_rng(rng)
    g = _Grower(spec)
    if g.gc is not None and n > 1:
        # the totals are deterministic, so all draws can be made up front
        totals = g.gc.a * np.arange(1, n, dtype=np.int64) + g.gc.total_c
        for u in stream.generator.integers(0, totals):
            g.step(stream, int(u))
    else:
        for _ in range(n - 1):
            g.step(stream)
    return g


def sample_tree(spec: FamilySpec, n: int, rng) -> BucketTree:
    """Grow one random size-n tree of the family (rng: RngStream or seed)."""
    return _grown(spec, n, rng).build()


def sample_census(spec: FamilySpec, n: int, rng) -> NodeCensus:
    """Grow a random size-n tree, returning only its bucket census."""
    return _grown(spec, n, rng).census()
