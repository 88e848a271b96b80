"""Tree families: weight sequences, growth weights and closed-form totals.

Three named families are supported (bucket recursive, (b,d)-ary, and
(b,alpha) plane-oriented), plus a linear generalization that only has a
growth rule, and a custom escape hatch with explicit weight sequences.
All weights are exact rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .trees import BucketTree, check_valid, iter_nodes

RECURSIVE = "recursive"
ARY = "ary"
PORT = "port"
LINEAR = "linear"
CUSTOM = "custom"

NAMED_KINDS = (RECURSIVE, ARY, PORT)


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    b: int
    d: Optional[int] = None
    alpha: Optional[Fraction] = None
    # linear growth rule: weight proportional to lin_a*(c-1) + lin_beta*deg + lin_m
    lin_a: Optional[Fraction] = None
    lin_beta: Optional[Fraction] = None
    lin_m: Optional[Fraction] = None
    # custom combinatorial family
    custom_phi: Optional[Callable[[int], Fraction]] = None
    custom_psi: Optional[Sequence[Fraction]] = None

    def __post_init__(self):
        if self.b < 1:
            raise ValueError("capacity bound b must be >= 1")
        if self.kind == ARY:
            if self.d is None or self.d < 2:
                raise ValueError("(b,d)-ary family needs integer d >= 2")
        elif self.kind == PORT:
            if self.alpha is None or self.alpha <= 0:
                raise ValueError("(b,alpha)-PORT family needs alpha > 0")
        elif self.kind == LINEAR:
            if self.lin_a is None or self.lin_beta is None or self.lin_m is None:
                raise ValueError("linear family needs parameters a, beta, m")
        elif self.kind == CUSTOM:
            if self.custom_phi is None:
                raise ValueError("custom family needs a phi sequence")
        elif self.kind != RECURSIVE:
            raise ValueError(f"unknown family kind {self.kind!r}")

    def describe(self) -> str:
        if self.kind == RECURSIVE:
            return f"recursive:b={self.b}"
        if self.kind == ARY:
            return f"ary:b={self.b},d={self.d}"
        if self.kind == PORT:
            return f"port:b={self.b},alpha={self.alpha}"
        if self.kind == LINEAR:
            return f"linear:b={self.b},a={self.lin_a},beta={self.lin_beta},m={self.lin_m}"
        return f"custom:b={self.b}"


def recursive(b: int) -> FamilySpec:
    return FamilySpec(RECURSIVE, b)


def ary(b: int, d: int) -> FamilySpec:
    return FamilySpec(ARY, b, d=d)


def port(b: int, alpha) -> FamilySpec:
    return FamilySpec(PORT, b, alpha=Fraction(alpha))


def linear(b: int, a, beta, m) -> FamilySpec:
    return FamilySpec(LINEAR, b, lin_a=Fraction(a), lin_beta=Fraction(beta), lin_m=Fraction(m))


def custom(b: int, phi: Callable[[int], Fraction], psi: Sequence[Fraction]) -> FamilySpec:
    return FamilySpec(CUSTOM, b, custom_phi=phi, custom_psi=tuple(psi))


def parse_family(text: str) -> FamilySpec:
    """Parse the CLI form, e.g. 'recursive:b=2', 'ary:b=2,d=3', 'port:b=3,alpha=1/2'."""
    kind, _, rest = text.partition(":")
    kind = kind.strip().lower()
    params = {}
    if rest:
        for item in rest.split(","):
            key, _, value = item.partition("=")
            if not value:
                raise ValueError(f"malformed family parameter {item!r}")
            params[key.strip()] = value.strip()
    b = int(params.pop("b", 1))
    try:
        if kind == RECURSIVE:
            spec = recursive(b)
        elif kind == ARY:
            spec = ary(b, int(params.pop("d")))
        elif kind == PORT:
            spec = port(b, Fraction(params.pop("alpha")))
        elif kind == LINEAR:
            spec = linear(b, Fraction(params.pop("a")), Fraction(params.pop("beta")),
                          Fraction(params.pop("m")))
        else:
            raise ValueError(f"unknown family kind {kind!r}")
    except KeyError as exc:
        raise ValueError(f"family {kind!r} is missing parameter {exc.args[0]!r}")
    if params:
        raise ValueError(f"unexpected family parameters {sorted(params)}")
    return spec


def frac_binom(x, m: int) -> Fraction:
    """Generalized binomial C(x, m) for rational x and integer m >= 0."""
    if m < 0:
        return Fraction(0)
    x = Fraction(x)
    out = Fraction(1)
    for i in range(m):
        out *= (x - i)
        out /= (i + 1)
    return out


def kappa(spec: FamilySpec) -> Fraction:
    """The unified family parameter driving the indicial equation."""
    if spec.kind == RECURSIVE:
        return Fraction(0)
    if spec.kind == ARY:
        return Fraction(1, spec.d - 1)
    if spec.kind == PORT:
        return Fraction(-1, 1) / (spec.alpha + 1)
    raise ValueError(f"kappa undefined for family kind {spec.kind!r}")


def phi(spec: FamilySpec, k: int) -> Fraction:
    """Degree weight of a saturated bucket with out-degree k."""
    b = spec.b
    if spec.kind == RECURSIVE:
        return Fraction(math.factorial(b - 1) * b ** k, math.factorial(k))
    if spec.kind == ARY:
        d = spec.d
        return (math.factorial(b - 1) * (d - 1) ** (b - 1)
                * frac_binom(Fraction(b - 1) + Fraction(1, d - 1), b - 1)
                * frac_binom(b * (d - 1) + 1, k))
    if spec.kind == PORT:
        a1 = spec.alpha + 1
        return (math.factorial(b - 1) * a1 ** (b - 1)
                * frac_binom(Fraction(b - 1) - 1 / a1, b - 1)
                * frac_binom(a1 * b - 2 + k, k))
    if spec.kind == CUSTOM:
        return Fraction(spec.custom_phi(k))
    raise ValueError(f"family kind {spec.kind!r} has no combinatorial weights")


def psi(spec: FamilySpec, k: int) -> Fraction:
    """Bucket weight of an unsaturated leaf with capacity k (1 <= k <= b-1)."""
    if not 1 <= k <= spec.b - 1:
        raise ValueError(f"psi index {k} outside 1..{spec.b - 1}")
    if spec.kind == RECURSIVE:
        return Fraction(math.factorial(k - 1))
    if spec.kind == ARY:
        d = spec.d
        return (math.factorial(k - 1) * (d - 1) ** (k - 1)
                * frac_binom(Fraction(k - 1) + Fraction(1, d - 1), k - 1))
    if spec.kind == PORT:
        a1 = spec.alpha + 1
        return (math.factorial(k - 1) * a1 ** (k - 1)
                * frac_binom(Fraction(k - 1) - 1 / a1, k - 1))
    if spec.kind == CUSTOM:
        return Fraction(spec.custom_psi[k - 1])
    raise ValueError(f"family kind {spec.kind!r} has no combinatorial weights")


def weights(spec: FamilySpec):
    """Return (phi as a callable k -> weight, psi list of length b-1)."""
    if spec.kind == LINEAR:
        raise ValueError("the linear family only has a growth rule, not weights")
    return (lambda k: phi(spec, k)), [psi(spec, k) for k in range(1, spec.b)]


def tree_weight(spec: FamilySpec, tree: BucketTree) -> Fraction:
    """Product of node weights: phi over saturated nodes, psi over unsaturated ones."""
    if tree.b != spec.b:
        raise ValueError("tree capacity bound does not match the family")
    check_valid(tree)
    w = Fraction(1)
    for node in iter_nodes(tree.root):
        if len(node.labels) == spec.b:
            w *= phi(spec, len(node.children))
        else:
            w *= psi(spec, len(node.labels))
    return w


def total_weight_closed(spec: FamilySpec, n: int) -> Fraction:
    """Closed-form total weight T_n of all size-n increasingly labelled ordered trees."""
    if n < 1:
        raise ValueError("n must be >= 1")
    f = Fraction(math.factorial(n - 1))
    if spec.kind == RECURSIVE:
        return f
    if spec.kind == ARY:
        d = spec.d
        return f * (d - 1) ** (n - 1) * frac_binom(Fraction(n - 1) + Fraction(1, d - 1), n - 1)
    if spec.kind == PORT:
        a1 = spec.alpha + 1
        return f * a1 ** (n - 1) * frac_binom(Fraction(n - 1) - 1 / a1, n - 1)
    raise ValueError(f"no closed-form total weight for family kind {spec.kind!r}")


# ---------------------------------------------------------------------------
# growth rule, in denominator-cleared integer form


@dataclass(frozen=True)
class GrowthCoeffs:
    """Integer node weight a*c(v) + bdeg*deg(v) + c; total weight is a*n + total_c."""

    a: int
    bdeg: int
    c: int
    total_c: int

    def node_weight(self, cap: int, deg: int) -> int:
        return self.a * cap + self.bdeg * deg + self.c

    def total(self, n: int) -> int:
        return self.a * n + self.total_c


def growth_coeffs(spec: FamilySpec) -> GrowthCoeffs:
    """Attraction weights of the growth rule with denominators cleared.

    The node weight divided by the total weight at size n reproduces the
    attraction probability of the family's growth process exactly.
    """
    if spec.kind == RECURSIVE:
        return GrowthCoeffs(1, 0, 0, 0)
    if spec.kind == ARY:
        return GrowthCoeffs(spec.d - 1, -1, 1, 1)
    if spec.kind == PORT:
        q = (spec.alpha + 1).denominator
        p = (spec.alpha + 1).numerator  # alpha + 1 = p/q
        return GrowthCoeffs(p, q, -q, -q)
    if spec.kind == LINEAR:
        # weight a*(c-1) + beta*deg + m, cleared by the common denominator;
        # total depends on the node count, so there is no closed total_c
        raise ValueError("linear growth weights are handled per tree, not by coefficients")
    raise ValueError(f"no growth rule for family kind {spec.kind!r}")


def linear_node_weight(spec: FamilySpec, cap: int, deg: int) -> Fraction:
    w = spec.lin_a * (cap - 1) + spec.lin_beta * deg + spec.lin_m
    if w < 0:
        raise ValueError(f"linear weight negative at capacity {cap}, degree {deg}")
    return w
