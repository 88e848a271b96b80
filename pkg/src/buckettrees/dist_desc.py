"""Distributions tied to the bucket of a fixed label j.

Y_{n,j}  counts label j together with all later labels in the subtree of
j's bucket.  tau_{n,j} is the time that bucket saturates (censored at n),
and X_{n,j} is its out-degree.  All finite-n laws here are exact
rationals, built from one observation: for the named families the total
attraction weight of any subtree with s labels is a*s + c with the same
constants as the whole tree, so Y is a Markov chain with rational
transition probabilities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

import scipy.stats

from . import families
from .dist_k import limit_K, pmf_K_exact
from .families import FamilySpec, kappa as family_kappa
from .pmf import Pmf, mixture, point_mass


def _require_named(spec: FamilySpec) -> None:
    if spec.kind not in families.NAMED_KINDS:
        raise ValueError(f"needs a named family, not {spec.kind!r}")


def _check_nj(n: int, j: int) -> None:
    if not 1 <= j <= n:
        raise ValueError(f"label j={j} outside 1..{n}")


def _y_chain(spec: FamilySpec, n: int, ell: int, j: int) -> list:
    """pmf vectors of Y at sizes j..n given the bucket held ell labels at time j.

    Returns a list indexed by size s (entry s-j), each a dict m -> Fraction.
    """
    gc = families.growth_coeffs(spec)
    a, c = gc.a, gc.total_c
    cur = {1: Fraction(1)}
    out = [cur]
    for s in range(j, n):
        total = a * s + c
        nxt: dict = {}
        for m, p in cur.items():
            join = Fraction(a * (m + ell - 1) + c, total)
            stay = Fraction(a * (s + 1 - m - ell), total)
            if join:
                nxt[m + 1] = nxt.get(m + 1, Fraction(0)) + p * join
            if stay:
                nxt[m] = nxt.get(m, Fraction(0)) + p * stay
        cur = nxt
        out.append(cur)
    return out


def pmf_Y_conditional(spec: FamilySpec, n: int, ell: int, j: int) -> Pmf:
    """P{Y_{n,j} = m} given that j's bucket had ell labels at time j."""
    _require_named(spec)
    _check_nj(n, j)
    if not 1 <= ell <= min(j, spec.b):
        raise ValueError(f"bucket size ell={ell} impossible at time {j}")
    if j <= spec.b:
        # j sits in the root bucket, whose subtree is the whole tree
        return point_mass(n + 1 - j)
    return Pmf(_y_chain(spec, n, ell, j)[-1]).check()


def pmf_Y(spec: FamilySpec, n: int, j: int) -> Pmf:
    """The exact law of Y_{n,j}, mixing the conditional chains over K_j."""
    _require_named(spec)
    _check_nj(n, j)
    if j <= spec.b:
        return point_mass(n + 1 - j)
    kj = pmf_K_exact(spec, j)
    comps = [(kj[ell], pmf_Y_conditional(spec, n, ell, j))
             for ell in kj.support]
    return mixture(comps).check()


def _q_fill(spec: FamilySpec, m: int) -> Fraction:
    """P{label m lands in a given bucket | that bucket has b-1 labels, no children}."""
    gc = families.growth_coeffs(spec)
    return Fraction(gc.node_weight(spec.b - 1, 0), gc.total(m - 1))


def pmf_tau(spec: FamilySpec, n: int, j: int) -> Pmf:
    """The exact law of tau_{n,j}: when j's bucket saturates, censored at n.

    While unsaturated, j's bucket has no children, so its subtree is the
    bucket itself and saturation happens exactly when Y reaches b + 1 - K_j.
    """
    _require_named(spec)
    _check_nj(n, j)
    b = spec.b
    if j <= b:
        return point_mass(min(b, n))
    kj = pmf_K_exact(spec, j)
    mass = {j: kj[b]} if kj[b] else {}
    tail = Fraction(0)  # P{never saturated by n}
    for ell in range(1, b):
        p_ell = kj[ell]
        if not p_ell:
            continue
        chain = _y_chain(spec, n, ell, j)
        for m in range(j + 1, n + 1):
            hit = chain[m - 1 - j].get(b - ell, Fraction(0))
            if hit:
                mass[m] = mass.get(m, Fraction(0)) + p_ell * hit * _q_fill(spec, m)
        tail += p_ell * sum(
            (p for y, p in chain[n - j].items() if y <= b - ell), Fraction(0))
    if tail:
        mass[n] = mass.get(n, Fraction(0)) + tail
    return Pmf(mass).check()


def _x_given_tau_recursive(spec: FamilySpec, n: int) -> dict:
    """For the recursive family: law of X given tau = m, for every m <= n.

    After saturation each later label joins as a new child independently
    with probability b / (current size), so X | tau = m is a sum of
    independent Bernoullis; the suffix convolutions share all the work.
    Returns {m: dict x -> Fraction}.
    """
    b = spec.b
    out = {n: {0: Fraction(1)}}
    cur = {0: Fraction(1)}
    for m in range(n - 1, b - 1, -1):
        p = Fraction(b, m)  # label m+1 arrives at size m
        nxt: dict = {}
        for x, q in cur.items():
            nxt[x + 1] = nxt.get(x + 1, Fraction(0)) + q * p
            if p != 1:
                nxt[x] = nxt.get(x, Fraction(0)) + q * (1 - p)
        cur = nxt
        out[m] = cur
    return out


def _x_given_tau_port(spec: FamilySpec, n: int, m: int) -> dict:
    """For the PORT family: law of X given tau = m, via a triangular urn.

    White mass tracks the bucket's own attraction weight; each white draw
    is a new child and adds 1 to it, every draw adds alpha + 1 in total.
    """
    a1 = spec.alpha + 1
    w0 = spec.b * a1 - 1
    b0 = a1 * (m - spec.b)
    cur = {0: Fraction(1)}
    for t in range(n - m):
        total = w0 + b0 + t * a1
        nxt: dict = {}
        for x, q in cur.items():
            p = (w0 + x) / total
            nxt[x + 1] = nxt.get(x + 1, Fraction(0)) + q * p
            if p != 1:
                nxt[x] = nxt.get(x, Fraction(0)) + q * (1 - p)
        cur = nxt
    return cur


def pmf_X(spec: FamilySpec, n: int, j: int) -> Pmf:
    """The exact law of X_{n,j}, the out-degree of j's bucket at time n."""
    _require_named(spec)
    if spec.kind == families.ARY:
        raise ValueError("out-degree law after saturation is not available "
                         "for the ary family (weights depend on the degree)")
    _check_nj(n, j)
    tau = pmf_tau(spec, n, j)
    # the mass at n covers both saturation at n and censoring; X = 0 either way
    if spec.kind == families.RECURSIVE:
        table = _x_given_tau_recursive(spec, n)
        comps = [(tau[m], Pmf(table[m])) for m in tau.support]
    else:
        comps = [(tau[m], Pmf(_x_given_tau_port(spec, n, m))) for m in tau.support]
    return mixture(comps).check()


# ---------------------------------------------------------------------------
# limit regimes for Y


@dataclass
class LimitReference:
    """A limit law for (rescaled) Y, exposed through its CDF."""

    regime: str
    description: str
    cdf: Callable  # CDF of the limit of the rescaled quantity
    rescale: Callable  # maps (y, n) to the quantity that converges

    def __repr__(self):
        return f"LimitReference({self.regime}: {self.description})"


def limit_reference(spec: FamilySpec, regime: str, j: Optional[int] = None,
                    rho: Optional[Fraction] = None) -> LimitReference:
    """The distributional limit of Y_{n,j} in one of four regimes of j.

    fixed-j:  Y/n        -> mixture of Beta(ell + kappa, j - ell) over K_j
    small-j:  (j/n) Y    -> mixture of Gamma(ell + kappa, 1) over the K limit
    central:  Y - 1      -> mixture of NegBin(ell + kappa, rho) with j ~ rho n
    large-j:  Y          -> 1
    """
    _require_named(spec)
    kap = float(family_kappa(spec))
    if regime == "fixed-j":
        if j is None or j <= spec.b:
            raise ValueError("fixed-j regime needs a fixed label j > b")
        kj = pmf_K_exact(spec, j)
        parts = [(float(kj[ell]), scipy.stats.beta(ell + kap, j - ell))
                 for ell in kj.support if ell < j]
        def cdf(x):
            return sum(w * d.cdf(x) for w, d in parts)
        return LimitReference(regime, f"Beta mixture over K_{j}", cdf,
                              lambda y, n: y / n)
    if regime == "small-j":
        if j is None:
            raise ValueError("small-j regime needs the label j used for sampling")
        lim = limit_K(spec)
        parts = [(float(lim[ell]), scipy.stats.gamma(ell + kap))
                 for ell in lim.support]
        def cdf(x):
            return sum(w * d.cdf(x) for w, d in parts)
        return LimitReference(regime, "Gamma mixture over the K limit", cdf,
                              lambda y, n, jj=j: jj * y / n)
    if regime == "central":
        if rho is None or not 0 < float(rho) < 1:
            raise ValueError("central regime needs a ratio rho in (0, 1)")
        lim = limit_K(spec)
        parts = [(float(lim[ell]), scipy.stats.nbinom(ell + kap, float(rho)))
                 for ell in lim.support]
        def cdf(x):
            return sum(w * d.cdf(x) for w, d in parts)
        return LimitReference(regime, f"negative binomial mixture at rho={rho}",
                              cdf, lambda y, n: y - 1)
    if regime == "large-j":
        return LimitReference(regime, "degenerate at 1",
                              lambda x: 0.0 if x < 1 else 1.0, lambda y, n: y)
    raise ValueError(f"unknown regime {regime!r}")
