"""Pólya urns tracking the bucket types of a growing tree.

Ball type k carries the total attraction weight of capacity-k buckets, in
the denominator-cleared integer form, so drawing a ball is exactly the
growth step and the urn is balanced with balance a.  The replacement
matrix is sparse (a shifted cycle), which makes its characteristic
polynomial a two-term product and ties its eigenvalues to the indicial
roots by the affine map  lambda_urn = a * lambda_ind - c.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import families
from .families import FamilySpec, kappa as family_kappa
from .grow import RngStream, _as_rng
from .spectral import family_roots
from .trees import NodeCensus


@dataclass(frozen=True)
class UrnModel:
    spec: FamilySpec
    b: int
    replacement: tuple      # b x b integer matrix; row = type drawn
    initial: tuple          # ball counts at tree size 1
    divisors: tuple         # weight of one capacity-k bucket, k = 1..b
    balance: int            # every row sums to this

    def total(self, n: int) -> int:
        gc = families.growth_coeffs(self.spec)
        return gc.total(n)


def build_urn(spec: FamilySpec) -> UrnModel:
    if spec.kind not in families.NAMED_KINDS:
        raise ValueError(f"urns are defined for the named families, not {spec.kind!r}")
    b = spec.b
    if b < 2:
        raise ValueError("the urn needs at least two bucket types (b >= 2)")
    gc = families.growth_coeffs(spec)
    w = [gc.node_weight(k, 0) for k in range(1, b + 1)]
    rows = []
    for k in range(1, b + 1):
        row = [0] * b
        if k < b:
            row[k - 1] = -w[k - 1]
            row[k] = w[k]
        else:
            row[0] = w[0]
            row[b - 1] = gc.bdeg
        rows.append(tuple(row))
    for row in rows:
        if sum(row) != gc.a:
            raise AssertionError("urn is not balanced")
    initial = tuple([w[0]] + [0] * (b - 1))
    return UrnModel(spec, b, tuple(rows), initial, tuple(w), gc.a)


@dataclass
class UrnTrajectory:
    model: UrnModel
    draws: list            # type index (0-based) drawn at each step
    counts: list           # ball counts after each step, counts[0] = initial

    def final(self) -> tuple:
        return tuple(self.counts[-1])


def simulate_urn(model: UrnModel, steps: int, rng) -> UrnTrajectory:
    """One exact trajectory: `steps` draws starting from tree size 1."""
    stream = _as_rng(rng)
    q = list(model.initial)
    counts = [tuple(q)]
    draws = []
    for step in range(steps):
        u = stream.integers(model.total(1 + step))
        k = 0
        while u >= q[k]:
            u -= q[k]
            k += 1
        draws.append(k)
        for i, delta in enumerate(model.replacement[k]):
            q[i] += delta
        counts.append(tuple(q))
    return UrnTrajectory(model, draws, counts)


def census_counts(model: UrnModel, census: NodeCensus) -> tuple:
    """Ball counts of the urn read off a tree census (the exact coupling)."""
    gc = families.growth_coeffs(model.spec)
    q = [0] * model.b
    for k, c in census.m.items():
        q[k - 1] = c * model.divisors[k - 1]
    for d, c in census.n_deg.items():
        q[model.b - 1] += c * (model.divisors[model.b - 1] + gc.bdeg * d)
    return tuple(q)


def node_type_estimates(model: UrnModel, counts) -> dict:
    """Recover the bucket counts N_k from the ball counts, exactly.

    For k < b each capacity-k bucket carries exactly divisors[k-1] balls.
    Type-b balls also carry the degree weights, but the total edge count
    is the node count minus one, which closes the system.
    """
    gc = families.growth_coeffs(model.spec)
    b = model.b
    est = {k: Fraction(counts[k - 1], model.divisors[k - 1]) for k in range(1, b)}
    rest = sum(est.values())
    est[b] = (Fraction(counts[b - 1]) - gc.bdeg * rest + gc.bdeg) \
        / (model.divisors[b - 1] + gc.bdeg)
    return est


# ---------------------------------------------------------------------------
# spectrum


def _poly_mul(p: list, q: list) -> list:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, c in enumerate(q):
            out[i + j] += a * c
    return out


def char_poly(model: UrnModel) -> list[Fraction]:
    """det(R - lambda I) of the replacement matrix, ascending coefficients.

    Computed by Faddeev-LeVerrier on the exact integer matrix; no use is
    made of the sparsity, so this is an independent check of the closed
    product form.
    """
    b = model.b
    a = [[Fraction(x) for x in row] for row in model.replacement]

    def matmul(x, y):
        return [[sum(x[i][t] * y[t][j] for t in range(b)) for j in range(b)]
                for i in range(b)]

    coeffs = [Fraction(0)] * (b + 1)
    coeffs[b] = Fraction(1)
    m = [[Fraction(int(i == j)) for j in range(b)] for i in range(b)]
    for k in range(1, b + 1):
        am = matmul(a, m)
        c = -sum(am[i][i] for i in range(b)) / k
        coeffs[b - k] = c
        for i in range(b):
            am[i][i] += c
        m = am
    # coeffs give det(lambda I - R); flip sign for det(R - lambda I) when b is odd
    if b % 2:
        coeffs = [-c for c in coeffs]
    return coeffs


def char_poly_closed(model: UrnModel) -> list[Fraction]:
    """The closed product form of det(R - lambda I), ascending coefficients:

    (-1)^b [ (lambda - bdeg) prod_{k<b} (lambda + w_k)  -  prod_{k<=b} w_k ]
    """
    gc = families.growth_coeffs(model.spec)
    w = model.divisors
    poly = [Fraction(-gc.bdeg), Fraction(1)]
    for k in range(model.b - 1):
        poly = _poly_mul(poly, [Fraction(w[k]), Fraction(1)])
    prod = Fraction(1)
    for k in range(model.b):
        prod *= w[k]
    poly[0] -= prod
    if model.b % 2:
        poly = [-c for c in poly]
    return poly


@dataclass(frozen=True)
class UrnSpectrum:
    model: UrnModel
    char_coeffs: tuple       # exact, ascending
    eigenvalues: tuple       # complex, sorted by (-Re, -Im)
    principal: Fraction      # equals the balance
    affine: tuple            # (a, -c): lambda_urn = a * lambda_ind - c


def urn_spectrum(model: UrnModel) -> UrnSpectrum:
    spec = model.spec
    gc = families.growth_coeffs(spec)
    coeffs = char_poly_closed(model)
    roots = family_roots(spec)
    eigs = tuple(gc.a * lam - gc.c for lam in roots.roots)
    principal = gc.a * (1 + family_kappa(spec)) - gc.c
    if principal != gc.a:
        raise AssertionError("principal eigenvalue does not equal the balance")
    return UrnSpectrum(model, tuple(coeffs), eigs, Fraction(gc.a), (gc.a, -gc.c))


def numeric_eigenvalues(model: UrnModel) -> list[complex]:
    """Eigenvalues of the replacement matrix by plain dense linear algebra."""
    eigs = np.linalg.eigvals(np.array(model.replacement, dtype=float))
    return sorted((complex(z) for z in eigs), key=lambda z: (-z.real, -z.imag))
