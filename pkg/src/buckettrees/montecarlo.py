"""Vectorized Monte Carlo samplers for large-sample statistics.

The tree-valued sampler in `grow` is exact but one replicate at a time.
For goodness-of-fit experiments with 1e5 - 1e6 replicates we instead
simulate the minimal sufficient state across all replicates at once:
the bucket-type ball counts for K and the urns, and the subtree-size
chain for Y.  Both are exact projections of the growth process.
"""

from __future__ import annotations

import numpy as np

from . import families
from .families import FamilySpec
from .grow import RngStream, _as_rng


def _kernel_setup(spec: FamilySpec):
    if spec.kind not in families.NAMED_KINDS:
        raise ValueError(f"needs a named family, not {spec.kind!r}")
    gc = families.growth_coeffs(spec)
    b = spec.b
    w = np.array([gc.node_weight(k, 0) for k in range(1, b + 1)], dtype=np.int64)
    rows = np.zeros((b, b), dtype=np.int64)
    for k in range(b - 1):  # drawing an unsaturated type promotes one bucket
        rows[k, k] = -w[k]
        rows[k, k + 1] = w[k + 1]
    rows[b - 1, 0] += w[0]  # drawing a saturated type spawns a child
    rows[b - 1, b - 1] += gc.bdeg
    return gc, w, rows


def _ball_dynamics(spec: FamilySpec, n: int, size: int, rng) -> tuple:
    """Run the type dynamics to tree size n for `size` replicates.

    Returns (counts, last_type): the integer ball counts at size n and the
    0-based type drawn on the final step (or -1 when n == 1).
    """
    gc, w, rows = _kernel_setup(spec)
    stream = _as_rng(rng)
    b = spec.b
    counts = np.zeros((size, b), dtype=np.int64)
    counts[:, 0] = w[0]
    last = np.full(size, -1, dtype=np.int64)
    for s in range(1, n):
        total = gc.total(s)
        u = stream.generator.integers(0, total, size=size)
        drawn = (u[:, None] >= np.cumsum(counts, axis=1)).sum(axis=1)
        counts += rows[drawn]
        last = drawn
    return counts, last


def sample_K(spec: FamilySpec, n: int, size: int, rng) -> np.ndarray:
    """`size` independent copies of K_n (exact distribution)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1 or spec.b == 1:
        return np.ones(size, dtype=np.int64)
    _, last = _ball_dynamics(spec, n, size, rng)
    k = last + 2  # drawing capacity k < b makes a bucket of size k + 1
    k[last == spec.b - 1] = 1  # drawing a saturated bucket starts a new one
    return k


def sample_urn_counts(spec: FamilySpec, n: int, size: int, rng) -> np.ndarray:
    """`size` independent copies of the urn ball counts at tree size n."""
    counts, _ = _ball_dynamics(spec, n, size, rng)
    return counts


def sample_Y(spec: FamilySpec, n: int, j: int, size: int, rng) -> np.ndarray:
    """`size` independent copies of Y_{n,j} (exact distribution).

    K_j is drawn first with the ball-count kernel, then the subtree size
    follows its Markov chain: at tree size s a subtree holding t labels
    attracts the next label with probability (a*t + c) / (a*s + c).
    """
    if not 1 <= j <= n:
        raise ValueError(f"label j={j} outside 1..{n}")
    stream = _as_rng(rng)
    if j <= spec.b:
        return np.full(size, n + 1 - j, dtype=np.int64)
    gc = families.growth_coeffs(spec)
    a, c = float(gc.a), float(gc.total_c)
    ell = sample_K(spec, j, size, stream.child(0)).astype(np.float64)
    y = np.ones(size, dtype=np.int64)
    gen = stream.child(1).generator
    for s in range(j, n):
        p = (a * (y + ell - 1) + c) / (a * s + c)
        y += gen.random(size) < p
    return y


def sample_root_degree(spec: FamilySpec, n: int, size: int, rng) -> np.ndarray:
    """`size` copies of the root out-degree for b = 1 families.

    With b = 1 the root is always saturated, so its degree is the only
    state needed: at size s it attracts with weight a + bdeg * degree.
    """
    if spec.b != 1:
        raise ValueError("root-degree kernel is for b = 1 families")
    gc = families.growth_coeffs(spec)
    a, bd = float(gc.a + gc.c), float(gc.bdeg)
    tc = float(gc.total_c)
    gen = _as_rng(rng).generator
    deg = np.zeros(size, dtype=np.int64)
    for s in range(1, n):
        p = (a + bd * deg) / (float(gc.a) * s + tc)
        deg += gen.random(size) < p
    return deg
