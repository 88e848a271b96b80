"""Finite probability mass functions over integers, exact or floating."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class Pmf:
    mass: dict  # value (int) -> probability (Fraction or float)

    @property
    def exact(self) -> bool:
        return all(isinstance(p, (Fraction, int)) for p in self.mass.values())

    @property
    def support(self) -> list[int]:
        return sorted(self.mass)

    def total(self):
        return sum(self.mass.values())

    def __getitem__(self, value: int):
        return self.mass.get(value, Fraction(0) if self.exact else 0.0)

    def check(self, tol: float = 1e-9):
        """Exact pmfs must sum to exactly 1; floating ones within tolerance."""
        if self.exact:
            if self.total() != 1:
                raise ValueError(f"exact pmf sums to {self.total()}, not 1")
        else:
            if any(p < -1e-12 for p in self.mass.values()):
                raise ValueError("negative probability mass")
            if abs(self.total() - 1.0) > tol:
                raise ValueError(f"pmf sums to {self.total()}, off by more than {tol}")
        return self

    def as_float(self) -> "Pmf":
        return Pmf({v: float(p) for v, p in self.mass.items()})

    def mean(self):
        return sum(v * p for v, p in self.mass.items())

    def cdf_table(self):
        acc, out = 0, []
        for v in self.support:
            acc = acc + self.mass[v]
            out.append((v, acc))
        return out

    def max_abs_diff(self, other: "Pmf") -> float:
        keys = set(self.mass) | set(other.mass)
        return max(abs(float(self[v]) - float(other[v])) for v in keys)


def point_mass(value: int, exact: bool = True) -> Pmf:
    return Pmf({value: Fraction(1) if exact else 1.0})


def from_counts(counts: dict) -> Pmf:
    total = sum(counts.values())
    return Pmf({v: Fraction(c, total) for v, c in counts.items()})


def mixture(components: list[tuple], exact: bool = True) -> Pmf:
    """Mix (weight, Pmf) pairs; weights need not be pre-normalized."""
    zero = Fraction(0) if exact else 0.0
    mass: dict = {}
    wsum = zero
    for w, pmf in components:
        wsum = wsum + w
        for v, p in pmf.mass.items():
            mass[v] = mass.get(v, zero) + w * p
    if exact:
        if wsum != 1:
            mass = {v: p / wsum for v, p in mass.items()}
    else:
        mass = {v: p / wsum for v, p in mass.items()}
    return Pmf(mass)
