"""Indicial equation of a family: exact coefficients and high-precision roots.

The indicial polynomial is

    p(lambda) = lambda (lambda+1) ... (lambda+b-1)  -  (b+kappa)(b+kappa-1) ... (1+kappa)

with kappa the unified family parameter.  lambda = 1 + kappa is always a
root (the two products then coincide term by term), so it is deflated
exactly and the remaining degree-(b-1) factor is solved numerically at
high precision.  Plain double precision is useless here: the constant
term is of order (b+kappa)! and drowns any 1e-10 residual target.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp
import numpy as np

from . import families
from .families import FamilySpec

RESIDUAL_TOL = 1e-10
SEPARATION_TOL = 1e-8


def indicial_coeffs(b: int, kap) -> list[Fraction]:
    """Exact coefficients of p(lambda), ascending by power (monic, degree b)."""
    if b < 1:
        raise ValueError("b must be >= 1")
    kap = Fraction(kap)
    coeffs = [Fraction(1)]
    for i in range(b):  # multiply by (lambda + i)
        new = [Fraction(0)] * (len(coeffs) + 1)
        for j, c in enumerate(coeffs):
            new[j] += c * i
            new[j + 1] += c
        coeffs = new
    const = Fraction(1)
    for i in range(b):
        const *= b + kap - i
    coeffs[0] -= const
    return coeffs


def _deflate(asc: list[Fraction], root: Fraction) -> list[Fraction]:
    """Divide an ascending-coefficient polynomial by (lambda - root), exactly."""
    desc = list(reversed(asc))
    quot = [desc[0]]
    for c in desc[1:]:
        quot.append(c + root * quot[-1])
    remainder = quot.pop()
    if remainder != 0:
        raise ValueError(f"{root} is not an exact root (remainder {remainder})")
    return list(reversed(quot))


def _mpf(x: Fraction):
    return mp.mpf(x.numerator) / mp.mpf(x.denominator)


@dataclass(frozen=True)
class IndicialRoots:
    b: int
    kappa: Fraction
    lambda1: Fraction            # the principal root 1 + kappa, exact
    roots: tuple                 # all b roots as complex, sorted by (-Re, -Im)
    roots_mp: tuple              # the same roots at working precision
    residuals: tuple             # |p(root)| evaluated at working precision

    def second_real_part(self) -> float:
        if self.b < 2:
            raise ValueError("no second root for b = 1")
        return self.roots[1].real

    def gap_ratio(self) -> float:
        """Re(lambda_2) / lambda_1, the quantity that drives the urn phase."""
        return self.second_real_part() / float(self.lambda1)


def _float_seeds(deflated: list[Fraction]) -> list[complex]:
    """Cheap starting points: float64 companion-matrix roots of the deflated factor."""
    desc = [float(c) for c in reversed(deflated)]
    return [complex(z) for z in np.roots(desc)]


def indicial_roots(b: int, kap) -> IndicialRoots:
    kap = Fraction(kap)
    lam1 = 1 + kap
    asc = indicial_coeffs(b, kap)
    dps = max(50, 3 * b + 30)
    with mp.workdps(dps):
        full_desc = [_mpf(c) for c in reversed(asc)]
        deriv_desc = [c * (len(full_desc) - 1 - i) for i, c in enumerate(full_desc[:-1])]
        def polish(seeds, steps):
            out = []
            for r in seeds:
                z = mp.mpc(r)
                for _ in range(steps):  # Newton on the full polynomial
                    pv = mp.polyval(full_desc, z)
                    dv = mp.polyval(deriv_desc, z)
                    if dv == 0:
                        break
                    z = z - pv / dv
                out.append(z)
            return out

        roots_mp = [mp.mpc(_mpf(lam1))]
        if b > 1:
            deflated = _deflate(asc, lam1)
            polished = polish(_float_seeds(deflated), 9)
            residuals = [float(abs(mp.polyval(full_desc, z))) for z in polished]
            seps = [abs(polished[i] - polished[j]) > SEPARATION_TOL
                    for i in range(len(polished)) for j in range(i)]
            if max(residuals, default=0.0) > RESIDUAL_TOL or not all(seps):
                # fall back to the slow high-precision solver
                approx = mp.polyroots([_mpf(c) for c in reversed(deflated)],
                                      maxsteps=200, extraprec=10 * b + 50)
                polished = polish(approx, 8)
            roots_mp.extend(polished)
        roots_mp.sort(key=lambda z: (-mp.re(z), -mp.im(z)))
        residuals = tuple(float(abs(mp.polyval(full_desc, z))) for z in roots_mp)
        roots = tuple(complex(z) for z in roots_mp)
    if max(residuals) > RESIDUAL_TOL:
        raise ArithmeticError(f"root residual {max(residuals):.3e} exceeds {RESIDUAL_TOL}")
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            if abs(roots[i] - roots[j]) <= SEPARATION_TOL:
                raise ArithmeticError(f"multiple root near {roots[i]}")
        for k in range(b):  # poles of the harmonic-difference factor
            if abs(roots[i] + k) <= SEPARATION_TOL:
                raise ArithmeticError(f"root {roots[i]} collides with pole {-k}")
    return IndicialRoots(b, kap, lam1, roots, tuple(roots_mp), residuals)


def family_roots(spec: FamilySpec) -> IndicialRoots:
    return indicial_roots(spec.b, families.kappa(spec))


def harmonic_diff(lam, b: int):
    """H(lam + b - 1) - H(lam - 1) = sum_{k=0}^{b-1} 1 / (lam + k).

    Exact for Fraction input, complex otherwise.
    """
    if isinstance(lam, (Fraction, int)):
        lam = Fraction(lam)
        return sum((Fraction(1) / (lam + k) for k in range(b)), Fraction(0))
    out = 0j
    for k in range(b):
        if abs(lam + k) < 1e-14:
            raise ZeroDivisionError(f"harmonic difference has a pole at {-k}")
        out += 1 / (lam + complex(k))
    return out


def cbinom(x, m: int):
    """Generalized binomial C(x, m) for complex x."""
    if m < 0:
        return 0j
    out = complex(1)
    for i in range(m):
        out *= (x - i) / (i + 1)
    return out
