"""Indicial polynomials, their roots, and the helper special functions."""

from fractions import Fraction

import pytest

from buckettrees.spectral import (cbinom, harmonic_diff, indicial_coeffs,
                                  indicial_roots, _deflate)


def test_indicial_coeffs_recursive_b2():
    # lambda(lambda+1) - 2 = lambda^2 + lambda - 2
    assert indicial_coeffs(2, 0) == [Fraction(-2), Fraction(1), Fraction(1)]


def test_roots_recursive_b2():
    r = indicial_roots(2, 0)
    assert r.lambda1 == 1
    assert r.roots[0] == pytest.approx(1)
    assert r.roots[1] == pytest.approx(-2)


def test_roots_port_b2():
    r = indicial_roots(2, Fraction(-1, 2))
    assert r.lambda1 == Fraction(1, 2)
    assert r.roots[0] == pytest.approx(0.5)
    assert r.roots[1] == pytest.approx(-1.5)


def test_principal_root_is_exact_root():
    for kap in (Fraction(0), Fraction(1, 2), Fraction(-1, 3)):
        for b in (1, 3, 7):
            coeffs = indicial_coeffs(b, kap)
            lam = 1 + kap
            assert sum(c * lam ** i for i, c in enumerate(coeffs)) == 0


def test_residuals_stay_tiny_at_large_b():
    r = indicial_roots(25, Fraction(1, 2))
    assert max(r.residuals) <= 1e-10
    assert len(r.roots) == 25
    assert abs(r.roots[0] - 1.5) <= 1e-12


def test_gap_ratio_orders_roots():
    r = indicial_roots(5, 0)
    assert r.roots[0].real > r.roots[1].real
    assert r.gap_ratio() == pytest.approx(r.roots[1].real / float(r.lambda1))
    with pytest.raises(ValueError):
        indicial_roots(1, 0).second_real_part()


def test_deflate_exactness():
    coeffs = indicial_coeffs(3, 0)
    quotient = _deflate(coeffs, Fraction(1))
    assert len(quotient) == 3  # degree dropped by one
    with pytest.raises(ValueError):
        _deflate(coeffs, Fraction(7))


def test_b_guard():
    with pytest.raises(ValueError):
        indicial_coeffs(0, 0)


def test_harmonic_diff_examples():
    assert harmonic_diff(Fraction(1), 2) == Fraction(3, 2)
    assert harmonic_diff(Fraction(-2), 2) == Fraction(-3, 2)
    assert harmonic_diff(Fraction(1, 2), 2) == Fraction(8, 3)
    assert harmonic_diff(1.0 + 0j, 2) == pytest.approx(1.5)
    with pytest.raises(ZeroDivisionError):
        harmonic_diff(0j, 2)


def test_cbinom_examples():
    assert cbinom(0.5, 2) == pytest.approx(-1 / 8)
    assert cbinom(4, 4) == pytest.approx(1)    # C(lam+n-2, n-1), lam=1, n=5
    assert cbinom(1, 3) == pytest.approx(0)    # C(lam+n-2, n-1), lam=-2, n=4
    assert cbinom(3, -1) == 0
