"""Descendants Y, saturation time tau, out-degree X, and the limit regimes."""

from fractions import Fraction

import pytest

from buckettrees import families
from buckettrees.dist_desc import (limit_reference, pmf_tau, pmf_X, pmf_Y,
                                   pmf_Y_conditional)
from buckettrees.enumeration import exact_statistic_pmf

SPECS = [families.recursive(2), families.port(2, 1)]


def test_pmf_Y_conditional_example():
    pmf = pmf_Y_conditional(families.recursive(2), 4, 1, 3)
    assert pmf.mass == {1: Fraction(2, 3), 2: Fraction(1, 3)}


def test_pmf_Y_conditional_point_mass_in_root():
    # j <= b: j sits in the root bucket whose subtree is everything
    pmf = pmf_Y_conditional(families.recursive(2), 6, 1, 2)
    assert pmf.mass == {5: Fraction(1)}


def test_pmf_tau_examples():
    assert pmf_tau(families.recursive(2), 4, 3).mass == {4: Fraction(1)}
    assert pmf_tau(families.recursive(2), 5, 3).mass == {
        4: Fraction(1, 3), 5: Fraction(2, 3)}


def test_pmf_X_example():
    assert pmf_X(families.recursive(2), 5, 3).mass == {
        0: Fraction(5, 6), 1: Fraction(1, 6)}


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: s.describe())
def test_pmfs_match_oracle(spec):
    for n in range(1, 6):
        for j in range(1, n + 1):
            assert pmf_Y(spec, n, j).mass == exact_statistic_pmf(spec, n, f"Y:{j}").mass
            assert pmf_tau(spec, n, j).mass == exact_statistic_pmf(spec, n, f"tau:{j}").mass
            assert pmf_X(spec, n, j).mass == exact_statistic_pmf(spec, n, f"X:{j}").mass


def test_harmonic_mean_out_degree():
    # b=1 recursive: E[X_{n,1}] is the harmonic number H_{n-1}
    one = families.recursive(1)
    for n in range(2, 12):
        assert pmf_X(one, n, 1).mean() == sum(Fraction(1, s) for s in range(1, n))


def test_pmf_X_rejects_ary():
    with pytest.raises(ValueError, match="ary"):
        pmf_X(families.ary(2, 2), 5, 3)


def test_argument_guards():
    spec = families.recursive(2)
    with pytest.raises(ValueError):
        pmf_Y(spec, 4, 5)
    with pytest.raises(ValueError):
        pmf_Y_conditional(spec, 4, 3, 3)  # ell > b
    with pytest.raises(ValueError):
        pmf_Y(families.linear(2, 1, 0, 1), 4, 2)


def test_limit_reference_regimes():
    spec = families.recursive(2)
    ref = limit_reference(spec, "fixed-j", j=4)
    assert ref.cdf(1.0) == pytest.approx(1.0)
    assert ref.cdf(0.0) == pytest.approx(0.0)
    assert ref.rescale(50, 100) == pytest.approx(0.5)

    ref = limit_reference(spec, "small-j", j=10)
    assert ref.cdf(50.0) == pytest.approx(1.0, abs=1e-9)
    assert ref.rescale(30, 100) == pytest.approx(3.0)

    ref = limit_reference(spec, "central", rho=Fraction(1, 2))
    assert ref.rescale(5, 100) == 4
    assert 0 < ref.cdf(3) < 1

    ref = limit_reference(spec, "large-j")
    assert ref.cdf(0.5) == 0.0 and ref.cdf(1.0) == 1.0


def test_limit_reference_guards():
    spec = families.recursive(2)
    with pytest.raises(ValueError):
        limit_reference(spec, "fixed-j")          # needs j > b
    with pytest.raises(ValueError):
        limit_reference(spec, "fixed-j", j=2)     # j must exceed b
    with pytest.raises(ValueError):
        limit_reference(spec, "central")          # needs rho
    with pytest.raises(ValueError):
        limit_reference(spec, "nope")


def test_central_limit_matches_finite_law():
    # sanity: the negative binomial mixture tracks the exact law of Y - 1
    spec = families.recursive(2)
    n, j = 400, 200
    ref = limit_reference(spec, "central", rho=Fraction(j, n))
    exact = pmf_Y(spec, n, j)
    cdf = 0.0
    for y in exact.support[:6]:
        cdf += float(exact[y])
        assert cdf == pytest.approx(ref.cdf(ref.rescale(y, n)), abs=0.02)
