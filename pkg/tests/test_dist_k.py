"""The law of K_n: spectral route, exact recursion, limit, node-type link."""

from fractions import Fraction

import pytest

from buckettrees import families
from buckettrees.dist_k import (limit_K, mean_type_masses, node_type_relation,
                                pmf_K, pmf_K_exact)
from buckettrees.enumeration import exact_statistic_pmf, expected_capacity_counts

GRID = [families.recursive(2), families.recursive(3),
        families.ary(2, 2), families.ary(2, 3),
        families.port(2, 1), families.port(2, 2)]


@pytest.mark.parametrize("spec", GRID, ids=lambda s: s.describe())
def test_pmf_K_matches_oracle(spec):
    for n in range(1, 7):
        oracle = exact_statistic_pmf(spec, n, "K")
        assert pmf_K(spec, n).max_abs_diff(oracle) <= 1e-10
        assert pmf_K_exact(spec, n).mass == oracle.mass


@pytest.mark.parametrize("spec", GRID, ids=lambda s: s.describe())
def test_spectral_and_recursive_routes_agree(spec):
    for n in (10, 25, 60):
        assert pmf_K(spec, n).max_abs_diff(pmf_K_exact(spec, n)) <= 1e-10


def test_pmf_K_example():
    assert pmf_K_exact(families.recursive(2), 4).mass == {
        1: Fraction(2, 3), 2: Fraction(1, 3)}


def test_pmf_K_point_mass_before_saturation():
    spec = families.recursive(3)
    for n in (1, 2, 3):
        assert pmf_K(spec, n).mass == {n: Fraction(1)}


def test_limit_K_recursive_b2_is_zipf():
    lim = limit_K(families.recursive(2))
    assert lim.mass == {1: Fraction(2, 3), 2: Fraction(1, 3)}


def test_limit_K_ary_example():
    lim = limit_K(families.ary(2, 3))
    assert lim.mass == {1: Fraction(5, 8), 2: Fraction(3, 8)}


def test_limit_K_is_approached():
    for spec in GRID:
        gap = pmf_K(spec, 5000).max_abs_diff(limit_K(spec).as_float())
        assert gap <= 0.03, f"{spec.describe()}: gap {gap}"


def test_mean_type_masses_sum_to_total():
    for spec in GRID:
        gc = families.growth_coeffs(spec)
        for n in (1, 4, 9):
            assert sum(mean_type_masses(spec, n)) == gc.total(n)


@pytest.mark.parametrize("spec", GRID, ids=lambda s: s.describe())
def test_node_type_relation_matches_enumeration(spec):
    for n in range(1, 6):
        derived = node_type_relation(spec, n, expected_capacity_counts(spec, n))
        assert derived.mass == pmf_K_exact(spec, n + 1).mass


def test_named_family_guard():
    with pytest.raises(ValueError):
        pmf_K(families.linear(2, 1, 0, 1), 4)
    with pytest.raises(ValueError):
        pmf_K_exact(families.recursive(2), 0)
