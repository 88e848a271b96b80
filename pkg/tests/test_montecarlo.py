"""Vectorized samplers against the exact finite-n laws."""

import numpy as np
import pytest

from buckettrees import dist_desc, dist_k, families, gof, montecarlo
from buckettrees.grow import RngStream

LEVEL = 0.001


@pytest.mark.parametrize("spec", [families.recursive(2), families.ary(2, 3),
                                  families.port(2, 1)], ids=lambda s: s.describe())
def test_sample_K_distribution(spec):
    samples = montecarlo.sample_K(spec, 12, 30000, RngStream(1))
    report = gof.chi_square(samples, dist_k.pmf_K_exact(spec, 12))
    assert report.passed(LEVEL), str(report)


def test_sample_K_degenerate_cases():
    assert (montecarlo.sample_K(families.recursive(2), 1, 100, 0) == 1).all()
    assert (montecarlo.sample_K(families.recursive(1), 9, 100, 0) == 1).all()


def test_sample_Y_distribution():
    spec = families.recursive(2)
    samples = montecarlo.sample_Y(spec, 12, 4, 30000, RngStream(2))
    report = gof.chi_square(samples, dist_desc.pmf_Y(spec, 12, 4))
    assert report.passed(LEVEL), str(report)


def test_sample_Y_root_label():
    samples = montecarlo.sample_Y(families.recursive(2), 10, 2, 50, 0)
    assert (samples == 9).all()


def test_sample_urn_counts_total_is_deterministic():
    for spec in (families.recursive(2), families.ary(2, 2), families.port(2, 1)):
        gc = families.growth_coeffs(spec)
        counts = montecarlo.sample_urn_counts(spec, 30, 200, RngStream(3))
        assert (counts.sum(axis=1) == gc.total(30)).all()
        assert (counts >= 0).all()


def test_sample_urn_counts_mean():
    spec = families.recursive(2)
    from buckettrees.enumeration import expected_capacity_counts
    exact = expected_capacity_counts(spec, 7)
    model_divisors = [1, 2]  # capacity-k bucket weight under the recursive rule
    counts = montecarlo.sample_urn_counts(spec, 7, 40000, RngStream(4)).astype(float)
    for k in (1, 2):
        ok, z = gof.mean_within_sigma(counts[:, k - 1] / model_divisors[k - 1],
                                      float(exact[k]), sigmas=4.0)
        assert ok, f"N_{k} estimate off by {z:.2f} sigma"


def test_sample_root_degree_distribution():
    spec = families.recursive(1)
    samples = montecarlo.sample_root_degree(spec, 10, 30000, RngStream(5))
    report = gof.chi_square(samples, dist_desc.pmf_X(spec, 10, 1))
    assert report.passed(LEVEL), str(report)


def test_sample_root_degree_guard():
    with pytest.raises(ValueError):
        montecarlo.sample_root_degree(families.recursive(2), 10, 10, 0)


def test_named_family_guard():
    with pytest.raises(ValueError):
        montecarlo.sample_K(families.linear(2, 1, 0, 1), 5, 10, 0)


def test_determinism():
    spec = families.port(2, 1)
    a = montecarlo.sample_K(spec, 20, 50, RngStream(7))
    b = montecarlo.sample_K(spec, 20, 50, RngStream(7))
    assert np.array_equal(a, b)
