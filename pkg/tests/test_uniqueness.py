import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cflab.densities import (
    gaussian,
    half_sine_density,
    piecewise_linear,
    raised_cosine_density,
    skew_cubic_density,
    triangular,
)
from cflab.errors import HypothesisViolation, UnsupportedInput
from cflab.intervals import IntervalSet, project_mod
from cflab.substitution import construct_pair, construct_pair_boundary
from cflab.uniqueness import NoCertificate, UniquenessCertificate, certify, endpoint_uniqueness_test, scan_periods


def test_triangular_certificate_at_full_period():
    cert = certify(triangular(1.0), math.pi, 2.0)
    assert isinstance(cert, UniquenessCertificate)
    assert cert.projected_support.intervals == ((0.0, 0.5), (1.5, 2.0))
    assert cert.E.intervals == ((0.5, 1.5),)
    assert cert.E_measure == pytest.approx(1.0, abs=1e-12)


def test_certificate_invariants():
    cert = certify(triangular(1.3), 2.0)
    assert cert.a <= 2 * math.pi / 2.0
    assert cert.E.intersection(project_mod(triangular(1.3).support, cert.a)).measure <= 1e-12
    assert cert.E_measure == pytest.approx(cert.E.measure) and cert.E_measure > 0


def test_short_support_certified_at_two_pi_over_sigma():
    sigma = 1.7
    cert = certify(triangular(0.9 * 2 * math.pi / sigma), sigma, 2 * math.pi / sigma)
    assert isinstance(cert, UniquenessCertificate)


def test_full_period_support_has_no_certificate():
    res = certify(raised_cosine_density(0.0, math.pi), math.pi, 2.0)
    assert isinstance(res, NoCertificate)


def test_period_bound_violation():
    with pytest.raises(HypothesisViolation) as info:
        certify(triangular(1.0), math.pi, 2.5)
    assert info.value.condition == "period_bound"


def test_unbounded_support_has_no_certificate():
    assert isinstance(certify(gaussian(), 1.0), NoCertificate)


def test_scan_picks_largest_measure():
    d = piecewise_linear([[0, 0], [0.3, 1], [0.6, 0], [1.4, 0], [1.7, 1], [2.0, 0]])
    sigma = 2.5
    best = certify(d, sigma)
    assert isinstance(best, UniquenessCertificate)
    for a in scan_periods(d.support, sigma):
        res = certify(d, sigma, a)
        if isinstance(res, UniquenessCertificate):
            assert best.E_measure >= res.E_measure - 1e-12


def test_gap_periods_are_scanned():
    # the gap structure makes a = 1.4 resonant; it is not on the uniform grid
    d = piecewise_linear([[0, 0], [0.3, 1], [0.6, 0], [1.4, 0], [1.7, 1], [2.0, 0]])
    assert any(abs(c - 1.4) < 1e-12 for c in scan_periods(d.support, 2.5))


def _random_short_density(seed, length):
    rng = np.random.default_rng(seed)
    n_pieces = rng.integers(1, 4)
    widths = rng.dirichlet(np.ones(n_pieces)) * length
    knots, x = [], rng.uniform(-5, 5)
    for w in widths:
        peak = rng.uniform(0.1, 1.0)
        knots += [[x, 0.0], [x + w * rng.uniform(0.2, 0.8), peak], [x + w, 0.0]]
        x += w + rng.uniform(0.05, 2.0)
    return piecewise_linear(knots)


@pytest.mark.parametrize("seed", range(100))
def test_short_support_always_certified(seed):
    rng = np.random.default_rng(1000 + seed)
    sigma = rng.uniform(0.5, 5.0)
    d = _random_short_density(seed, rng.uniform(0.1, 0.99) * 2 * math.pi / sigma)
    assert d.support.measure < 2 * math.pi / sigma
    assert isinstance(certify(d, sigma), UniquenessCertificate)
    assert isinstance(certify(d, sigma, 2 * math.pi / sigma), UniquenessCertificate)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.floats(0.5, 5.0), st.floats(0.2, 3.0))
def test_certificate_excludes_substitution(seed, sigma, scale):
    d = _random_short_density(seed, scale * 2 * math.pi / sigma)
    if isinstance(certify(d, sigma), UniquenessCertificate):
        for lo, hi in d.support:
            with pytest.raises(HypothesisViolation):
                construct_pair(d, sigma, lo, hi)


def test_endpoint_test_examples():
    assert endpoint_uniqueness_test(raised_cosine_density(0.0, math.pi), math.pi, 0.0)
    assert not endpoint_uniqueness_test(half_sine_density(0.0, math.pi), math.pi, 0.0)
    assert endpoint_uniqueness_test(skew_cubic_density(0.0, math.pi), math.pi, 0.0)


def test_endpoint_test_errors():
    with pytest.raises(UnsupportedInput):
        endpoint_uniqueness_test(triangular(2.0), math.pi, -1.0)
    with pytest.raises(HypothesisViolation):
        endpoint_uniqueness_test(half_sine_density(0.0, 1.0), math.pi, 0.0)


BOUNDARY_FAMILY = [
    (cls(alpha, sigma), sigma, alpha)
    for cls in (raised_cosine_density, half_sine_density, skew_cubic_density)
    for alpha, sigma in ((0.0, math.pi), (-1.5, 0.8), (2.0, 4.0))
]


@pytest.mark.parametrize("d,sigma,alpha", BOUNDARY_FAMILY, ids=lambda v: repr(v))
def test_endpoint_test_and_boundary_construction_are_exclusive(d, sigma, alpha):
    unique = endpoint_uniqueness_test(d, sigma, alpha)
    try:
        construct_pair_boundary(d, sigma, alpha)
        constructed = True
    except HypothesisViolation:
        constructed = False
    assert unique != constructed


def test_certificate_json():
    cert = certify(triangular(1.0), math.pi, 2.0)
    obj = cert.to_json()
    assert obj["a"] == 2.0 and obj["E_measure"] == 1.0
    assert IntervalSet.from_json(obj["E"]) == cert.E
