import dataclasses
import math

import numpy as np
import pytest

from cflab.bandlimited import ExtremalBump, eval_bump
from cflab.densities import gaussian, half_sine_density, raised_cosine_density, skew_cubic_density, triangular
from cflab.errors import HypothesisViolation, SupportViolation, UnsupportedInput
from cflab.fourier import bump_transform, char_fn
from cflab.substitution import (
    SubstitutionPair,
    construct_pair,
    construct_pair_boundary,
    verify_pair,
    window_minimum,
)


@pytest.fixture(scope="module")
def gauss_pair():
    return construct_pair(gaussian(0, 1), 1.0, -4.0, 4.0)


def test_gaussian_construction(gauss_pair):
    p = gauss_pair
    assert p.bump.a == pytest.approx(-math.pi, abs=1e-15)
    assert p.bump.b == pytest.approx(math.pi, abs=1e-15)
    assert p.bump.tau == pytest.approx(math.pi / 2)
    expected = math.exp(-(math.pi**2) / 2) / math.sqrt(2 * math.pi)
    grid = np.linspace(-math.pi, math.pi, 200_001)
    assert np.min(gaussian(0, 1).pdf(grid)) == pytest.approx(expected, rel=1e-12)
    assert p.rho == pytest.approx(expected, rel=1e-12)


def test_triangular_rejected_when_window_too_short():
    with pytest.raises(HypothesisViolation) as info:
        construct_pair(triangular(1.0), math.pi, -0.5, 0.5)
    assert info.value.condition == "window_length"


def test_triangular_wide_accepted():
    p = construct_pair(triangular(8.0), math.pi, -4.0, 4.0)
    # eps = 3, window [-1, 1]; hat value 2(8 - 2)/64 at the window ends
    assert (p.bump.a, p.bump.b) == pytest.approx((-1.0, 1.0))
    assert p.rho == pytest.approx(2 * (8 - 2) / 64, rel=1e-12)


def test_support_violation():
    with pytest.raises(SupportViolation):
        construct_pair(triangular(3.0), math.pi, -1.0, 2.0)


def test_window_minimum_refines_interior_minimum():
    d = half_sine_density(0.0, 1.0)
    # minimum of a concave bump on a window is at an endpoint; on a window
    # straddling the peak the value there is the smaller end
    assert window_minimum(d, 1.0, 5.0) == pytest.approx(min(d.pdf(1.0), d.pdf(5.0)), rel=1e-12)


def test_gaussian_pair_verifies(gauss_pair):
    report = verify_pair(gauss_pair, inside_threshold=1e-4 * gauss_pair.rho)
    assert report.passed, report.to_json()
    assert report.checks["agree_outside"].value <= 1e-6
    assert report.psd["is_psd"]


def test_oversized_rho_breaks_nonnegativity(gauss_pair):
    # the bump peak sits at the centre, where rho F exceeds phi once rho > phi(0)
    bad = dataclasses.replace(gauss_pair, rho=1.5 * float(gauss_pair.phi.pdf(0.0)))
    report = verify_pair(bad, psd_nodes=16)
    assert not report.checks["psi_nonnegative"].passed
    assert "psi_nonnegative" in report.failed()


def test_degenerate_tau_fails_difference_check(gauss_pair):
    tiny = dataclasses.replace(gauss_pair, bump=gauss_pair.bump.scaled(1e-6))
    report = verify_pair(tiny, psd_nodes=16)
    assert not report.checks["differ_inside"].passed
    assert report.checks["agree_outside"].passed


def test_agreement_outside_is_bump_transform(gauss_pair):
    t = np.linspace(1.01, 6, 50)
    diff = char_fn(gauss_pair.phi, t) - char_fn(gauss_pair.psi, t, method="quadrature")
    assert np.max(np.abs(diff)) <= 1e-9
    assert np.max(np.abs(gauss_pair.rho * bump_transform(gauss_pair.bump, t))) <= 1e-9
    t_in = np.linspace(-0.99, 0.99, 41)
    diff_in = char_fn(gauss_pair.phi, t_in) - char_fn(gauss_pair.psi, t_in, method="quadrature")
    assert np.max(np.abs(diff_in - gauss_pair.rho * bump_transform(gauss_pair.bump, t_in))) <= 1e-9


def test_difference_recovers_scaled_bump(gauss_pair):
    x = np.linspace(-30, 30, 10_001)
    assert np.max(np.abs(gauss_pair.difference(x) - gauss_pair.rho * eval_bump(gauss_pair.bump, x))) <= 1e-12


def test_boundary_construction_half_sine():
    d = half_sine_density(0.0, math.pi)
    p = construct_pair_boundary(d, math.pi, 0.0)
    assert p.rho == 1.0
    assert (p.bump.a, p.bump.b) == pytest.approx((0.0, 2.0))
    # worst point is the centre: tau * 2 <= pi / 4
    assert p.bump.tau == pytest.approx(math.pi / 8, rel=1e-5)
    assert p.bump.tau < math.pi / 8
    report = verify_pair(p, inside_threshold=1e-4 * p.bump.tau)
    assert report.passed, report.to_json()


def test_boundary_smaller_tau_still_verifies():
    p = construct_pair_boundary(half_sine_density(0.0, math.pi), math.pi, 0.0)
    smaller = dataclasses.replace(p, bump=p.bump.scaled(0.5))
    report = verify_pair(smaller, inside_threshold=1e-4 * smaller.bump.tau, psd_nodes=32)
    assert report.passed


@pytest.mark.parametrize("d", [raised_cosine_density(0.0, math.pi), skew_cubic_density(0.0, math.pi)], ids=repr)
def test_boundary_rejects_flat_endpoint(d):
    with pytest.raises(HypothesisViolation) as info:
        construct_pair_boundary(d, math.pi, 0.0)
    assert info.value.condition == "endpoint_slope"


def test_boundary_rejects_wrong_support_length():
    with pytest.raises(HypothesisViolation) as info:
        construct_pair_boundary(half_sine_density(0.0, math.pi), 2 * math.pi, 0.0)
    assert info.value.condition == "support_shape"


def test_boundary_rejects_non_c1():
    with pytest.raises(UnsupportedInput):
        construct_pair_boundary(triangular(2.0), math.pi, -1.0)


def test_pair_json_round_trip(gauss_pair):
    again = SubstitutionPair.from_json(gauss_pair.to_json())
    assert again == gauss_pair


def test_pair_bump_has_unit_peak():
    p = construct_pair(triangular(2.2), math.pi, -1.1, 1.1)
    assert p.bump == ExtremalBump.unit_peak(p.bump.a, math.pi)
    assert p.bump.a == pytest.approx(-1.0) and p.bump.peak == pytest.approx(1.0)
