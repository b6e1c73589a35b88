"""Substitution pairs: densities ``phi`` and ``psi = phi - rho F`` whose
characteristic functions agree for ``|t| > sigma`` but differ inside.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from scipy.optimize import minimize_scalar

from .bandlimited import ExtremalBump, bump_cosine_tail, eval_bump
from .densities import DensitySpec, Smoothness, density_from_json
from .errors import (
    HypothesisViolation,
    NumericalError,
    ParameterError,
    SpecError,
    SupportViolation,
    UnsupportedInput,
    ValidationError,
)
from .fourier import PSD_TOL, char_fn, chebyshev_nodes, psd_test, quadrature_cf

TWO_PI = 2.0 * math.pi
SLOPE_TOL = 1e-9
SUPPORT_TOL = 1e-9


@dataclass(frozen=True)
class PsiDensity:
    """Evaluator for ``phi(x) - rho F(x)``; quadrature hooks for :func:`char_fn`."""

    phi: DensitySpec
    bump: ExtremalBump
    rho: float
    kind = "psi"

    def pdf(self, x):
        return self.phi.pdf(x) - self.rho * eval_bump(self.bump, x)

    __call__ = pdf

    def _radius(self) -> float:
        lo, hi = self.phi.quad_window()
        c0 = self.bump.center
        return max(abs(lo - c0), abs(hi - c0), math.pi / self.bump.sigma) + 2.0 * self.bump.width

    def quad_window(self) -> tuple[float, float]:
        R = self._radius()
        return self.bump.center - R, self.bump.center + R

    def breakpoints(self):
        return self.phi.breakpoints()

    def quad_cell(self) -> float:
        lo, hi = self.phi.quad_window()
        return min((hi - lo) / 32, 0.5 * math.pi / self.bump.sigma)

    def closed_form_cf(self, t):
        return None

    def cf_tail(self, t, lo, hi):
        # phi vanishes beyond the window, so psi = -rho F there
        R = 0.5 * (hi - lo)
        return -self.rho * np.exp(-1j * t * self.bump.center) * bump_cosine_tail(self.bump, t, R)


@dataclass(frozen=True)
class SubstitutionPair:
    phi: DensitySpec
    sigma: float
    bump: ExtremalBump
    rho: float

    @property
    def psi(self) -> PsiDensity:
        return PsiDensity(self.phi, self.bump, self.rho)

    def difference(self, x):
        """``phi - psi``, which equals ``rho F``."""
        return self.phi.pdf(x) - self.psi.pdf(x)

    def to_json(self) -> dict:
        return {"phi": self.phi.to_json(), "sigma": self.sigma, "bump": self.bump.to_json(), "rho": self.rho}

    @classmethod
    def from_json(cls, obj: Any) -> SubstitutionPair:
        if not isinstance(obj, dict):
            raise SpecError("pair", "expected a JSON object")
        for key in ("phi", "sigma", "bump", "rho"):
            if key not in obj:
                raise SpecError(key, "missing field in pair file")
        try:
            sigma, rho = float(obj["sigma"]), float(obj["rho"])
        except (TypeError, ValueError):
            raise SpecError("sigma/rho", "expected numbers") from None
        return cls(density_from_json(obj["phi"]), sigma, ExtremalBump.from_json(obj["bump"]), rho)


def window_minimum(phi: DensitySpec, lo: float, hi: float, n_grid: int = 10_000) -> float:
    """Minimum of ``phi`` on ``[lo, hi]``: grid search, then a bounded local refinement."""
    x = np.linspace(lo, hi, n_grid + 1)
    vals = phi.pdf(x)
    i = int(np.argmin(vals))
    best = float(vals[i])
    left, right = x[max(i - 1, 0)], x[min(i + 1, n_grid)]
    if right > left:
        res = minimize_scalar(lambda s: float(phi.pdf(s)), bounds=(left, right), method="bounded",
                              options={"xatol": 1e-12})
        best = min(best, float(res.fun))
    return best


def construct_pair(phi: DensitySpec, sigma: float, alpha: float, beta: float) -> SubstitutionPair:
    """Substitute ``phi`` on a window of length ``2pi/sigma`` centred in ``(alpha, beta)``.

    Requires ``beta - alpha > 2pi/sigma`` and ``(alpha, beta)`` inside the
    support of the continuous density ``phi``. The bump has unit peak, so
    ``rho F <= rho <= phi`` on its window and ``rho F <= 0`` elsewhere.
    """
    if not sigma > 0:
        raise ParameterError(f"sigma must be positive, got {sigma}")
    if not alpha < beta:
        raise ParameterError(f"need alpha < beta, got ({alpha}, {beta})")
    if not beta - alpha > TWO_PI / sigma:
        raise HypothesisViolation(
            "window_length",
            f"window length beta - alpha = {beta - alpha!r} must exceed 2*pi/sigma = {TWO_PI / sigma!r}",
        )
    if not phi.unbounded_tails and not phi.support.contains_interval(alpha, beta):
        raise SupportViolation(f"({alpha}, {beta}) is not contained in the support {phi.support!r}")
    eps = 0.5 * (beta - alpha) - math.pi / sigma
    bump = ExtremalBump.unit_peak(alpha + eps, sigma)
    rho = window_minimum(phi, bump.a, bump.b)
    if not rho > 0:
        raise SupportViolation(f"density vanishes on the window [{bump.a}, {bump.b}] (min {rho!r})")
    return SubstitutionPair(phi, float(sigma), bump, rho)


def check_boundary_support(phi: DensitySpec, sigma: float, alpha: float) -> None:
    length = TWO_PI / sigma
    ivs = phi.support.intervals
    if phi.unbounded_tails or len(ivs) != 1 or max(abs(ivs[0][0] - alpha), abs(ivs[0][1] - alpha - length)) > SUPPORT_TOL * length:
        raise HypothesisViolation(
            "support_shape",
            f"support {phi.support!r} is not ({alpha!r}, {alpha + length!r}) = (alpha, alpha + 2*pi/sigma)",
        )


def endpoint_slopes(phi: DensitySpec) -> tuple[float, float]:
    if phi.smoothness is Smoothness.C0 or phi.endpoint_derivatives is None:
        raise UnsupportedInput(f"{phi.kind} density is not C1 with known endpoint derivatives")
    return phi.endpoint_derivatives


def construct_pair_boundary(phi: DensitySpec, sigma: float, alpha: float,
                            n_grid: int = 10_000, iterations: int = 60) -> SubstitutionPair:
    """Substitution when the support is exactly ``(alpha, alpha + 2pi/sigma)``.

    The bump window equals the support closure. The amplitude is the largest
    ``tau`` (bisection) with ``tau F <= phi`` on the grid and with the bump's
    endpoint slopes ``+-tau sigma^2/4`` dominated by those of ``phi``; it is
    then shaved by a relative ``1e-6`` so the inequality holds between grid
    points. ``rho`` is fixed at 1.
    """
    if not sigma > 0:
        raise ParameterError(f"sigma must be positive, got {sigma}")
    left, right = endpoint_slopes(phi)
    check_boundary_support(phi, sigma, alpha)
    if abs(left) <= SLOPE_TOL or abs(right) <= SLOPE_TOL:
        raise HypothesisViolation(
            "endpoint_slope",
            f"phi'(alpha) = {left!r}, phi'(alpha + 2pi/sigma) = {right!r}: a flat endpoint forces tau = 0, "
            "so the extension from |t| > sigma is unique",
        )
    unit = ExtremalBump(alpha, sigma, math.pi / (2.0 * sigma))
    tau_max = unit.tau
    x = np.linspace(unit.a, unit.b, n_grid + 2)[1:-1]
    shape = eval_bump(unit, x) / tau_max
    phi_x = phi.pdf(x)
    slope = sigma**2 / 4.0

    def feasible(tau):
        return tau * slope <= left and tau * slope <= -right and bool(np.all(tau * shape <= phi_x))

    if feasible(tau_max):
        tau = tau_max
    else:
        lo, hi = 0.0, tau_max
        for _ in range(iterations):
            mid = 0.5 * (lo + hi)
            if feasible(mid):
                lo = mid
            else:
                hi = mid
        tau = lo
    fine = np.linspace(unit.a, unit.b, 10 * n_grid + 2)[1:-1]
    fine_shape = eval_bump(unit, fine) / tau_max
    pos = fine_shape > 0
    if np.any(pos):
        tau = min(tau, float(np.min(phi.pdf(fine[pos]) / fine_shape[pos])))
    tau *= 1.0 - 1e-6
    if not tau > 0:
        raise NumericalError(f"no positive amplitude found on a {n_grid}-point grid", tau)
    return SubstitutionPair(phi, float(sigma), ExtremalBump(alpha, sigma, tau), 1.0)


@dataclass
class Check:
    value: float
    threshold: float
    passed: bool
    relation: str

    def to_json(self) -> dict:
        return {"value": self.value, "threshold": self.threshold, "relation": self.relation, "passed": self.passed}


@dataclass
class VerificationReport:
    checks: dict[str, Check] = field(default_factory=dict)
    psd: dict | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def failed(self) -> list[str]:
        return [name for name, c in self.checks.items() if not c.passed]

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "failed": self.failed(),
            "checks": {name: c.to_json() for name, c in self.checks.items()},
            "psd": self.psd,
        }


def _at_most(value, threshold):
    return Check(float(value), float(threshold), bool(value <= threshold), "<=")


def _at_least(value, threshold):
    return Check(float(value), float(threshold), bool(value >= threshold), ">=")


def default_t_grids(sigma: float, n_outside: int = 512, n_inside: int = 256, t_max_factor: float = 8.0):
    half = np.linspace(sigma * (1 + 1e-3), t_max_factor * sigma, n_outside // 2)
    outside = np.concatenate([-half[::-1], half])
    inside = np.linspace(-sigma, sigma, n_inside + 2)[1:-1]
    return outside, inside


def _nonnegativity_grid(pair: SubstitutionPair, n_grid: int) -> np.ndarray:
    lo, hi = pair.phi.quad_window()
    b = pair.bump
    lo = min(lo, b.a - 10 * b.width)
    hi = max(hi, b.b + 10 * b.width)
    x = np.linspace(lo, hi, n_grid)
    h = x[1] - x[0]
    psi = pair.psi.pdf(x)
    focus = [b.a, b.b, x[int(np.argmin(psi))], x[int(np.argmin(np.where((x > b.a) & (x < b.b), psi, np.inf)))]]
    refined = [np.linspace(p - 5 * h, p + 5 * h, 101) for p in focus]
    return np.concatenate([x, *refined])


def verify_pair(pair: SubstitutionPair, t_outside=None, t_inside=None, *, n_grid: int = 100_000,
                psd_nodes: int = 64, inside_threshold: float = 1e-4, outside_tol: float = 1e-6,
                mass_tol: float = 1e-8, neg_tol: float = 1e-12, psd_tol: float = PSD_TOL) -> VerificationReport:
    """Check that ``(phi, psi)`` is a genuine substitution pair.

    Failing checks are recorded in the report, never raised. ``psi``'s
    transform is computed by direct quadrature of ``psi`` itself, independent
    of the bump transform.
    """
    sigma = pair.sigma
    d_out, d_in = default_t_grids(sigma)
    t_outside = d_out if t_outside is None else np.asarray(t_outside, dtype=float)
    t_inside = d_in if t_inside is None else np.asarray(t_inside, dtype=float)
    if t_outside.size == 0 or t_inside.size == 0:
        raise ParameterError("frequency grids must be nonempty")
    if np.any(np.abs(t_outside) <= sigma) or np.any(np.abs(t_inside) >= sigma):
        raise ParameterError("t_outside must satisfy |t| > sigma and t_inside |t| < sigma")

    psi = pair.psi
    report = VerificationReport()
    t_all = np.concatenate([t_outside, t_inside, [0.0]])
    diff = np.abs(char_fn(pair.phi, t_all) - char_fn(psi, t_all, method="quadrature"))
    n_out = t_outside.size
    report.checks["agree_outside"] = _at_most(np.max(diff[:n_out]), outside_tol)
    report.checks["differ_inside"] = _at_least(np.max(diff[n_out:-1]), inside_threshold)

    x = _nonnegativity_grid(pair, n_grid)
    report.checks["psi_nonnegative"] = _at_least(np.min(psi.pdf(x)), -neg_tol)

    mass = quadrature_cf(psi, [0.0])[0].real
    report.checks["psi_mass"] = _at_most(abs(mass - 1.0), mass_tol)

    nodes = chebyshev_nodes(psd_nodes, -4 * sigma, 4 * sigma)
    try:
        res = psd_test(lambda t: quadrature_cf(psi, t), nodes, psd_tol)
    except ValidationError as exc:
        report.psd = {"error": str(exc)}
        report.checks["psi_cf_psd"] = Check(math.nan, -psd_tol * psd_nodes, False, ">=")
    else:
        report.psd = res.to_json()
        report.checks["psi_cf_psd"] = _at_least(res.min_eig, -psd_tol * res.n)
    return report
