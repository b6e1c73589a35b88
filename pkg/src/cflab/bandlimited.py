"""The extremal bandlimited bump and the identities it satisfies.

The bump with window ``[a, a + 2pi/sigma]`` and amplitude ``tau`` is

    F(x) = tau * [1/(x - a) + sigma/(2pi - sigma (x - a))] * sin^2(sigma (x - a) / 2)

Its Fourier transform is supported on ``[-sigma, sigma]``, it integrates to
zero, vanishes on the lattice ``a + (2pi/sigma) Z`` and is bounded above by
``2 sigma tau / pi`` on the window and by zero off it.

Numerically we use the partial-fraction form ``-tau d S / (u w)`` with
``u = x - a``, ``w = x - b``, ``d = b - a`` and ``S = sin^2(sigma m / 2)``
where ``m`` is whichever of ``u``, ``w`` is smaller in magnitude; the sine is
periodic so both give the same ``S`` but the smaller argument keeps its
relative precision near the two removable singularities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.special import sici

from ._quad import cell_edges, gauss_rule
from .errors import NumericalError, ParameterError, SpecError

TWO_PI = 2.0 * math.pi
TAYLOR_RADIUS = 1e-4  # fraction of the window length
INTEGRAL_TOL = 1e-10


def _taylor_coefficients() -> np.ndarray:
    # g(s) = (sin^2(s/2)/s) / (1 - s/2pi), through degree 5
    q = 1.0 / TWO_PI
    sin_part = np.array([0.0, 1 / 4, 0.0, -1 / 48, 0.0, 1 / 1440])
    geometric = q ** np.arange(6)
    return np.polynomial.polynomial.polymul(sin_part, geometric)[:6]


_G = _taylor_coefficients()
_DG = np.polynomial.polynomial.polyder(_G)


@dataclass(frozen=True)
class ExtremalBump:
    """Parameters of the extremal bump: window start ``a``, bandlimit ``sigma``, amplitude ``tau``."""

    a: float
    sigma: float
    tau: float

    def __post_init__(self):
        if not self.sigma > 0:
            raise ParameterError(f"sigma must be positive, got {self.sigma}")
        if not 0 < self.tau <= self.max_tau * (1 + 1e-12):
            raise ParameterError(f"tau must lie in (0, pi/(2 sigma)] = (0, {self.max_tau!r}], got {self.tau}")

    @classmethod
    def unit_peak(cls, a: float, sigma: float) -> ExtremalBump:
        """The member with ``max F = 1``, i.e. ``tau = pi / (2 sigma)``."""
        return cls(float(a), float(sigma), math.pi / (2.0 * sigma))

    @property
    def max_tau(self) -> float:
        return math.pi / (2.0 * self.sigma)

    @property
    def width(self) -> float:
        return TWO_PI / self.sigma

    @property
    def b(self) -> float:
        return self.a + self.width

    @property
    def center(self) -> float:
        return self.a + math.pi / self.sigma

    @property
    def peak(self) -> float:
        return 2.0 * self.sigma * self.tau / math.pi

    def scaled(self, factor: float) -> ExtremalBump:
        return ExtremalBump(self.a, self.sigma, self.tau * factor)

    def __call__(self, x):
        return eval_bump(self, x)

    def to_json(self) -> dict:
        return {"a": self.a, "sigma": self.sigma, "tau": self.tau}

    @classmethod
    def from_json(cls, obj) -> ExtremalBump:
        try:
            return cls(float(obj["a"]), float(obj["sigma"]), float(obj["tau"]))
        except KeyError as exc:
            raise SpecError(f"bump.{exc.args[0]}", "missing field") from None
        except (TypeError, ValueError) as exc:
            raise SpecError("bump", str(exc)) from None


def _split(F: ExtremalBump, x):
    x = np.asarray(x, dtype=float)
    u = x - F.a
    w = x - F.b
    near = TAYLOR_RADIUS * F.width
    return x, u, w, np.abs(u) < near, np.abs(w) < near


def eval_bump(F: ExtremalBump, x):
    """F(x); the removable singularities at ``a`` and ``b`` evaluate to 0."""
    x, u, w, near_a, near_b = _split(F, x)
    m = np.where(np.abs(u) <= np.abs(w), u, w)
    S = np.sin(0.5 * F.sigma * m) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        out = -F.tau * F.width * S / (u * w)
    scale = F.tau * F.sigma
    out = np.where(near_a, scale * np.polynomial.polynomial.polyval(F.sigma * u, _G), out)
    out = np.where(near_b, scale * np.polynomial.polynomial.polyval(-F.sigma * w, _G), out)
    return float(out) if x.ndim == 0 else out


def eval_bump_derivative(F: ExtremalBump, x):
    """F'(x); equals ``tau sigma^2 / 4`` at ``a`` and ``-tau sigma^2 / 4`` at ``b``."""
    x, u, w, near_a, near_b = _split(F, x)
    m = np.where(np.abs(u) <= np.abs(w), u, w)
    S = np.sin(0.5 * F.sigma * m) ** 2
    dS = 0.5 * F.sigma * np.sin(F.sigma * m)
    with np.errstate(divide="ignore", invalid="ignore"):
        uw = u * w
        out = F.tau * F.width * (-dS / uw + S * (u + w) / (uw * uw))
    scale = F.tau * F.sigma**2
    out = np.where(near_a, scale * np.polynomial.polynomial.polyval(F.sigma * u, _DG), out)
    out = np.where(near_b, -scale * np.polynomial.polynomial.polyval(-F.sigma * w, _DG), out)
    return float(out) if x.ndim == 0 else out


def _cos_over_quadratic_tail(k: np.ndarray, R: float, c: float) -> np.ndarray:
    """``int_R^inf cos(k v) / (v^2 - c^2) dv`` for ``k >= 0``, ``R > c``, exactly."""
    k = np.abs(np.asarray(k, dtype=float))
    log_term = math.log((R + c) / (R - c))
    tiny = k < 1e-12
    ks = np.where(tiny, 1.0, k)
    si_m, ci_m = sici(ks * (R - c))
    si_p, ci_p = sici(ks * (R + c))
    cos_kc, sin_kc = np.cos(ks * c), np.sin(ks * c)
    # P = int_{R}^inf cos(kv)/(v-c), M = int_R^inf cos(kv)/(v+c)
    p_minus_m = cos_kc * (ci_p - ci_m) - sin_kc * ((0.5 * math.pi - si_m) + (0.5 * math.pi - si_p))
    return np.where(tiny, log_term, p_minus_m) / (2.0 * c)


def _symmetric_core_radius(F: ExtremalBump) -> float:
    return math.pi / F.sigma + 8.0 * F.width


def bump_cosine_tail(F: ExtremalBump, t, R: float) -> np.ndarray:
    """``int_{|v| > R} e^{-itv} F(center + v) dv`` in closed form (sine and cosine integrals).

    Beyond the window ``F(center + v) = -(2 pi tau / sigma) cos^2(sigma v / 2) / (v^2 - c^2)``
    with ``c = pi / sigma``; the product with ``cos(t v)`` splits into three
    pure cosines, each integrated exactly.
    """
    t = np.asarray(t, dtype=float)
    c = math.pi / F.sigma
    if not R > c:
        raise ParameterError("tail radius must exceed the half-window")
    J = lambda k: _cos_over_quadratic_tail(k, R, c)  # noqa: E731
    one_side = -(TWO_PI * F.tau / F.sigma) * (0.5 * J(t) + 0.25 * J(t + F.sigma) + 0.25 * J(t - F.sigma))
    return 2.0 * one_side


def bump_fourier(F: ExtremalBump, t, order: int = 20) -> np.ndarray:
    """``int e^{-itx} F(x) dx``: Gauss cells on ``|x - center| <= R`` plus the exact tail."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    R = _symmetric_core_radius(F)
    tmax = float(np.max(np.abs(t))) if t.size else 0.0
    max_cell = min(0.5 * math.pi / F.sigma, math.pi / tmax if tmax > 0 else math.inf)
    edges = cell_edges(0.0, R, (), max_cell)
    v, wts = gauss_rule(edges, order)
    vals = eval_bump(F, F.center + v) + eval_bump(F, F.center - v)
    # F is even about its center, so sin terms cancel
    core = np.cos(np.outer(t, v)) @ (wts * 0.5 * vals)
    total = 2.0 * core + bump_cosine_tail(F, t, R)
    return np.exp(-1j * t * F.center) * total


def integral_bump(F: ExtremalBump) -> float:
    """``int_R F`` (zero in exact arithmetic), windowed quadrature plus exact tail."""
    fine = float(bump_fourier(F, [0.0], order=20)[0].real)
    coarse = float(bump_fourier(F, [0.0], order=12)[0].real)
    if abs(fine - coarse) > INTEGRAL_TOL:
        raise NumericalError("bump integral did not converge", abs(fine - coarse))
    return fine


class LatticeSum(NamedTuple):
    value: float
    bound: float  # analytic bound on |value - exact series|
    limit_is_zero: bool  # a_step <= 2pi/sigma, so the full series sums to 0


def lattice_sum(F: ExtremalBump, x: float, a_step: float, n_max: int) -> LatticeSum:
    """``sum_{|n| <= n_max} F(x + n a_step)`` with a rigorous truncation bound.

    For ``|n| > N``, ``|F(x + n h)| <= 2 pi tau / (sigma (n h - K)^2)`` with
    ``K = |x - a| + 2pi/sigma``; comparing the sum with an integral gives the
    bound ``4 pi tau / (sigma h (N h - K))`` (infinite when ``N h <= K``).
    """
    if not a_step > 0:
        raise ParameterError(f"lattice step must be positive, got {a_step}")
    if n_max < 1:
        raise ParameterError(f"n_max must be >= 1, got {n_max}")
    n = np.arange(-n_max, n_max + 1)
    terms = eval_bump(F, x + n * a_step)
    value = math.fsum(terms)
    K = abs(x - F.a) + F.width
    reach = n_max * a_step - K
    bound = 4.0 * math.pi * F.tau / (F.sigma * a_step * reach) if reach > 0 else math.inf
    bound += 4.0 * np.finfo(float).eps * float(np.sum(np.abs(terms)))
    return LatticeSum(value, float(bound), a_step <= F.width * (1 + 1e-12))


def sampling_reconstruct(F: ExtremalBump, x, n_terms: int):
    """Derivative sampling series of F on the lattice ``a + (2pi/sigma) n``, ``-n_terms < n <= n_terms``."""
    if n_terms < 1:
        raise ParameterError(f"n_terms must be >= 1, got {n_terms}")
    x = np.asarray(x, dtype=float)
    n = np.arange(-n_terms + 1, n_terms + 1)
    nodes = F.a + F.width * n
    vals = np.asarray(eval_bump(F, nodes))
    slopes = np.asarray(eval_bump_derivative(F, nodes))
    xx = x[..., None]
    z = 0.5 * F.sigma * (xx - F.a) - math.pi * n
    kernel = np.sinc(z / math.pi) ** 2
    out = np.sum((vals + slopes * (xx - nodes)) * kernel, axis=-1)
    return float(out) if x.ndim == 0 else out


def quadrature_summation_identity(F: ExtremalBump, n_max: int, offset: float = 0.0) -> tuple[float, float]:
    """``(sigma * int F, sum_{|n| <= n_max} F(a + offset + 2pi n / sigma))``.

    Only lattices through the window start are accepted: ``offset`` must be a
    multiple of ``2pi/sigma``.
    """
    if n_max < 1:
        raise ParameterError(f"n_max must be >= 1, got {n_max}")
    k = offset / F.width
    if abs(k - round(k)) > 1e-12:
        raise ParameterError("sample grid must be the lattice a + (2pi/sigma) Z")
    n = np.arange(-n_max, n_max + 1)
    lhs = F.sigma * integral_bump(F)
    rhs = math.fsum(eval_bump(F, F.a + F.width * n))
    return lhs, rhs


def bump_table(F: ExtremalBump, x) -> np.ndarray:
    """Columns ``x, F, F'`` for plotting."""
    x = np.asarray(x, dtype=float)
    return np.column_stack([x, eval_bump(F, x), eval_bump_derivative(F, x)])
