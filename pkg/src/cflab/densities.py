"""Catalog of probability densities with known essential support.

Each density is an immutable dataclass exposing a vectorized ``pdf``, its
essential support as an :class:`IntervalSet`, a smoothness flag and, for the
compactly supported C1 kinds, the one-sided derivatives at the two support
endpoints.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass, field
from typing import Any, ClassVar

import numpy as np

from ._quad import cell_edges, gauss_rule
from .errors import ParameterError, SpecError
from .intervals import IntervalSet

TWO_PI = 2.0 * math.pi
GAUSS_TAIL_LEVEL = 1e-16


class Smoothness(str, enum.Enum):
    C0 = "C0"
    C1 = "C1"
    SMOOTH = "smooth"


def _scalar_or_array(x, values):
    return float(values) if np.ndim(x) == 0 else values


class DensitySpec:
    """Common interface of the catalog densities."""

    kind: ClassVar[str]
    smoothness: ClassVar[Smoothness]
    unbounded_tails: ClassVar[bool] = False

    def _pdf(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        return _scalar_or_array(x, self._pdf(x))

    def __call__(self, x):
        return self.pdf(x)

    @property
    def support(self) -> IntervalSet:
        raise NotImplementedError

    @property
    def endpoint_derivatives(self) -> tuple[float, float] | None:
        return None

    def breakpoints(self) -> tuple[float, ...]:
        """Points where the density is not smooth; quadrature cells split there."""
        return tuple(p for iv in self.support for p in iv)

    def quad_window(self) -> tuple[float, float]:
        return self.support.bounds

    def closed_form_cf(self, t: np.ndarray) -> np.ndarray | None:
        return None

    def params(self) -> dict[str, Any]:
        raise NotImplementedError

    def to_json(self) -> dict[str, Any]:
        return {"kind": self.kind, **self.params()}


@dataclass(frozen=True)
class Triangular(DensitySpec):
    """``2(a - 2|x|)/a**2`` on ``|x| <= a/2``."""

    a: float
    kind: ClassVar[str] = "triangular"
    smoothness: ClassVar[Smoothness] = Smoothness.C0

    def __post_init__(self):
        if not self.a > 0:
            raise ParameterError(f"triangular width must be positive, got {self.a}")

    def _pdf(self, x):
        return np.maximum(2.0 * (self.a - 2.0 * np.abs(x)) / self.a**2, 0.0)

    @property
    def support(self):
        return IntervalSet([(-self.a / 2, self.a / 2)])

    def breakpoints(self):
        return (-self.a / 2, 0.0, self.a / 2)

    def closed_form_cf(self, t):
        # self-convolution of the uniform density on [-a/4, a/4]
        return np.sinc(self.a * t / (4.0 * math.pi)) ** 2 + 0j

    def params(self):
        return {"a": self.a}


@dataclass(frozen=True)
class Gaussian(DensitySpec):
    mean: float = 0.0
    sd: float = 1.0
    kind: ClassVar[str] = "gaussian"
    smoothness: ClassVar[Smoothness] = Smoothness.SMOOTH
    unbounded_tails: ClassVar[bool] = True

    def __post_init__(self):
        if not self.sd > 0:
            raise ParameterError(f"gaussian sd must be positive, got {self.sd}")

    def _pdf(self, x):
        z = (x - self.mean) / self.sd
        return np.exp(-0.5 * z * z) / (math.sqrt(TWO_PI) * self.sd)

    @property
    def half_width(self) -> float:
        # distance from the mean beyond which pdf < GAUSS_TAIL_LEVEL
        level = GAUSS_TAIL_LEVEL * math.sqrt(TWO_PI) * self.sd
        z = math.sqrt(2.0 * math.log(1.0 / level)) if level < 1 else 0.0
        return max(z, 8.5) * self.sd

    @property
    def support(self):
        """Numerical window only; the true support is the whole line."""
        return IntervalSet([(self.mean - self.half_width, self.mean + self.half_width)])

    def breakpoints(self):
        return ()

    def closed_form_cf(self, t):
        return np.exp(-1j * self.mean * t - 0.5 * (self.sd * t) ** 2)

    def params(self):
        return {"mean": self.mean, "sd": self.sd}


@dataclass(frozen=True)
class _PeriodWindowDensity(DensitySpec):
    """Density supported on ``(alpha, alpha + 2*pi/sigma)``."""

    alpha: float
    sigma: float

    def __post_init__(self):
        if not self.sigma > 0:
            raise ParameterError(f"sigma must be positive, got {self.sigma}")

    @property
    def length(self) -> float:
        return TWO_PI / self.sigma

    @property
    def support(self):
        return IntervalSet([(self.alpha, self.alpha + self.length)])

    def _pdf(self, x):
        u = x - self.alpha
        inside = (u > 0) & (u < self.length)
        return np.where(inside, self._shape(np.where(inside, u, 0.0)), 0.0)

    def _shape(self, u):
        raise NotImplementedError

    def params(self):
        return {"alpha": self.alpha, "sigma": self.sigma}


@dataclass(frozen=True)
class RaisedCosine(_PeriodWindowDensity):
    """``(sigma/2pi) (1 - cos(sigma (x - alpha)))``; flat at both endpoints."""

    kind: ClassVar[str] = "raised_cosine"
    smoothness: ClassVar[Smoothness] = Smoothness.C1

    def _shape(self, u):
        return self.sigma / TWO_PI * (1.0 - np.cos(self.sigma * u))

    @property
    def endpoint_derivatives(self):
        return (0.0, 0.0)


@dataclass(frozen=True)
class HalfSine(_PeriodWindowDensity):
    """``(sigma/4) sin(sigma (x - alpha) / 2)``; slopes ``+-sigma**2/8`` at the endpoints."""

    kind: ClassVar[str] = "half_sine"
    smoothness: ClassVar[Smoothness] = Smoothness.C1

    def _shape(self, u):
        return 0.25 * self.sigma * np.sin(0.5 * self.sigma * u)

    @property
    def endpoint_derivatives(self):
        s = self.sigma**2 / 8.0
        return (s, -s)


@dataclass(frozen=True)
class SkewCubic(_PeriodWindowDensity):
    """``12 u**2 (L - u) / L**4`` with ``u = x - alpha``, ``L = 2pi/sigma``.

    Flat at the left endpoint, slope ``-12/L**2`` at the right one.
    """

    kind: ClassVar[str] = "skew_cubic"
    smoothness: ClassVar[Smoothness] = Smoothness.C1

    def _shape(self, u):
        L = self.length
        return 12.0 * u * u * (L - u) / L**4

    @property
    def endpoint_derivatives(self):
        return (0.0, -12.0 / self.length**2)


@dataclass(frozen=True)
class PiecewiseLinear(DensitySpec):
    """Linear interpolation between ``knots``; ordinates are rescaled to unit mass.

    The first and last ordinates must be zero so the density is continuous.
    """

    knots: tuple[tuple[float, float], ...]
    _scale: float = field(init=False, repr=False, compare=False)
    kind: ClassVar[str] = "piecewise_linear"
    smoothness: ClassVar[Smoothness] = Smoothness.C0

    def __post_init__(self):
        knots = tuple((float(x), float(y)) for x, y in self.knots)
        if len(knots) < 3:
            raise ParameterError("piecewise_linear needs at least three knots")
        xs = np.array([k[0] for k in knots])
        ys = np.array([k[1] for k in knots])
        if np.any(np.diff(xs) <= 0):
            raise ParameterError("knot abscissae must be strictly increasing")
        if ys[0] != 0 or ys[-1] != 0:
            raise ParameterError("first and last knot ordinates must be zero")
        if np.any(ys < 0):
            raise ParameterError("knot ordinates must be nonnegative")
        mass = float(np.sum(0.5 * (ys[1:] + ys[:-1]) * np.diff(xs)))
        if not mass > 0:
            raise ParameterError("piecewise_linear knots enclose zero area")
        object.__setattr__(self, "knots", knots)
        object.__setattr__(self, "_scale", 1.0 / mass)

    def _pdf(self, x):
        xs = [k[0] for k in self.knots]
        ys = [k[1] * self._scale for k in self.knots]
        return np.interp(x, xs, ys, left=0.0, right=0.0)

    @property
    def support(self):
        k = self.knots
        return IntervalSet((k[i][0], k[i + 1][0]) for i in range(len(k) - 1) if max(k[i][1], k[i + 1][1]) > 0)

    def breakpoints(self):
        return tuple(x for x, _ in self.knots)

    def params(self):
        return {"knots": [list(k) for k in self.knots]}


def triangular(a: float) -> Triangular:
    return Triangular(float(a))


def gaussian(mean: float = 0.0, sd: float = 1.0) -> Gaussian:
    return Gaussian(float(mean), float(sd))


def raised_cosine_density(alpha: float, sigma: float) -> RaisedCosine:
    return RaisedCosine(float(alpha), float(sigma))


def half_sine_density(alpha: float, sigma: float) -> HalfSine:
    return HalfSine(float(alpha), float(sigma))


def skew_cubic_density(alpha: float, sigma: float) -> SkewCubic:
    return SkewCubic(float(alpha), float(sigma))


def piecewise_linear(knots) -> PiecewiseLinear:
    return PiecewiseLinear(tuple(tuple(k) for k in knots))


def eval_density(d: DensitySpec, x):
    """Density value(s) at ``x``; exactly zero off the support."""
    return d.pdf(x)


def integrate_density(d: DensitySpec, order: int = 20) -> float:
    """Total mass by composite Gauss-Legendre over the support window."""
    lo, hi = d.quad_window()
    edges = cell_edges(lo, hi, d.breakpoints(), max_cell=(hi - lo) / 64)
    nodes, weights = gauss_rule(edges, order)
    return math.fsum(weights * d.pdf(nodes))


_CATALOG = {
    "triangular": (Triangular, ("a",), {}),
    "gaussian": (Gaussian, ("mean", "sd"), {"mean": 0.0, "sd": 1.0}),
    "raised_cosine": (RaisedCosine, ("alpha", "sigma"), {}),
    "half_sine": (HalfSine, ("alpha", "sigma"), {}),
    "skew_cubic": (SkewCubic, ("alpha", "sigma"), {}),
}


def density_from_json(obj: Any) -> DensitySpec:
    """Build a density from its JSON form, e.g. ``{"kind": "triangular", "a": 1.0}``."""
    if not isinstance(obj, dict):
        raise SpecError("density", "expected a JSON object")
    kind = obj.get("kind")
    if kind == "piecewise_linear":
        if "knots" not in obj:
            raise SpecError("knots", "missing field for piecewise_linear")
        try:
            return piecewise_linear(obj["knots"])
        except (TypeError, ValueError) as exc:
            raise SpecError("knots", str(exc)) from None
    if kind not in _CATALOG:
        raise SpecError("kind", f"unknown density kind {kind!r}")
    cls, names, defaults = _CATALOG[kind]
    args = []
    for name in names:
        if name in obj:
            value = obj[name]
        elif name in defaults:
            value = defaults[name]
        else:
            raise SpecError(name, f"missing field for {kind}")
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise SpecError(name, f"expected a number, got {value!r}")
        args.append(float(value))
    try:
        return cls(*args)
    except ParameterError as exc:
        words = set(re.findall(r"\w+", str(exc)))
        bad = next((n for n in names if n in words), names[0])
        raise SpecError(bad, str(exc)) from None
