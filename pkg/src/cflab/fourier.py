"""Characteristic functions by direct quadrature, and a finite Bochner screen.

``f(t) = int e^{-itx} phi(x) dx`` is computed with composite Gauss-Legendre
cells no longer than half a period of the oscillation, split at the
density's kinks. Closed forms are used when the catalog has one.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable

import numpy as np

from ._quad import cell_edges, gauss_rule
from .bandlimited import ExtremalBump, bump_fourier
from .errors import NumericalError, ParameterError, ValidationError

CF_TOL = 1e-9
PSD_TOL = 1e-8
_CHUNK = 256


def workers() -> int:
    """Worker cap from ``CF_LAB_THREADS`` (default: up to 4 cores)."""
    env = os.environ.get("CF_LAB_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return min(4, os.cpu_count() or 1)


def _quad_cell(d) -> float:
    if hasattr(d, "quad_cell"):
        return d.quad_cell()
    lo, hi = d.quad_window()
    return (hi - lo) / 32


def quadrature_cf(d, t, order: int = 20) -> np.ndarray:
    """Direct quadrature of ``e^{-itx} d.pdf(x)`` over ``d.quad_window()``.

    Objects with a ``cf_tail(t, lo, hi)`` method contribute the part of the
    transform outside the window.
    """
    t = np.atleast_1d(np.asarray(t, dtype=float))
    lo, hi = d.quad_window()
    tmax = float(np.max(np.abs(t))) if t.size else 0.0
    max_cell = min(_quad_cell(d), math.pi / tmax if tmax > 0 else math.inf)
    x, w = gauss_rule(cell_edges(lo, hi, d.breakpoints(), max_cell), order)
    fw = w * d.pdf(x)

    def block(ts):
        return np.exp(-1j * np.outer(ts, x)) @ fw

    chunks = [t[i : i + _CHUNK] for i in range(0, t.size, _CHUNK)]
    n_workers = min(workers(), len(chunks))
    if n_workers > 1:
        with ThreadPoolExecutor(n_workers) as pool:
            parts = list(pool.map(block, chunks))
    else:
        parts = [block(c) for c in chunks]
    out = np.concatenate(parts) if parts else np.zeros(0, complex)
    if hasattr(d, "cf_tail"):
        out = out + d.cf_tail(t, lo, hi)
    return out


@dataclass
class CharFnEval:
    density: Any
    t_grid: np.ndarray
    values: np.ndarray
    achieved_tol: float

    def rows(self):
        """``(t, re, im, abs)`` tuples for CSV export."""
        return [(float(t), float(v.real), float(v.imag), float(abs(v))) for t, v in zip(self.t_grid, self.values)]


def char_fn_eval(d, t, method: str = "auto") -> CharFnEval:
    """Characteristic function on a grid with an error estimate.

    ``method`` is ``"auto"`` (closed form when available), ``"closed"`` or
    ``"quadrature"``. The quadrature estimate compares 20- and 12-point rules.
    """
    t = np.atleast_1d(np.asarray(t, dtype=float))
    if method not in ("auto", "closed", "quadrature"):
        raise ParameterError(f"unknown method {method!r}")
    closed = None if method == "quadrature" else d.closed_form_cf(t)
    if closed is not None:
        return CharFnEval(d, t, np.asarray(closed, dtype=complex), 4 * np.finfo(float).eps)
    if method == "closed":
        raise ParameterError(f"{d.kind} has no closed-form characteristic function")
    fine = quadrature_cf(d, t, order=20)
    coarse = quadrature_cf(d, t, order=12)
    est = float(np.max(np.abs(fine - coarse))) if t.size else 0.0
    if est > CF_TOL:
        raise NumericalError("characteristic-function quadrature did not converge", est)
    return CharFnEval(d, t, fine, max(est, 4 * np.finfo(float).eps))


def char_fn(d, t, method: str = "auto"):
    """``int e^{-itx} phi(x) dx``; scalar in, complex out."""
    res = char_fn_eval(d, t, method).values
    return complex(res[0]) if np.ndim(t) == 0 else res


def bump_transform(F: ExtremalBump, t):
    """Fourier transform of the extremal bump (zero outside ``[-sigma, sigma]``)."""
    res = bump_fourier(F, t)
    return complex(res[0]) if np.ndim(t) == 0 else res


def chebyshev_nodes(n: int, lo: float, hi: float) -> np.ndarray:
    k = np.arange(n)
    return 0.5 * (lo + hi) + 0.5 * (hi - lo) * np.cos(math.pi * (2 * k + 1) / (2 * n))[::-1]


@dataclass
class PSDResult:
    is_psd: bool
    min_eig: float
    n: int
    tol: float
    hermitian_defect: float

    def to_json(self) -> dict:
        return {
            "is_psd": self.is_psd,
            "min_eig": self.min_eig,
            "n": self.n,
            "tol": self.tol,
            "hermitian_defect": self.hermitian_defect,
        }


def psd_test(values_fn: Callable[[np.ndarray], np.ndarray], nodes, tol: float = PSD_TOL) -> PSDResult:
    """Minimum eigenvalue of the Gram matrix ``[f(t_j - t_k)]``.

    ``values_fn`` must accept an array of differences. Passing this screen is
    necessary, not sufficient, for positive definiteness.
    """
    nodes = np.asarray(nodes, dtype=float)
    n = nodes.size
    if n == 0 or np.unique(nodes).size != n:
        raise ParameterError("nodes must be nonempty and distinct")
    diffs = nodes[:, None] - nodes[None, :]
    M = np.asarray(values_fn(diffs.ravel()), dtype=complex).reshape(n, n)
    defect = float(np.max(np.abs(M - M.conj().T)))
    if defect > tol:
        raise ValidationError(f"Gram matrix is not Hermitian (defect {defect:.3g} > {tol:.3g})")
    M = 0.5 * (M + M.conj().T)
    min_eig = float(np.linalg.eigvalsh(M)[0])
    return PSDResult(min_eig >= -tol * n, min_eig, n, tol, defect)
