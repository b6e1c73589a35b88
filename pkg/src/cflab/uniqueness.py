"""Uniqueness certificates for extensions of a characteristic function from ``|t| > sigma``.

A certificate is a period ``a <= 2pi/sigma`` and a set ``E`` of positive
measure in ``[0, a)`` whose translates ``E + aZ`` miss the essential support
of the density (up to a null set). Finding none is not a proof of
non-uniqueness: the criterion is sufficient only, and ``E`` is restricted to
finite unions of intervals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .densities import DensitySpec
from .errors import HypothesisViolation, ParameterError
from .intervals import IntervalSet, complement_in_window, project_mod
from .substitution import SLOPE_TOL, check_boundary_support, endpoint_slopes

TWO_PI = 2.0 * math.pi
NULL_TOL = 1e-12
SCAN_STEPS = 256


@dataclass(frozen=True)
class UniquenessCertificate:
    a: float
    E: IntervalSet
    E_measure: float
    projected_support: IntervalSet
    sigma: float

    def to_json(self) -> dict:
        return {
            "a": self.a,
            "E": self.E.to_json(),
            "E_measure": self.E_measure,
            "sigma": self.sigma,
            "projected_support": self.projected_support.to_json(),
        }


@dataclass(frozen=True)
class NoCertificate:
    """No lattice-avoiding set was found; this does not prove non-uniqueness."""

    reason: str
    sigma: float
    best_a: float | None = None

    def to_json(self) -> dict:
        return {"certificate": None, "reason": self.reason, "sigma": self.sigma, "best_a": self.best_a}


def _certificate_at(support: IntervalSet, sigma: float, a: float) -> UniquenessCertificate | None:
    projected = project_mod(support, a)
    E = complement_in_window(projected, 0.0, a)
    if E.intersection(projected).measure > NULL_TOL or E.measure <= NULL_TOL:
        return None
    return UniquenessCertificate(a, E, E.measure, projected, sigma)


def scan_periods(support: IntervalSet, sigma: float) -> list[float]:
    """Candidate periods: ``2pi/sigma``, a uniform grid below it, and gap-derived lengths."""
    top = TWO_PI / sigma
    cands = {top, *(k * top / SCAN_STEPS for k in range(1, SCAN_STEPS + 1))}
    ivs = support.intervals
    gaps = [ivs[i + 1][0] - ivs[i][1] for i in range(len(ivs) - 1)]
    ends = [p for iv in ivs for p in iv]
    cands.update(gaps)
    cands.update(abs(p - q) for p in ends for q in ends)
    return sorted(c for c in cands if 0 < c <= top)


def certify(phi: DensitySpec, sigma: float, a: float | None = None) -> UniquenessCertificate | NoCertificate:
    """Look for a lattice-avoiding set ``E`` for ``phi`` at bandlimit ``sigma``.

    With ``a`` given, ``E = [0, a) minus (support mod a)``. Without it, the
    candidates of :func:`scan_periods` are tried and the largest ``|E|`` wins
    (ties go to the smaller period).
    """
    if not sigma > 0:
        raise ParameterError(f"sigma must be positive, got {sigma}")
    top = TWO_PI / sigma
    if a is not None:
        if not a > 0:
            raise ParameterError(f"period must be positive, got {a}")
        if a > top * (1 + 1e-12):
            raise HypothesisViolation("period_bound", f"period a = {a!r} exceeds 2*pi/sigma = {top!r}")
    if phi.unbounded_tails:
        return NoCertificate("support is unbounded; no lattice avoids it", float(sigma))
    support = phi.support
    if a is not None:
        cert = _certificate_at(support, sigma, float(a))
        return cert or NoCertificate(f"support covers [0, a) modulo a = {a!r}", float(sigma), float(a))
    best = None
    for cand in scan_periods(support, sigma):
        cert = _certificate_at(support, sigma, cand)
        if cert is not None and (best is None or cert.E_measure > best.E_measure + NULL_TOL):
            best = cert
    if best is None:
        return NoCertificate("support covers every scanned period", float(sigma))
    return best


def endpoint_uniqueness_test(phi: DensitySpec, sigma: float, alpha: float) -> bool:
    """For support exactly ``(alpha, alpha + 2pi/sigma)``: True iff a flat endpoint forces uniqueness."""
    if not sigma > 0:
        raise ParameterError(f"sigma must be positive, got {sigma}")
    left, right = endpoint_slopes(phi)
    check_boundary_support(phi, sigma, alpha)
    return abs(left) <= SLOPE_TOL or abs(right) <= SLOPE_TOL
