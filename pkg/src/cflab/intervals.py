"""Finite unions of bounded open intervals with Lebesgue-measure arithmetic.

Everything here is "up to null sets": single points are dropped, and intervals
whose endpoints touch (within ``MERGE_TOL``) are merged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import ParameterError, SpecError

MERGE_TOL = 1e-12


def _normalize(pairs: Iterable[Sequence[float]]) -> tuple[tuple[float, float], ...]:
    clean = []
    for pair in pairs:
        lo, hi = float(pair[0]), float(pair[1])
        if math.isnan(lo) or math.isnan(hi):
            raise ParameterError("interval endpoints must not be NaN")
        if hi > lo:
            clean.append((lo, hi))
    clean.sort()
    merged: list[tuple[float, float]] = []
    for lo, hi in clean:
        if merged and lo <= merged[-1][1] + MERGE_TOL:
            plo, phi = merged[-1]
            merged[-1] = (plo, max(phi, hi))
        else:
            merged.append((lo, hi))
    return tuple(merged)


@dataclass(frozen=True, init=False)
class IntervalSet:
    """Sorted, pairwise disjoint open intervals ``(lo, hi)``."""

    intervals: tuple[tuple[float, float], ...]

    def __init__(self, intervals: Iterable[Sequence[float]] = ()):
        object.__setattr__(self, "intervals", _normalize(intervals))

    def __iter__(self) -> Iterator[tuple[float, float]]:
        return iter(self.intervals)

    def __len__(self) -> int:
        return len(self.intervals)

    def __bool__(self) -> bool:
        return bool(self.intervals)

    def __contains__(self, x: float) -> bool:
        return any(lo < x < hi for lo, hi in self.intervals)

    def __repr__(self) -> str:
        body = ", ".join(f"({lo!r}, {hi!r})" for lo, hi in self.intervals)
        return f"IntervalSet([{body}])"

    @property
    def measure(self) -> float:
        return math.fsum(hi - lo for lo, hi in self.intervals)

    @property
    def bounds(self) -> tuple[float, float]:
        if not self.intervals:
            raise ParameterError("empty IntervalSet has no bounds")
        return self.intervals[0][0], self.intervals[-1][1]

    def distance_to_boundary(self, x: float) -> float:
        return min((min(abs(x - lo), abs(x - hi)) for lo, hi in self.intervals), default=math.inf)

    def union(self, other: IntervalSet) -> IntervalSet:
        return IntervalSet(self.intervals + other.intervals)

    def intersection(self, other: IntervalSet) -> IntervalSet:
        out = []
        i = j = 0
        a, b = self.intervals, other.intervals
        while i < len(a) and j < len(b):
            lo = max(a[i][0], b[j][0])
            hi = min(a[i][1], b[j][1])
            if hi > lo:
                out.append((lo, hi))
            if a[i][1] < b[j][1]:
                i += 1
            else:
                j += 1
        return IntervalSet(out)

    def clip(self, lo: float, hi: float) -> IntervalSet:
        return self.intersection(IntervalSet([(lo, hi)]))

    def contains_interval(self, lo: float, hi: float, tol: float = MERGE_TOL) -> bool:
        """True when ``(lo, hi)`` lies inside a single component (endpoints may touch)."""
        return any(clo - tol <= lo and hi <= chi + tol for clo, chi in self.intervals)

    def complement_in_window(self, lo: float, hi: float) -> IntervalSet:
        return complement_in_window(self, lo, hi)

    def project_mod(self, a: float) -> IntervalSet:
        return project_mod(self, a)

    def to_json(self) -> dict:
        return {"intervals": [[lo, hi] for lo, hi in self.intervals]}

    @classmethod
    def from_json(cls, obj: dict) -> IntervalSet:
        try:
            raw = obj["intervals"]
        except (KeyError, TypeError):
            raise SpecError("intervals", "missing list of [lo, hi] pairs") from None
        try:
            return cls((float(lo), float(hi)) for lo, hi in raw)
        except (TypeError, ValueError):
            raise SpecError("intervals", "each entry must be a [lo, hi] pair of numbers") from None


def measure(s: IntervalSet) -> float:
    """Total length of ``s``."""
    return s.measure


def project_mod(s: IntervalSet, a: float) -> IntervalSet:
    """Image of ``s`` under ``x -> x mod a``, as a subset of ``[0, a)``.

    >>> project_mod(IntervalSet([(-0.5, 0.5)]), 2.0)
    IntervalSet([(0.0, 0.5), (1.5, 2.0)])
    """
    if not a > 0:
        raise ParameterError(f"period must be positive, got {a}")
    pieces = []
    for lo, hi in s:
        if math.isinf(lo) or math.isinf(hi):
            raise ParameterError("project_mod needs a bounded IntervalSet")
        if hi - lo >= a:
            return IntervalSet([(0.0, a)])
        k = math.floor(lo / a)
        plo, phi = lo - k * a, hi - k * a
        if plo < 0:  # lo / a underflowed to -0.0
            plo, phi = plo + a, phi + a
        if plo >= a:  # rounding in floor
            plo, phi = plo - a, phi - a
        if phi <= a:
            pieces.append((plo, phi))
        else:
            pieces.append((plo, a))
            pieces.append((0.0, phi - a))
    return IntervalSet(pieces)


def complement_in_window(s: IntervalSet, lo: float, hi: float) -> IntervalSet:
    """``[lo, hi) \\ s`` as an IntervalSet."""
    if not lo < hi:
        raise ParameterError(f"window needs lo < hi, got [{lo}, {hi})")
    out = []
    cursor = lo
    for clo, chi in s.clip(lo, hi):
        if clo > cursor:
            out.append((cursor, clo))
        cursor = max(cursor, chi)
    if cursor < hi:
        out.append((cursor, hi))
    return IntervalSet(out)
