"""Composite Gauss-Legendre rules on cell partitions."""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterable

import numpy as np


@lru_cache(maxsize=None)
def _legendre(order: int) -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(order)


def cell_edges(lo: float, hi: float, breakpoints: Iterable[float] = (), max_cell: float = math.inf) -> np.ndarray:
    """Partition ``[lo, hi]`` at ``breakpoints`` and then into cells no longer than ``max_cell``."""
    pts = sorted({lo, hi, *(float(p) for p in breakpoints if lo < p < hi)})
    edges = [pts[0]]
    for left, right in zip(pts[:-1], pts[1:]):
        n = max(1, math.ceil((right - left) / max_cell))
        edges.extend(np.linspace(left, right, n + 1)[1:])
    return np.asarray(edges)


def gauss_rule(edges: np.ndarray, order: int = 20) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the composite rule over consecutive ``edges``."""
    xi, wi = _legendre(order)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    nodes = (mid[:, None] + half[:, None] * xi[None, :]).ravel()
    weights = (half[:, None] * wi[None, :]).ravel()
    return nodes, weights
