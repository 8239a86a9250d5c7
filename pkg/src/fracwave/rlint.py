"""Fractional integrals of piecewise-constant functions, in closed form.

For v constant on each slab of a uniform time grid, the left-sided integral

    (I_{0+}^beta v)(t) = 1/Gamma(beta) * int_0^t (t-s)^(beta-1) v(s) ds

reduces per slab to differences of (t - t_j)_+^beta, so no quadrature is
needed (and likewise for the right-sided mirror on (t, T)).
"""

from __future__ import annotations

import numpy as np

from .timegrid import TimeGrid
from .weights import gamma_fn

__all__ = ["rl_integral_pc_left", "rl_integral_pc_right"]


def _check(values, grid: TimeGrid, beta: float):
    values = np.asarray(values, dtype=float)
    if values.shape != (grid.J,):
        raise ValueError(f"expected one value per slab ({grid.J}), got shape {values.shape}")
    if not 0.0 < beta <= 1.0:
        raise ValueError(f"order must lie in (0, 1], got {beta!r}")
    return values


def rl_integral_pc_left(values, grid: TimeGrid, beta: float, t: float) -> float:
    """Left-sided fractional integral of order beta at time t in (0, T]."""
    values = _check(values, grid, beta)
    if not 0.0 < t <= grid.T:
        raise ValueError(f"t must lie in (0, {grid.T}], got {t!r}")
    nodes = grid.nodes
    lo = np.maximum(t - nodes[:-1], 0.0)
    hi = np.maximum(t - nodes[1:], 0.0)
    return float(values @ (lo**beta - hi**beta)) / gamma_fn(1.0 + beta)


def rl_integral_pc_right(values, grid: TimeGrid, beta: float, t: float) -> float:
    """Right-sided fractional integral of order beta at time t in [0, T)."""
    values = _check(values, grid, beta)
    if not 0.0 <= t < grid.T:
        raise ValueError(f"t must lie in [0, {grid.T}), got {t!r}")
    nodes = grid.nodes
    hi = np.maximum(nodes[1:] - t, 0.0)
    lo = np.maximum(nodes[:-1] - t, 0.0)
    return float(values @ (hi**beta - lo**beta)) / gamma_fn(1.0 + beta)
