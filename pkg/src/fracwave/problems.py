"""Data bindings of the four convergence experiments.

1: u0(x) = x^-0.49,                      f = 0
2: u0 = 0,  f(x,t) = x^-0.49             (constant in time)
3: u0 = 0,  f(x,t) = x^(a/(a+1)-0.49) * t^-0.49
4: u0 = 0,  f(x,t) = x^-0.49 * t^(a+0.01)
"""

from __future__ import annotations

from .dg_solver import ForcingSpec
from .fem1d import PowerSingular

__all__ = ["experiment_data", "EXPERIMENT_IDS"]

EXPERIMENT_IDS = (1, 2, 3, 4)


def experiment_data(exp_id: int, alpha: float):
    """(u0_spec or None, ForcingSpec) for the given experiment and order."""
    if exp_id == 1:
        return PowerSingular(-0.49), ForcingSpec.zero()
    if exp_id == 2:
        return None, ForcingSpec.constant(PowerSingular(-0.49))
    if exp_id == 3:
        return None, ForcingSpec.separable(PowerSingular(alpha / (alpha + 1.0) - 0.49), -0.49)
    if exp_id == 4:
        return None, ForcingSpec.separable(PowerSingular(-0.49), alpha + 0.01)
    raise ValueError(f"experiment id must be 1..4, got {exp_id!r}")
