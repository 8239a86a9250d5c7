"""Uniform time grid on (0, T]."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["TimeGrid"]


@dataclass(frozen=True)
class TimeGrid:
    """J uniform slabs I_j = (t_{j-1}, t_j) with t_j = j*T/J."""

    T: float
    J: int

    def __post_init__(self):
        if not self.T > 0.0:
            raise ValueError("final time must be positive")
        if not (isinstance(self.J, (int, np.integer)) and self.J >= 1):
            raise ValueError("need at least one time slab")

    @property
    def tau(self) -> float:
        return self.T / self.J

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(0.0, self.T, self.J + 1)

    def t(self, j: int) -> float:
        return j * self.T / self.J
