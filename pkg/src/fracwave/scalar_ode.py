"""Discretized scalar fractional ODEs (one eigenmode of the full scheme).

With mu = lambda * tau^(1+alpha) and weights b, w, the stepping rule for the
decaying mode xi' + lambda * I^alpha xi = 0, xi(0) = xi0 reads

    Y_{k+1} = (Y_k - mu * sum_{j=1..k} w_{k+1-j} Y_j) / (1 + mu*b_1),  Y_0 = xi0,

and for the unit-forced mode (xi(0) = 0, right side 1) the same with Y_k
replaced by Y_k + tau in the numerator.  The history sum here is evaluated
naively in O(K^2): these trajectories serve as the unambiguous oracle for
the PDE solver's fast path, so no shortcuts.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .contour import ContourSpec, contour_xi_forced, contour_xi_hom
from .weights import check_frac_order, conv_weights

__all__ = [
    "ScalarProblem",
    "ScalarTrajectory",
    "step_hom",
    "step_forced",
    "verify_jump_decay",
    "verify_error_decay",
]


@dataclass(frozen=True)
class ScalarProblem:
    alpha: float
    lam: float  # eigenvalue >= 0
    tau: float  # step size > 0
    xi0: float = 1.0

    def __post_init__(self):
        check_frac_order(self.alpha)
        if self.lam < 0.0:
            raise ValueError("eigenvalue must be nonnegative")
        if not self.tau > 0.0:
            raise ValueError("step size must be positive")

    @property
    def mu(self) -> float:
        return self.lam * self.tau ** (1.0 + self.alpha)

    @classmethod
    def from_mu(cls, alpha: float, mu: float, xi0: float = 1.0) -> "ScalarProblem":
        """Problem with tau = 1 and lam = mu; the discrete trajectory and the
        scaled exact solution depend on (alpha, mu) only."""
        return cls(alpha=alpha, lam=mu, tau=1.0, xi0=xi0)


@dataclass(frozen=True)
class ScalarTrajectory:
    y: np.ndarray  # Y_0 .. Y_K

    def __post_init__(self):
        self.y.setflags(write=False)

    @property
    def K(self) -> int:
        return len(self.y) - 1

    def jumps(self) -> np.ndarray:
        return np.diff(self.y)


def _march(p: ScalarProblem, K: int, forcing: float) -> ScalarTrajectory:
    if not (isinstance(K, (int, np.integer)) and K >= 1):
        raise ValueError("need K >= 1")
    cw = conv_weights(p.alpha, max(int(K), 2))
    mu = p.mu
    denom = 1.0 + mu * cw.b[1]
    wrev = cw.w[1:K][::-1].copy()  # w_{K-1} .. w_1, contiguous
    y = np.empty(K + 1)
    y[0] = p.xi0 if forcing == 0.0 else 0.0
    for k in range(K):
        hist = mu * np.dot(wrev[K - 1 - k :], y[1 : k + 1]) if k >= 1 else 0.0
        y[k + 1] = (y[k] + forcing - hist) / denom
    return ScalarTrajectory(y=y)


def step_hom(p: ScalarProblem, K: int) -> ScalarTrajectory:
    """Discrete decaying mode Y_0..Y_K with Y_0 = xi0."""
    return _march(p, K, 0.0)


def step_forced(p: ScalarProblem, K: int) -> ScalarTrajectory:
    """Discrete unit-forced mode Y_0..Y_K with Y_0 = 0."""
    return _march(p, K, p.tau)


@dataclass(frozen=True)
class DecayReport:
    """Empirical constant sup_k k*|jump_k| (or error), with its location."""

    constant: float
    constant_k_ge2: float
    at_k: int


def verify_jump_decay(p: ScalarProblem, K: int) -> DecayReport:
    """sup_k k * |Y_{k+1} - Y_k| / |xi0| over 1 <= k <= K-1.

    The decay theory bounds this uniformly in k; the k = 1 term is reported
    inside `constant` while `constant_k_ge2` excludes it (the k^-1 bound is
    weakest at the first step).
    """
    traj = step_hom(p, K)
    if p.xi0 == 0.0:
        return DecayReport(0.0, 0.0, 1)
    k = np.arange(1, K + 1, dtype=float)
    scaled = k * np.abs(traj.jumps()) / abs(p.xi0)
    at = int(np.argmax(scaled)) + 1
    tail = float(np.max(scaled[1:])) if K >= 2 else 0.0
    return DecayReport(float(np.max(scaled)), tail, at)


def verify_error_decay(p: ScalarProblem, K: int, mode: str, spec: ContourSpec | None = None, tol: float = 1e-10) -> DecayReport:
    """Scaled gap between the discrete and exact modes.

    mode='hom':    sup_k k * |xi(t_k) - Y_k| / |xi0|
    mode='forced': sup_k |xi(t_k) - Y_k| / tau

    Exact values come from the contour integrals; both suprema are bounded
    uniformly in K by the convergence theory.
    """
    if mode not in ("hom", "forced"):
        raise ValueError("mode must be 'hom' or 'forced'")
    if mode == "hom" and p.xi0 == 0.0:
        return DecayReport(0.0, 0.0, 1)
    hom = mode == "hom"
    traj = step_hom(p, K) if hom else step_forced(p, K)
    worst = -np.inf
    worst2 = -np.inf
    at = 1
    for k in range(1, K + 1):
        t = k * p.tau
        if hom:
            exact = contour_xi_hom(p.lam, p.alpha, t, p.xi0, tol=tol)
            val = k * abs(exact - traj.y[k]) / abs(p.xi0)
        else:
            exact = contour_xi_forced(p.lam, p.alpha, t, tol=tol)
            val = abs(exact - traj.y[k]) / p.tau
        if val > worst:
            worst, at = val, k
        if k >= 2:
            worst2 = max(worst2, val)
    return DecayReport(float(worst), float(worst2), at)
