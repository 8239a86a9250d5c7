"""Error norms between trajectories on nested dyadic grids.

Spatial restriction: the finer trajectory is evaluated at the coarse grid's
interior nodes (exact, since nodal values of a piecewise-linear function
restrict exactly) and all spatial norms use the coarse mass matrix.

Temporal sampling depends on the norm.  The sup-in-time L2 norm of a
piecewise-constant difference is attained on the common refinement, i.e.
the fine grid's slabs, so `trajectory_diff(..., sample="fine")` compares
there (the coarse run is constant inside its slabs, making this exact as
well).  The weighted norm

    |v|_{beta,n} := max_{1<=j<=2^n} (j/2^n)^beta * |v((j/2^n)-)|_L2

is defined through the coarse run's own 2^n slab endpoints, so it uses the
coarse left-limit sampling (`sample="coarse"`).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dg_solver import Trajectory
from .fem1d import TriDiagMatrix, assemble_mass

__all__ = [
    "TrajectoryDiff",
    "trajectory_diff",
    "norm_linf_l2",
    "norm_weighted",
    "norm_final_l2",
    "convergence_order",
]


@dataclass(frozen=True)
class TrajectoryDiff:
    """Slab-wise difference of two runs on a common comparison grid."""

    values: np.ndarray  # (slabs, N_coarse) left-limit differences
    mass: TriDiagMatrix
    n: int  # dyadic level of the comparison time grid

    def slab_l2(self) -> np.ndarray:
        sq = np.einsum("jn,jn->j", self.values, self.mass.matvec_rows(self.values))
        return np.sqrt(np.maximum(sq, 0.0))


def _dyadic_level(J: int, what: str) -> int:
    n = int(round(np.log2(J)))
    if 2**n != J:
        raise ValueError(f"{what} must be dyadic for exact nested restriction, got {J}")
    return n


def trajectory_diff(coarse: Trajectory, fine: Trajectory, sample: str = "fine") -> TrajectoryDiff:
    """Difference coarse - fine on the coarse nodes, sampled on the fine
    (sample="fine") or coarse (sample="coarse") slab grid."""
    if sample not in ("fine", "coarse"):
        raise ValueError("sample must be 'fine' or 'coarse'")
    mc = _dyadic_level(coarse.sgrid.M, "spatial resolution")
    mf = _dyadic_level(fine.sgrid.M, "spatial resolution")
    nc = _dyadic_level(coarse.tgrid.J, "temporal resolution")
    nf = _dyadic_level(fine.tgrid.J, "temporal resolution")
    if mf < mc or nf < nc:
        raise ValueError("reference must be at least as fine as the compared run")
    if coarse.tgrid.T != fine.tgrid.T:
        raise ValueError("final times differ")
    node_idx = np.arange(1, coarse.sgrid.M) * 2 ** (mf - mc) - 1
    tstride = 2 ** (nf - nc)
    if sample == "coarse":
        slab_idx = np.arange(1, coarse.tgrid.J + 1) * tstride
        vals = coarse.slabs - fine.data[slab_idx][:, node_idx]
        level = nc
    else:
        vals = np.repeat(coarse.slabs, tstride, axis=0) - fine.slabs[:, node_idx]
        level = nf
    return TrajectoryDiff(values=vals, mass=assemble_mass(coarse.sgrid), n=level)


def norm_linf_l2(diff: TrajectoryDiff) -> float:
    """Sup over comparison slabs of the spatial L2 norm."""
    return float(np.max(diff.slab_l2()))


def norm_weighted(diff: TrajectoryDiff, beta: float, n: int) -> float:
    """max_j (j/2^n)^beta |diff(t_j-)|_L2 over 2^n comparison slabs."""
    if n != diff.n:
        raise ValueError(f"difference lives on 2^{diff.n} slabs, not 2^{n}")
    J = diff.values.shape[0]
    wts = (np.arange(1, J + 1) / J) ** beta
    return float(np.max(wts * diff.slab_l2()))


def norm_final_l2(diff: TrajectoryDiff) -> float:
    """Spatial L2 norm of the left limit at the final time."""
    return float(diff.slab_l2()[-1])


def convergence_order(errors) -> np.ndarray:
    """log2 ratios of consecutive errors under dyadic refinement."""
    e = np.asarray(errors, dtype=float)
    if len(e) < 2:
        raise ValueError("need at least two errors to measure an order")
    if np.any(e <= 0.0):
        raise ValueError("orders are defined for positive errors only")
    return np.log2(e[:-1] / e[1:])
