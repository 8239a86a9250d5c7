"""Ground-truth references.

Two kinds: the eigenfunction expansion of the decaying solution (Fourier
sine modes with Mittag-Leffler time factors), exact up to a controlled
truncation tail, and fine-grid self-convergence references (one much finer
numerical run per experiment and order, cached to disk and restricted
exactly onto coarser nested grids for error measurement).
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass

import numpy as np

from .dg_solver import SolverConfig, Trajectory, run
from .fem1d import SpaceGrid1D
from .mittag import mittag_leffler
from .numutil import geometric_edges, panel_rule
from .problems import experiment_data
from .timegrid import TimeGrid
from .weights import check_frac_order

__all__ = [
    "SpectralBasis",
    "TruncationError",
    "fourier_coeffs_power",
    "exact_hom_solution",
    "fine_grid_reference",
    "cache_dir",
]


class TruncationError(RuntimeError):
    """The requested tolerance is unreachable with the available mode count."""


@dataclass(frozen=True)
class SpectralBasis:
    """Dirichlet eigenpairs of -d^2/dx^2 on (0,1): lambda_n = (n pi)^2 and
    phi_n(x) = sqrt(2) sin(n pi x), orthonormal in L2."""

    n_max: int

    @property
    def lambdas(self) -> np.ndarray:
        return (np.arange(1, self.n_max + 1) * np.pi) ** 2

    def eval(self, n: int, x: np.ndarray) -> np.ndarray:
        return np.sqrt(2.0) * np.sin(n * np.pi * x)


def fourier_coeffs_power(p: float, n_max: int) -> np.ndarray:
    """Sine coefficients c_n = int_0^1 x^p sqrt(2) sin(n pi x) dx, n = 1..n_max.

    Panels are graded geometrically toward the x^p singularity and sized to
    the fastest oscillation; all modes share one set of nodes so the sum
    over nodes runs as a running power of e^(i pi x).  Absolute accuracy is
    ~1e-12 per coefficient.
    """
    if not p > -0.5:
        raise ValueError("need p > -1/2 for x^p in L2(0,1)")
    n_max = int(n_max)
    half = 0.5 / max(n_max, 1)  # half period of the fastest mode
    edges = np.concatenate([
        geometric_edges(1e-12, half, 2.0),
        np.linspace(half, 1.0, 2 * n_max + 1)[1:],
    ])
    nodes, wts = panel_rule(edges, 12)
    base = wts * nodes**p
    rot = np.exp(1j * np.pi * nodes)
    out = np.empty(n_max)
    cur = rot.copy()
    for n in range(1, n_max + 1):
        if n % 256 == 0:  # re-anchor the running product
            cur = rot**n
        out[n - 1] = np.sqrt(2.0) * float(np.sum(base * cur.imag))
        cur *= rot
    return out


def _tail_bound(coeffs: np.ndarray, p: float, alpha: float, t: float, n_max: int) -> float:
    """Bound on the dropped modes of the decaying solution, using the
    |c_n| <= A n^-(p+1) fit and the 1/(1+lambda t^(1+alpha)) decay."""
    n = np.arange(1, len(coeffs) + 1, dtype=float)
    A = 2.0 * np.max(np.abs(coeffs) * n ** (p + 1.0))
    s = t ** (1.0 + alpha)
    if np.pi**2 * n_max**2 * s >= 1.0:
        return A * n_max ** (-(p + 2.0)) / ((p + 2.0) * np.pi**2 * s)
    return A * n_max ** (-p) / max(p, 1e-2)  # weak fallback for tiny t


def exact_hom_solution(coeffs: np.ndarray, alpha: float, t: float, sgrid: SpaceGrid1D, tol: float = 1e-8, p: float = -0.49) -> np.ndarray:
    """Nodal samples of sum_n c_n E_{1+alpha,1}(-lambda_n t^(1+alpha)) phi_n(x).

    Raises TruncationError when the mode tail cannot meet tol at this t.
    """
    check_frac_order(alpha)
    if not t > 0.0:
        raise ValueError("need t > 0")
    n_max = len(coeffs)
    bound = _tail_bound(coeffs, p, alpha, t, n_max)
    if bound > tol:
        raise TruncationError(f"mode tail {bound:.2e} exceeds tol {tol:.2e} at t={t}; raise n_max")
    x = sgrid.nodes_interior
    s = t ** (1.0 + alpha)
    out = np.zeros(sgrid.N)
    for n in range(1, n_max + 1):
        e = mittag_leffler(1.0 + alpha, 1.0, -(n * np.pi) ** 2 * s)
        out += coeffs[n - 1] * e * np.sqrt(2.0) * np.sin(n * np.pi * x)
    return out


def cache_dir() -> str:
    env = os.environ.get("FRACWAVE_CACHE_DIR")
    if env:
        return env
    return os.path.join(os.path.expanduser("~"), ".cache", "fracwave")


def _manifest_path(binpath: str) -> str:
    return binpath + ".json"


def fine_grid_reference(exp_id: int, alpha: float, ref_m: int, ref_n: int, directory: str | None = None) -> Trajectory:
    """High-resolution run for the given experiment, cached to disk.

    The cache entry is keyed by (experiment, alpha, m, n); a manifest with a
    checksum guards against partial or stale files.  Solver determinism
    makes the dump bit-reproducible.
    """
    from .trajio import file_sha256, read_trajectory, write_trajectory

    directory = directory or cache_dir()
    name = f"exp{exp_id}_a{alpha:.6g}_m{ref_m}_n{ref_n}"
    binpath = os.path.join(directory, name + ".bin")
    man = _manifest_path(binpath)
    if os.path.exists(binpath) and os.path.exists(man):
        with open(man) as fh:
            meta = json.load(fh)
        if meta.get("sha256") == file_sha256(binpath):
            return read_trajectory(binpath)

    u0, f = experiment_data(exp_id, alpha)
    traj = run(u0, f, SpaceGrid1D(2**ref_m), TimeGrid(1.0, 2**ref_n), alpha, SolverConfig(history_mode="fft"))
    write_trajectory(binpath, traj)
    meta = {
        "experiment": exp_id,
        "alpha": alpha,
        "m": ref_m,
        "n": ref_n,
        "sha256": file_sha256(binpath),
    }
    d = os.path.dirname(os.path.abspath(man))
    fd, tmp = tempfile.mkstemp(dir=d, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        json.dump(meta, fh, indent=1)
    os.replace(tmp, man)
    return traj
