"""Linear finite elements on a uniform grid of (0, 1) with zero boundary values.

Mass and stiffness matrices are symmetric tridiagonal; functions are stored
as vectors of interior nodal values (the boundary values are implicitly
zero).  Data with a power singularity x^p at the origin is projected using
exact element moments, so no quadrature error enters the convergence tables
through the data.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.linalg import cho_solve_banded, cholesky_banded, eigh

from .numutil import gauss_legendre, powdiff

__all__ = [
    "SpaceGrid1D",
    "TriDiagMatrix",
    "FemFunction",
    "PowerSingular",
    "Smooth",
    "assemble_mass",
    "assemble_stiffness",
    "load_vector",
    "l2_project",
    "discrete_eigenpairs",
    "closed_form_eigenvalues",
    "solve_spd_tridiag",
    "l2_norm",
]

FemFunction = np.ndarray  # interior nodal values, boundary values are zero


@dataclass(frozen=True)
class SpaceGrid1D:
    """M uniform sub-intervals of (0, 1); N = M - 1 interior nodes."""

    M: int

    def __post_init__(self):
        if not (isinstance(self.M, (int, np.integer)) and self.M >= 2):
            raise ValueError("need at least two sub-intervals")

    @property
    def h(self) -> float:
        return 1.0 / self.M

    @property
    def N(self) -> int:
        return self.M - 1

    @property
    def nodes_interior(self) -> np.ndarray:
        return np.arange(1, self.M) * self.h


@dataclass(frozen=True)
class TriDiagMatrix:
    """Symmetric tridiagonal matrix by its diagonal and off-diagonal."""

    diag: np.ndarray
    off: np.ndarray

    def __post_init__(self):
        if len(self.off) != len(self.diag) - 1:
            raise ValueError("off-diagonal must be one shorter than the diagonal")
        self.diag.setflags(write=False)
        self.off.setflags(write=False)

    @property
    def n(self) -> int:
        return len(self.diag)

    def matvec(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v)
        out = self.diag * v
        out[:-1] += self.off * v[1:]
        out[1:] += self.off * v[:-1]
        return out

    def matvec_rows(self, V: np.ndarray) -> np.ndarray:
        """Apply to every row of a (rows, n) array at once."""
        out = V * self.diag
        out[:, :-1] += V[:, 1:] * self.off
        out[:, 1:] += V[:, :-1] * self.off
        return out

    def to_banded_upper(self) -> np.ndarray:
        ab = np.zeros((2, self.n))
        ab[0, 1:] = self.off
        ab[1, :] = self.diag
        return ab

    def factor(self) -> "TriDiagFactor":
        return TriDiagFactor(cholesky_banded(self.to_banded_upper()))

    def dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.off, 1) + np.diag(self.off, -1)


@dataclass(frozen=True)
class TriDiagFactor:
    """Banded Cholesky factor, reused across many solves with one matrix."""

    cb: np.ndarray

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        return cho_solve_banded((self.cb, False), rhs)


@dataclass(frozen=True)
class PowerSingular:
    """Data x -> x**p with p > -1/2 (so it lies in L2(0,1))."""

    p: float

    def __post_init__(self):
        if not self.p > -0.5:
            raise ValueError("x^p lies outside L2(0,1) for p <= -1/2")

    def l2_norm_exact(self) -> float:
        return 1.0 / np.sqrt(2.0 * self.p + 1.0)


@dataclass(frozen=True)
class Smooth:
    """Data given by a callable, integrated by 5-point Gauss per element."""

    fn: Callable[[np.ndarray], np.ndarray]


def assemble_mass(grid: SpaceGrid1D) -> TriDiagMatrix:
    h = grid.h
    return TriDiagMatrix(diag=np.full(grid.N, 4.0 * h / 6.0), off=np.full(grid.N - 1, h / 6.0))


def assemble_stiffness(grid: SpaceGrid1D) -> TriDiagMatrix:
    h = grid.h
    return TriDiagMatrix(diag=np.full(grid.N, 2.0 / h), off=np.full(grid.N - 1, -1.0 / h))


def _load_power(p: float, grid: SpaceGrid1D) -> np.ndarray:
    """Exact hat-function moments of x^p: int x^p phi_i dx, all interior i."""
    h = grid.h
    x = np.arange(grid.M + 1) * h
    a, m, b = x[:-2], x[1:-1], x[2:]
    # rising part on [a, m]: (x - a)/h;  falling part on [m, b]: (b - x)/h
    d2_left = powdiff(a, m, p + 2.0)
    d1_left = powdiff(a, m, p + 1.0)
    d2_right = powdiff(m, b, p + 2.0)
    d1_right = powdiff(m, b, p + 1.0)
    left = d2_left / (p + 2.0) - a * d1_left / (p + 1.0)
    right = b * d1_right / (p + 1.0) - d2_right / (p + 2.0)
    return (left + right) / h


def _load_smooth(fn, grid: SpaceGrid1D, npts: int = 5) -> np.ndarray:
    h = grid.h
    xg, wg = gauss_legendre(npts)
    edges = np.arange(grid.M) * h
    nodes = edges[:, None] + 0.5 * h * (xg[None, :] + 1.0)  # (M, npts)
    wts = 0.5 * h * wg[None, :]
    vals = fn(nodes) * wts
    # element e carries the rising half of the hat at its right node and the
    # falling half of the hat at its left node
    rise = (vals * (nodes - edges[:, None]) / h).sum(axis=1)
    fall = (vals * (edges[:, None] + h - nodes) / h).sum(axis=1)
    return rise[:-1] + fall[1:]


def load_vector(spec, grid: SpaceGrid1D) -> np.ndarray:
    """Vector of pairings of the data with the interior hat functions."""
    if isinstance(spec, PowerSingular):
        return _load_power(spec.p, grid)
    if isinstance(spec, Smooth):
        return _load_smooth(spec.fn, grid)
    arr = np.asarray(spec, dtype=float)
    if arr.shape != (grid.N,):
        raise ValueError("nodal data must match the interior node count")
    return assemble_mass(grid).matvec(arr)


def l2_project(spec, grid: SpaceGrid1D) -> FemFunction:
    """L2-orthogonal projection onto the FEM space (mass solve with the
    data's load vector)."""
    mass = assemble_mass(grid)
    return solve_spd_tridiag(mass, load_vector(spec, grid))


def solve_spd_tridiag(T: TriDiagMatrix, rhs: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Direct solve of an SPD tridiagonal system, with a residual guard."""
    x = T.factor().solve(np.asarray(rhs, dtype=float))
    r = np.linalg.norm(T.matvec(x) - rhs)
    if r > tol * max(np.linalg.norm(rhs), 1e-300):
        raise ArithmeticError(f"tridiagonal solve residual {r:.2e} above tolerance")
    return x


def discrete_eigenpairs(grid: SpaceGrid1D):
    """Full generalized eigen-decomposition A phi = lambda M phi.

    Returns (lam, vecs) with lam ascending and the columns of vecs
    orthonormal in the mass inner product.  On the uniform grid the
    eigenvalues must match closed_form_eigenvalues, which serves as the
    independent check.
    """
    A = assemble_stiffness(grid).dense()
    M = assemble_mass(grid).dense()
    lam, vecs = eigh(A, M)
    return lam, vecs


def closed_form_eigenvalues(grid: SpaceGrid1D) -> np.ndarray:
    """(6/h^2) (1 - cos(n pi h)) / (2 + cos(n pi h)), n = 1..N."""
    h = grid.h
    c = np.cos(np.arange(1, grid.M) * np.pi * h)
    return 6.0 / h**2 * (1.0 - c) / (2.0 + c)


def l2_norm(v: FemFunction, Mmat: TriDiagMatrix) -> float:
    v = np.asarray(v)
    if v.shape != (Mmat.n,):
        raise ValueError("size mismatch between vector and mass matrix")
    return float(np.sqrt(v @ Mmat.matvec(v)))
