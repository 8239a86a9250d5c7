"""Validation suites: scan-grid checks of the resolvent bounds, oracle
equivalences between the recurrence / contour / series routes, FEM unit
identities, the fractional integration-by-parts identity, and the a-priori
stability bound on solver runs.

Each suite returns a ValidationResult whose `lines` hold one human-readable
record per check (empirical constants included); `ok` is the conjunction of
all checks.  The CLI maps a failed suite to exit code 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .contour import contour_Yk_forced, contour_Yk_hom, contour_xi_hom
from .dg_solver import ForcingSpec, SolverConfig, run, stability_bound
from .fem1d import (
    PowerSingular,
    SpaceGrid1D,
    assemble_mass,
    assemble_stiffness,
    closed_form_eigenvalues,
    discrete_eigenpairs,
    l2_project,
    solve_spd_tridiag,
)
from .mittag import mittag_leffler
from .psi import g_prime_scan, one_plus_mu_psi_scan, psi_growth_scan
from .rlint import rl_integral_pc_left, rl_integral_pc_right
from .scalar_ode import ScalarProblem, step_forced, step_hom, verify_jump_decay
from .timegrid import TimeGrid
from .problems import experiment_data

__all__ = ["ValidationResult", "validate_lemmas", "SUITES"]

SUITES = ("psi", "ode", "fem", "adjoint", "stability")

_ALPHAS = (0.2, 0.5, 0.8)


@dataclass
class ValidationResult:
    suite: str
    ok: bool = True
    lines: list = field(default_factory=list)

    def check(self, passed: bool, line: str):
        self.ok = self.ok and bool(passed)
        self.lines.append(("PASS " if passed else "FAIL ") + line)


def _validate_psi(res: ValidationResult):
    for alpha in _ALPHAS:
        g = psi_growth_scan(alpha)
        res.check(g.value > 0.0, f"alpha={alpha}: {g.quantity} = {g.value:.4f} at {g.argmin:.4f}")
        z = one_plus_mu_psi_scan(alpha)
        res.check(z.value > 0.0, f"alpha={alpha}: {z.quantity} = {z.value:.4e} at {z.argmin:.4f}")
        d = g_prime_scan(alpha)
        res.check(np.isfinite(d.value), f"alpha={alpha}: {d.quantity} = {d.value:.4f} at {d.argmin:.4f}")


def _validate_ode(res: ValidationResult):
    for alpha in _ALPHAS:
        for mu in (0.0, 1e-2, 1.0, 1e2):
            p = ScalarProblem.from_mu(alpha, mu)
            hom = step_hom(p, 128)
            forc = step_forced(p, 128)
            if mu == 0.0:
                res.check(np.max(np.abs(hom.y - 1.0)) == 0.0, f"alpha={alpha} mu=0: decaying mode stays exactly at xi0")
                res.check(np.max(np.abs(forc.y - np.arange(129.0))) < 1e-12, f"alpha={alpha} mu=0: forced mode is exactly k*tau")
                continue
            worst_h = max(abs(contour_Yk_hom(mu, alpha, k, 1.0) - hom.y[k]) for k in (1, 2, 10, 100))
            worst_f = max(abs(contour_Yk_forced(mu, alpha, k, 1.0) - forc.y[k]) for k in (1, 2, 10, 100))
            res.check(worst_h < 1e-9, f"alpha={alpha} mu={mu:g}: contour vs recurrence (decaying) {worst_h:.2e}")
            res.check(worst_f < 1e-9, f"alpha={alpha} mu={mu:g}: contour vs recurrence (forced) {worst_f:.2e}")
            res.check(np.max(np.abs(hom.y)) <= abs(p.xi0) + 1e-14, f"alpha={alpha} mu={mu:g}: |Y_k| <= |xi0|")
            jr = verify_jump_decay(p, 1024)
            res.check(np.isfinite(jr.constant), f"alpha={alpha} mu={mu:g}: sup k|jump| = {jr.constant:.4f} at k={jr.at_k}")
        # contour route for the exact mode vs the series route
        worst = 0.0
        for lam in (1.0, np.pi**2):
            for t in (0.05, 0.5, 1.0):
                a = contour_xi_hom(lam, alpha, t, 1.0)
                b = mittag_leffler(1.0 + alpha, 1.0, -lam * t ** (1.0 + alpha))
                worst = max(worst, abs(a - b))
        res.check(worst < 1e-9, f"alpha={alpha}: contour vs Mittag-Leffler series {worst:.2e}")


def _validate_fem(res: ValidationResult):
    for M in (2, 16, 64, 256):
        grid = SpaceGrid1D(M)
        lam, vecs = discrete_eigenpairs(grid)
        cf = closed_form_eigenvalues(grid)
        rel = np.max(np.abs(lam - cf) / cf)
        res.check(rel < 1e-10, f"M={M}: eigenvalues vs closed form, rel {rel:.2e}")
        Mm = assemble_mass(grid)
        G = vecs.T @ Mm.dense() @ vecs
        orth = np.max(np.abs(G - np.eye(grid.N)))
        res.check(orth < 1e-12, f"M={M}: eigenvector mass-orthonormality {orth:.2e}")
    grid = SpaceGrid1D(64)
    rng = np.random.default_rng(7)
    v = rng.standard_normal(grid.N)
    pv = l2_project(v, grid)
    res.check(np.max(np.abs(pv - v)) < 1e-12, "projection of a FEM function is the identity")
    x = solve_spd_tridiag(assemble_mass(grid), rng.standard_normal(grid.N))
    res.check(np.all(np.isfinite(x)), "SPD tridiagonal solve is finite")
    res.check(np.all(assemble_stiffness(grid).diag > 0.0), "stiffness diagonal positive")


def _validate_adjoint(res: ValidationResult):
    rng = np.random.default_rng(11)
    grid = TimeGrid(1.0, 16)
    for beta in (0.2, 0.5, 0.8, 1.0):
        worst = 0.0
        for _ in range(5):
            v = rng.standard_normal(grid.J)
            w = rng.standard_normal(grid.J)
            # both pairings by composite Gauss quadrature over each slab
            from .numutil import gauss_legendre

            xg, wg = gauss_legendre(20)
            tau = grid.tau
            lhs = rhs = 0.0
            for j in range(grid.J):
                ts = (j + 0.5 * (xg + 1.0)) * tau
                for t, wq in zip(ts, 0.5 * tau * wg):
                    lhs += wq * rl_integral_pc_left(v, grid, beta, t) * w[j]
                    rhs += wq * rl_integral_pc_right(w, grid, beta, t) * v[j]
            worst = max(worst, abs(lhs - rhs))
        res.check(worst < 1e-12, f"beta={beta}: <I_left v, w> = <v, I_right w> gap {worst:.2e}")


def _validate_stability(res: ValidationResult):
    for exp_id in (1, 2, 3, 4):
        for alpha in _ALPHAS:
            u0, f = experiment_data(exp_id, alpha)
            tr = run(u0, f, SpaceGrid1D(64), TimeGrid(1.0, 128), alpha, SolverConfig())
            bound = stability_bound(u0, f, tr.sgrid, tr.tgrid)
            got = tr.max_l2()
            res.check(got <= bound + 1e-10, f"exp{exp_id} alpha={alpha}: max|U| {got:.4f} <= sqrt(2)|u0|+2|f| {bound:.4f}")


def validate_lemmas(suite: str) -> ValidationResult:
    """Run one named suite: psi | ode | fem | adjoint | stability."""
    runners = {
        "psi": _validate_psi,
        "ode": _validate_ode,
        "fem": _validate_fem,
        "adjoint": _validate_adjoint,
        "stability": _validate_stability,
    }
    if suite not in runners:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    res = ValidationResult(suite=suite)
    runners[suite](res)
    return res
