"""Two-parameter Mittag-Leffler function E_{beta,gamma}.

Three regimes, chosen by argument size:

* power series  sum_n z^n / Gamma(n*beta + gamma)          for |z| <= 5;
* Laplace-inversion quadrature on a two-ray contour         for moderate |z|;
* pole residues plus the optimally truncated algebraic
  series  -sum_k z^(-k)/Gamma(gamma - beta*k)               for large real z < 0.

The inversion writes E as the Bromwich integral of s^(beta-gamma)/(s^beta - z)
at unit time and deforms onto rays re^(+-i*theta); roots of s^beta = z that
the deformation crosses contribute residues s0^(1-gamma) e^(s0) / beta.  The
same residues carry the oscillatory part e^(|z|^(1/beta) cos(pi/beta)) in the
large-argument branch, which the algebraic series alone cannot resolve until
|z|^(1/beta) >> 1; the switch point grows accordingly with beta.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import rgamma

from .numutil import geometric_edges, panel_rule, refine_edges

__all__ = ["mittag_leffler", "ml_asymptotic_threshold"]

_SERIES_RADIUS = 5.0


def ml_asymptotic_threshold(beta: float) -> float:
    """Smallest |z| at which the algebraic tail floor exp(-|z|^(1/beta))
    drops below ~1e-14, but never below 50."""
    return max(50.0, 32.2**beta)


def _ml_series(beta, gamma_p, z, tol):
    s = complex(rgamma(gamma_p))
    zn = 1.0 + 0.0j
    maxterm = abs(s)
    for n in range(1, 600):
        zn *= z
        t = zn * rgamma(n * beta + gamma_p)
        s += t
        at = abs(t)
        maxterm = max(maxterm, at)
        if at < 1e-17 * max(1.0, abs(s)) and n * beta + gamma_p > 2.0:
            break
    # cancellation guard: fall through to quadrature when the alternating
    # series has eaten more digits than the target tolerance allows
    if maxterm * 1e-16 > tol * max(abs(s), 1e-300):
        return None
    return s


def _principal_roots(beta, z):
    """Roots of s^beta = z on the principal sheet |arg s| <= pi (angles, values)."""
    r = abs(z) ** (1.0 / beta)
    phi = np.angle(z)
    roots = []
    m = int(np.floor((beta * np.pi - phi) / (2.0 * np.pi))) + 1
    for mm in range(-m - 1, m + 2):
        a = (phi + 2.0 * np.pi * mm) / beta
        if abs(a) <= np.pi:
            roots.append((a, r * np.exp(1j * a)))
    return roots


def _residue(beta, gamma_p, s0):
    return s0 ** (1.0 - gamma_p) * np.exp(s0) / beta


def _ml_asymptotic(beta, gamma_p, x):
    """Large negative real argument: z = -x, x >= ml_asymptotic_threshold."""
    z = -x
    total = 0.0 + 0.0j
    for a, s0 in _principal_roots(beta, z):
        if abs(a) < np.pi - 1e-9:  # roots on the cut cancel against it
            total += _residue(beta, gamma_p, s0)
    # algebraic part, truncated at the smallest term
    acc = 0.0
    prev = math.inf
    zk = 1.0
    with np.errstate(invalid="ignore", over="ignore"):
        for k in range(1, 300):
            zk /= z
            if zk == 0.0:
                break
            t = -zk * rgamma(gamma_p - beta * k)
            if not math.isfinite(t) or abs(t) > prev:
                break
            acc += t
            prev = abs(t) if t != 0.0 else prev
    return float((total + acc).real)


def _pick_ray_angle(pole_angles):
    """Largest ray angle staying >= 0.2 away from every pole angle; strong
    decay (cos close to -1) keeps the ray integral short and well damped."""
    cands = np.linspace(np.pi / 2.0 + 0.1, np.pi - 0.1, 181)
    if not pole_angles:
        return np.pi - 0.1
    pa = np.abs(np.asarray(pole_angles))
    dist = np.min(np.abs(cands[:, None] - pa[None, :]), axis=1)
    ok = dist >= 0.2
    if np.any(ok):
        return float(np.max(cands[ok]))
    return float(cands[np.argmax(dist)])


def _ml_quadrature(beta, gamma_p, z, tol):
    # keep the ray integrand integrable at the origin: s^(beta-gamma)
    while gamma_p >= beta + 1.0:
        inner = mittag_leffler(beta, gamma_p - beta, z, tol=tol)
        return (inner - rgamma(gamma_p - beta)) / z
    roots = _principal_roots(beta, z)
    theta = _pick_ray_angle([a for a, _ in roots])
    total = 0.0 + 0.0j
    for a, s0 in roots:
        if abs(a) < theta:
            total += _residue(beta, gamma_p, s0)

    p = beta - gamma_p + 1.0  # local exponent of the integrand head, > 0
    r_lo = (0.25 * tol * max(abs(z), 1.0) * p) ** (1.0 / p)
    r_hi = (math.log(1.0 / tol) + 10.0) / abs(math.cos(theta))
    cap = 4.0 / max(math.sin(theta), 1e-2)  # keep e^(i r sin) resolved per panel
    edges = geometric_edges(min(r_lo, 1e-3), r_hi, 2.0, cap)
    edges = refine_edges(edges, abs(z) ** (1.0 / beta))  # poles sit at this radius
    nodes, wts = panel_rule(edges, 16)

    def ray(sign):
        s = nodes * np.exp(sign * 1j * theta)
        g = np.exp(s) * s ** (beta - gamma_p) / (s**beta - z)
        return np.sum(wts * g * np.exp(sign * 1j * theta))

    up = ray(+1.0)
    if abs(z.imag) == 0.0:
        val = total + up.imag / np.pi  # conjugate-symmetric integrand
        return float(val.real) if abs(val.imag) < 1e-8 * max(1.0, abs(val)) else complex(val)
    return complex(total + (up - ray(-1.0)) / (2j * np.pi))


def mittag_leffler(beta: float, gamma_p: float, z, tol: float = 1e-13):
    """Evaluate E_{beta,gamma}(z) = sum_{n>=0} z^n / Gamma(n*beta + gamma).

    Parameters must satisfy beta > 0, gamma_p > 0.  Returns a float for real
    results (real z <= 0, or negligible imaginary part), otherwise complex.
    """
    if not beta > 0.0 or not gamma_p > 0.0:
        raise ValueError("mittag_leffler requires beta > 0 and gamma > 0")
    z = complex(z)
    if z == 0.0:
        return float(rgamma(gamma_p))
    if abs(z) <= _SERIES_RADIUS:
        s = _ml_series(beta, gamma_p, z, tol)
        if s is not None:
            return float(s.real) if z.imag == 0.0 else s
    if z.imag == 0.0 and z.real <= -ml_asymptotic_threshold(beta):
        return _ml_asymptotic(beta, gamma_p, -z.real)
    return _ml_quadrature(beta, gamma_p, z, tol)
