"""Generating function of the convolution weights.

For Re z > 0 the weights' discrete Laplace transform sums to

    psi(z) = (e^z - 1)/Gamma(2+alpha) * sum_{k>=1} k^(1+alpha) e^(-k z),

and on the strip |Im z| < 2*pi (cut along the negative real axis) the same
function has the bilateral representation

    psi(z) = (e^z - 1) * sum_{k in Z} (z + 2*pi*i*k)^(-2-alpha),

which converges everywhere off the cut, in particular on the imaginary axis
where the discrete resolvent 1/(1 + mu*psi) is probed.  The bilateral series
decays only like |k|^(-2-alpha), so the tail beyond |k| = K is replaced by
its Euler-Maclaurin closed form instead of being truncated.

Near the origin psi(z) ~ z^(-1-alpha); the scan helpers below measure the
empirical constants in the lower bounds for |1 + mu*psi(i y)| and in the
derivative bound for 1/(1 + mu*psi(i y)) that the time-stepping analysis
rests on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .weights import check_frac_order, gamma_fn

__all__ = [
    "psi_eval",
    "admissible_theta",
    "psi_growth_scan",
    "one_plus_mu_psi_scan",
    "g_prime_scan",
]

_TWO_PI = 2.0 * np.pi
_K_BILATERAL = 64


def admissible_theta(alpha: float) -> float:
    """Ray angle for the integration contour, strictly inside the window
    (pi/2, (alpha+3)/(4*alpha+4)*pi) where the discrete resolvent stays
    zero free."""
    alpha = check_frac_order(alpha)
    upper = (alpha + 3.0) / (4.0 * alpha + 4.0) * np.pi
    return min(0.75 * np.pi, 0.5 * (0.5 * np.pi + upper))


def _check_domain(z: np.ndarray):
    if np.any(np.abs(z.imag) >= _TWO_PI):
        raise ValueError("psi is only evaluated on the strip |Im z| < 2*pi")
    on_cut = (z.imag == 0.0) & (z.real <= 0.0)
    if np.any(on_cut):
        raise ValueError("psi has a branch cut along (-inf, 0]")


def _psi_exp_series(z: np.ndarray, alpha: float) -> np.ndarray:
    """Exponential-series branch; geometric convergence for Re z bounded away
    from zero (used for Re z >= 1, still accurate down to about 0.4)."""
    min_re = float(np.min(z.real))
    if min_re <= 0.0:
        raise ValueError("exponential series needs Re z > 0")
    kmax = int(60.0 / min(min_re, 1.0)) + 40
    k = np.arange(1.0, kmax + 1.0)
    s = np.exp(-np.multiply.outer(z, k)) @ (k ** (1.0 + alpha))
    return np.expm1(z) * s / gamma_fn(2.0 + alpha)


def _em_tail(z: np.ndarray, w: complex, x0: float, q: float) -> np.ndarray:
    """sum_{k>=x0} (z + w*k)^(-q) by Euler-Maclaurin through the f''' term."""
    u = z + w * x0
    integral = u ** (1.0 - q) / ((q - 1.0) * w)
    f0 = u ** (-q)
    f1 = -q * w * u ** (-q - 1.0)
    f3 = -q * (q + 1.0) * (q + 2.0) * w**3 * u ** (-q - 3.0)
    return integral + f0 / 2.0 - f1 / 12.0 + f3 / 720.0


def _psi_bilateral(z: np.ndarray, alpha: float) -> np.ndarray:
    q = 2.0 + alpha
    k = np.arange(-_K_BILATERAL, _K_BILATERAL + 1.0)
    core = np.sum((z[..., None] + 1j * _TWO_PI * k) ** (-q), axis=-1)
    x0 = float(_K_BILATERAL + 1)
    tail = _em_tail(z, 1j * _TWO_PI, x0, q) + _em_tail(z, -1j * _TWO_PI, x0, q)
    return np.expm1(z) * (core + tail)


def psi_eval(z, alpha: float):
    """Evaluate psi on the strip |Im z| < 2*pi off the cut (-inf, 0].

    Accepts a complex scalar or array.  The exponential series is used for
    Re z >= 1 and the tail-corrected bilateral series elsewhere; the two
    agree to ~1e-12 on their overlap.
    """
    alpha = check_frac_order(alpha)
    zz = np.atleast_1d(np.asarray(z, dtype=complex))
    _check_domain(zz)
    out = np.empty_like(zz)
    m = zz.real >= 1.0
    if np.any(m):
        out[m] = _psi_exp_series(zz[m], alpha)
    if np.any(~m):
        out[~m] = _psi_bilateral(zz[~m], alpha)
    if np.isscalar(z) or np.asarray(z).shape == ():
        return complex(out[0])
    return out.reshape(np.asarray(z).shape)


# ---------------------------------------------------------------------------
# empirical scans backing the resolvent bounds


def _default_mus():
    return np.logspace(-3.0, 3.0, 25)


@dataclass(frozen=True)
class ScanReport:
    alpha: float
    quantity: str
    value: float  # empirical min (growth/zero-freeness) or max (derivative constant)
    argmin: complex


def psi_growth_scan(alpha, mus=None, ny: int = 200) -> ScanReport:
    """Empirical lower constant in |1 + mu*psi(iy)| >= c*(1 + mu*y^(-1-alpha)).

    Scans y in (0, pi] and the requested mu grid; returns the minimum of the
    ratio, which the analysis asserts is strictly positive.
    """
    alpha = check_frac_order(alpha)
    mus = _default_mus() if mus is None else np.asarray(mus, dtype=float)
    y = np.linspace(np.pi / ny, np.pi, ny)
    p = psi_eval(1j * y, alpha)
    ratio = np.abs(1.0 + mus[:, None] * p[None, :]) / (
        1.0 + mus[:, None] * y[None, :] ** (-1.0 - alpha)
    )
    i, j = np.unravel_index(np.argmin(ratio), ratio.shape)
    return ScanReport(alpha, "min |1+mu*psi(iy)| / (1+mu*y^(-1-a))", float(ratio[i, j]), complex(1j * y[j]))


def one_plus_mu_psi_scan(alpha, mus=None, delta: float = 0.05) -> ScanReport:
    """Minimum of |1 + mu*psi(z)| over the zero-freeness region.

    The region is the union of a thin strip 0 < Re z <= delta, |Im z| <= pi,
    and the sector pi/2 <= Arg z <= theta_alpha with |Im z| <= pi.  By the
    conjugation symmetry psi(conj z) = conj psi(z) the lower half plane needs
    no separate scan.
    """
    alpha = check_frac_order(alpha)
    mus = _default_mus() if mus is None else np.asarray(mus, dtype=float)
    theta = admissible_theta(alpha)

    re = np.linspace(delta / 20.0, delta, 20)
    im = np.linspace(-np.pi, np.pi, 81)
    strip = (re[:, None] + 1j * im[None, :]).ravel()
    strip = strip[strip.imag != 0.0]  # keep off the real axis; Re>0 is fine but cheap to skip 0

    phis = np.linspace(np.pi / 2.0, theta, 25)
    rads = np.geomspace(1e-6, 1.0, 40)
    sector = (rads[:, None] * (np.pi / np.sin(phis))[None, :] * np.exp(1j * phis)[None, :]).ravel()

    zs = np.concatenate([strip, sector])
    p = psi_eval(zs, alpha)
    vals = np.abs(1.0 + mus[:, None] * p[None, :])
    i, j = np.unravel_index(np.argmin(vals), vals.shape)
    return ScanReport(alpha, "min |1+mu*psi(z)| on zero-freeness region", float(vals[i, j]), complex(zs[j]))


def g_prime_scan(alpha, mus=None, ny: int = 200) -> ScanReport:
    """Empirical constant C in |g'(y)| <= C * mu*y^(-2-alpha)/(1+mu*y^(-1-alpha))^2
    for g(y) = 1/(1 + mu*psi(iy)), estimated by central differences."""
    alpha = check_frac_order(alpha)
    mus = _default_mus() if mus is None else np.asarray(mus, dtype=float)
    y = np.linspace(np.pi / ny, np.pi, ny)
    h = 1e-6 * y
    pp = psi_eval(1j * (y + h), alpha)
    pm = psi_eval(1j * (y - h), alpha)
    worst = -np.inf
    argworst = 0.0
    for mu in mus:
        gp = np.abs((1.0 / (1.0 + mu * pp) - 1.0 / (1.0 + mu * pm)) / (2.0 * h))
        bound = mu * y ** (-2.0 - alpha) / (1.0 + mu * y ** (-1.0 - alpha)) ** 2
        c = gp / bound
        j = int(np.argmax(c))
        if c[j] > worst:
            worst = float(c[j])
            argworst = complex(1j * y[j])
    return ScanReport(alpha, "max |g'(y)| / (mu*y^(-2-a)/(1+mu*y^(-1-a))^2)", worst, argworst)
