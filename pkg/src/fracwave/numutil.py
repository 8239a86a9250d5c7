"""Small shared numerics: Gauss panels, geometric grading, stable power differences."""

from __future__ import annotations

from functools import lru_cache

import numpy as np

__all__ = ["gauss_legendre", "geometric_edges", "panel_rule", "powdiff"]


@lru_cache(maxsize=None)
def gauss_legendre(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def geometric_edges(lo: float, hi: float, ratio: float = 2.0, max_width: float = np.inf) -> np.ndarray:
    """Panel edges lo = e_0 < e_1 < ... < e_m = hi, graded geometrically
    toward lo with e_{i+1}/e_i <= ratio, and panel width capped by max_width
    (so an oscillatory factor of known period stays resolved per panel)."""
    if not 0.0 < lo < hi:
        raise ValueError("need 0 < lo < hi")
    edges = [lo]
    r = lo
    while r < hi:
        r = min(r * ratio, r + max_width, hi)
        edges.append(r)
    out = np.array(edges)
    out[-1] = hi
    return out


def panel_rule(edges: np.ndarray, n: int = 16):
    """Composite Gauss-Legendre nodes/weights on the given panel edges."""
    x, w = gauss_legendre(n)
    a = edges[:-1][:, None]
    b = edges[1:][:, None]
    nodes = 0.5 * (a + b) + 0.5 * (b - a) * x[None, :]
    weights = 0.5 * (b - a) * w[None, :]
    return nodes.ravel(), weights.ravel()


def refine_edges(edges: np.ndarray, centers, span: float = 3.0, ratio: float = 1.1) -> np.ndarray:
    """Insert finer panel edges around each center radius (where an integrand
    has a sharp feature, e.g. a nearby pole of the resolvent factor)."""
    lo, hi = edges[0], edges[-1]
    extra = []
    for c in np.atleast_1d(centers):
        if c <= 0.0:
            continue
        n = int(np.ceil(2.0 * np.log(span) / np.log(ratio)))
        loc = c * ratio ** np.arange(-n // 2, n // 2 + 1)
        extra.append(loc[(loc > lo) & (loc < hi)])
    if not extra:
        return edges
    out = np.unique(np.concatenate([edges, *extra]))
    return out


def powdiff(a, b, q):
    """b**q - a**q for 0 <= a <= b without cancellation.

    Written as a**q * expm1(q*log1p((b-a)/a)); falls back to the direct form
    where a is zero (or the ratio is large enough that nothing cancels).
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    out = np.empty(np.broadcast(a, b).shape)
    az, bz = np.broadcast_arrays(a, b)
    small = az > 0.5 * bz  # cancellation regime
    direct = ~small
    out[direct] = bz[direct] ** q - az[direct] ** q
    if np.any(small):
        aa = az[small]
        bb = bz[small]
        out[small] = aa**q * np.expm1(q * np.log1p((bb - aa) / aa))
    return out if out.shape else float(out)
