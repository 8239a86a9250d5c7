"""Convolution weights of the piecewise-constant time stepping scheme.

The memory term of the scheme is driven by the sequence

    b_j = j^(1+alpha) / Gamma(2+alpha),   j = 0, 1, 2, ...

and by the second differences w_i = b_{i+1} - 2 b_i + b_{i-1}, which act as
the discrete convolution kernel.  Both are precomputed once per run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["gamma_fn", "check_frac_order", "conv_weights", "ConvolutionWeights"]

# padded term count for the even binomial series used to evaluate the second
# differences without cancellation; converges like 4^-m for i >= 2
_BINOM_TERMS = 44


def gamma_fn(x: float) -> float:
    """Gamma function on the positive half line.

    Raises ValueError for x <= 0 (poles and the reflection region are not
    needed anywhere in this package).
    """
    if not x > 0.0:
        raise ValueError(f"gamma_fn requires x > 0, got {x!r}")
    return math.gamma(x)


def check_frac_order(alpha: float) -> float:
    """Validate the fractional order 0 < alpha < 1 and return it as float."""
    alpha = float(alpha)
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"fractional order must satisfy 0 < alpha < 1, got {alpha!r}")
    return alpha


@dataclass(frozen=True)
class ConvolutionWeights:
    """Kernel weights b_0..b_K and their second differences w_1..w_{K-1}.

    Invariants (checked on construction): b_0 = 0 and b strictly increasing;
    w positive and strictly decreasing; the telescoped sum
    b_1 + w_1 + ... + w_k equals b_{k+1} - b_k up to rounding.
    """

    alpha: float
    b: np.ndarray  # shape (K+1,), b[j] = j^(1+alpha)/Gamma(2+alpha)
    w: np.ndarray  # shape (K,),   w[i] = w_i for i >= 1; w[0] unused (= 0)

    def __post_init__(self):
        if self.b[0] != 0.0:
            raise ValueError("b_0 must be exactly zero")
        if not np.all(np.diff(self.b) > 0.0):
            raise ValueError("b_j must be strictly increasing")
        inner = self.w[1:]
        if inner.size and (not np.all(inner > 0.0) or not np.all(np.diff(inner) < 0.0)):
            raise ValueError("w_i must be positive and strictly decreasing")
        self.b.setflags(write=False)
        self.w.setflags(write=False)

    @property
    def K(self) -> int:
        return len(self.b) - 1


def _even_binomial_coeffs(c: float, terms: int) -> np.ndarray:
    """Coefficients 2*C(c, 2m), m = 1..terms, of (1+x)^c + (1-x)^c - 2.

    For c in (1, 2) every even-order binomial coefficient is positive, so the
    series evaluation below is cancellation free.
    """
    out = np.empty(terms)
    coeff = 1.0
    n = 0
    for m in range(1, terms + 1):
        while n < 2 * m:
            coeff *= (c - n) / (n + 1)
            n += 1
        out[m - 1] = 2.0 * coeff
    return out


def conv_weights(alpha: float, K: int) -> ConvolutionWeights:
    """Build b_0..b_K and w_1..w_{K-1} for the given fractional order.

    The naive second difference of b loses ~2*log10(i) digits to cancellation,
    which would spoil the telescoping identity for large K; instead w_i is
    evaluated as b_i * ((1+1/i)^c + (1-1/i)^c - 2) through the even part of
    the binomial series, accurate to a few ulp uniformly in i.
    """
    alpha = check_frac_order(alpha)
    K = int(K)
    if K < 2:
        raise ValueError(f"need K >= 2, got {K}")
    c = 1.0 + alpha
    g = gamma_fn(2.0 + alpha)

    j = np.arange(K + 1, dtype=float)
    b = j**c / g

    w = np.zeros(K)
    w[1] = (2.0**c - 2.0) / g  # i = 1 directly: b_2 - 2 b_1 + b_0
    if K > 2:
        i = np.arange(2, K, dtype=float)
        x2 = (1.0 / i) ** 2
        coeffs = _even_binomial_coeffs(c, _BINOM_TERMS)
        bracket = np.zeros_like(x2)
        term = x2.copy()
        for cm in coeffs:
            bracket += cm * term
            term *= x2
        w[2:] = b[2:K] * bracket

    return ConvolutionWeights(alpha=alpha, b=b, w=w)
