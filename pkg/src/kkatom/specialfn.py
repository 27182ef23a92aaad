"""Associated Laguerre polynomials and hydrogen radial functions.

All lengths are in Bohr radii a, so the exact ground state radial
function is R_10(r) = 2 exp(-r) and the R_nl are orthonormal under
the measure r^2 dr.
"""

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class RadialIndex:
    """Quantum numbers (n, l) of a hydrogen bound state, n >= l+1."""

    n: int
    l: int = 0

    def __post_init__(self):
        if self.l < 0:
            raise ValueError(f"l must be >= 0, got {self.l}")
        if self.n < self.l + 1:
            raise ValueError(f"need n >= l+1, got n={self.n}, l={self.l}")


def log_factorial(n):
    """ln(n!) for integer n >= 0."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return math.lgamma(n + 1.0)


def binomial_real(n, k):
    """Binomial coefficient C(n, k) as a float (exact integer arithmetic)."""
    if k < 0 or k > n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    return float(math.comb(n, k))


def laguerre(n, alpha, x):
    """Associated Laguerre polynomial L_n^(alpha)(x).

    Evaluated by the ascending three-term recurrence, which is stable
    for x >= 0 (the defining alternating sum cancels badly at large x).
    Accepts scalar or ndarray x.
    """
    if n < 0:
        raise ValueError(f"degree must be >= 0, got {n}")
    one = np.ones_like(np.asarray(x, dtype=float)) if isinstance(x, np.ndarray) else 1.0
    if n == 0:
        return one
    lkm1 = one
    lk = 1.0 + alpha - x
    for k in range(1, n):
        lkm1, lk = lk, ((2 * k + 1 + alpha - x) * lk - (k + alpha) * lkm1) / (k + 1.0)
    return lk


def hydrogen_radial(idx, r):
    """Hydrogen radial function R_nl(r), orthonormal: int r^2 R_nl R_n'l dr = delta.

    R_nl = (2/n^2) sqrt((n-l-1)!/(n+l)!) (2r/n)^l e^(-r/n) L_{n-l-1}^{2l+1}(2r/n).
    Factorial ratio taken in log space so n up to ~50 stays finite.
    Accepts scalar or ndarray r (in units of a; result in a^{-3/2}).
    """
    n, l = idx.n, idx.l
    norm = (2.0 / n**2) * math.exp(0.5 * (log_factorial(n - l - 1) - log_factorial(n + l)))
    x = 2.0 * np.asarray(r, dtype=float) / n if isinstance(r, np.ndarray) else 2.0 * r / n
    val = norm * x**l * np.exp(-x / 2.0) * laguerre(n - l - 1, 2 * l + 1, x)
    return val
