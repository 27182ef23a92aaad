"""Standard and generalized real-symmetric eigenproblems.

The generalized problem H v = lambda S v is reduced with a Cholesky
factorization S = L L^T to the standard problem (L^-1 H L^-T) u = lambda u
and back-transformed v = L^-T u, which leaves the eigenvectors
S-orthonormal.  The Cholesky is done here (row by row) so a failure can
report the offending pivot; the symmetric kernel is LAPACK's eigh.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solve_triangular


class NotPositiveDefiniteError(ValueError):
    """Overlap matrix is not positive definite; carries the failing pivot index."""

    def __init__(self, pivot, value):
        super().__init__(f"Cholesky pivot {pivot} is non-positive ({value:.6g}); "
                         "overlap matrix is not positive definite")
        self.pivot = pivot


@dataclass
class Spectrum:
    """Ascending eigenvalues with metric-orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    metric: str  # "identity" or "overlap"
    warnings: list = field(default_factory=list)


def _check_symmetric(A, name):
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"{name} must be a square matrix, got shape {A.shape}")
    scale = max(1.0, np.abs(A).max())
    if np.abs(A - A.T).max() > 1e-12 * scale:
        raise ValueError(f"{name} is not symmetric")
    return A


def cholesky_lower(S):
    """Lower Cholesky factor of a symmetric positive definite matrix.

    Raises NotPositiveDefiniteError with the failing pivot index when a
    diagonal pivot comes out non-positive (or non-finite).
    """
    A = _check_symmetric(S, "S")
    n = A.shape[0]
    L = np.zeros_like(A)
    for j in range(n):
        d = A[j, j] - L[j, :j] @ L[j, :j]
        if not (d > 0.0) or not math.isfinite(d):
            raise NotPositiveDefiniteError(j, d)
        L[j, j] = math.sqrt(d)
        if j + 1 < n:
            L[j + 1:, j] = (A[j + 1:, j] - L[j + 1:, :j] @ L[j, :j]) / L[j, j]
    return L


def eig_symmetric(H):
    """Full spectral decomposition of a real symmetric matrix, ascending order."""
    H = _check_symmetric(H, "H")
    w, v = np.linalg.eigh(H)
    return Spectrum(eigenvalues=w, eigenvectors=v, metric="identity")


def eig_generalized(H, S):
    """Solve H v = lambda S v for symmetric H and positive definite S.

    Eigenvectors are S-orthonormal. A near-singular overlap (condition
    estimate from the Cholesky diagonal above 1e12) attaches a warning
    to the returned Spectrum instead of failing.
    """
    H = _check_symmetric(H, "H")
    L = cholesky_lower(S)
    warnings = []
    dl = np.diag(L)
    cond_est = (dl.max() / dl.min()) ** 2
    if cond_est > 1e12:
        warnings.append(f"overlap matrix near singular: condition estimate {cond_est:.3e}")
    Y = solve_triangular(L, H, lower=True)
    C = solve_triangular(L, Y.T, lower=True)
    C = 0.5 * (C + C.T)
    w, u = np.linalg.eigh(C)
    V = solve_triangular(L.T, u, lower=False)
    return Spectrum(eigenvalues=w, eigenvectors=V, metric="overlap", warnings=warnings)


def overlap_condition(S):
    """2-norm condition number of S as the ratio of its extreme eigenvalues."""
    S = _check_symmetric(S, "S")
    w = np.linalg.eigvalsh(S)
    if w.min() <= 0.0:
        return math.inf
    return float(w.max() / w.min())
