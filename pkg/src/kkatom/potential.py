"""Point-charge potential on R^3 x S^1 in its three equivalent forms.

Units: lengths in Bohr radii a, energies in e^2/2a, so e^2 = 2 and the
3d Coulomb potential is -2/r.  The compactified potential of a charge at
(r, theta) = (0, 0) is the sum over periodic images

    V(r, theta) = -sum_n e4^2 / (r^2 + R^2 (theta - 2 pi n)^2),

with the 4d charge fixed by e4^2 = 2 R e^2 so that V -> -e^2/r at r >> R.
The same potential in closed form is

    V(r, theta) = -(e^2/r) sinh(r/R) / (cosh(r/R) - cos(theta)),

and its Fourier modes on S^1 are v_k(r) = -(e^2/r) exp(-|k| r/R).
"""

import math
from dataclasses import dataclass

import numpy as np

E2 = 2.0  # e^2 in units of e^2/2a per Bohr radius


@dataclass(frozen=True)
class ModelConfig:
    """Compactification radius R in Bohr radii; R > 0."""

    R: float

    def __post_init__(self):
        if not self.R > 0:
            raise ValueError(f"compactification radius must be > 0, got {self.R}")

    @property
    def e4_squared(self):
        """4d charge squared, e4^2 = 2 R e^2."""
        return 2.0 * self.R * E2


def normalize_angle(theta):
    """Map theta into (-pi, pi]."""
    t = np.asarray(theta, dtype=float)
    t = t - 2.0 * np.pi * np.round(t / (2.0 * np.pi))
    t = np.where(t <= -np.pi, t + 2.0 * np.pi, t)
    return float(t) if np.ndim(theta) == 0 else t


def potential_closed(r, theta, cfg):
    """Closed-form potential, valid everywhere except the source point.

    Evaluated as -(e^2/r) * (-expm1(-2x)) / (expm1(-x)^2 + 4 e^(-x) sin^2(theta/2))
    with x = r/R: each denominator term is nonnegative, so there is no
    cancellation near the circle r = 0 and no overflow at large r/R.
    Accepts scalar or ndarray r, theta.
    """
    scalar = np.ndim(r) == 0 and np.ndim(theta) == 0
    rr, th = np.broadcast_arrays(np.asarray(r, dtype=float), np.asarray(theta, dtype=float))
    shape = rr.shape
    rr = np.atleast_1d(rr).ravel()
    th = normalize_angle(np.atleast_1d(th).ravel())
    if np.any((rr == 0.0) & (th == 0.0)):
        raise ValueError("potential is singular at the source point (r, theta) = (0, 0)")
    x = rr / cfg.R
    sin2 = np.sin(th / 2.0) ** 2
    den = np.expm1(-x) ** 2 + 4.0 * np.exp(-x) * sin2
    out = np.empty_like(rr)
    pos = rr > 0.0
    out[pos] = -(E2 / rr[pos]) * (-np.expm1(-2.0 * x[pos])) / den[pos]
    # r = 0, theta != 0: analytic limit -e^2 / (2 R sin^2(theta/2))
    at0 = ~pos
    out[at0] = -E2 / (2.0 * cfg.R * sin2[at0])
    return float(out[0]) if scalar else out.reshape(shape)


def potential_image_sum(r, theta, cfg, n_max, tail=False):
    """Partial image sum over n in [-n_max, n_max].

    With tail=True the omitted images are accounted for by the midpoint
    integral int_{n_max+1/2}^inf dn of the image term (both signs of n),
    which certifies the result to O(n_max^-3) instead of O(n_max^-1).
    """
    th = normalize_angle(theta)
    if r == 0.0 and th == 0.0:
        raise ValueError("potential is singular at the source point (r, theta) = (0, 0)")
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    R = cfg.R
    e4sq = cfg.e4_squared
    n = np.arange(-n_max, n_max + 1)
    total = -e4sq * np.sum(1.0 / (r * r + R * R * (th - 2.0 * np.pi * n) ** 2))
    if tail:
        b = 2.0 * np.pi * (n_max + 0.5)
        if r > 0.0:
            total += -(e4sq / (2.0 * np.pi * R * r)) * (
                np.pi
                - math.atan(R * (b - th) / r)
                - math.atan(R * (b + th) / r)
            )
        else:
            total += -(e4sq / (2.0 * np.pi * R * R)) * (1.0 / (b - th) + 1.0 / (b + th))
    return float(total)


def fourier_coeff(k, r, cfg):
    """Fourier mode v_k(r) = -(e^2/r) exp(-|k| r/R) of the potential on S^1."""
    if np.any(np.asarray(r) <= 0.0):
        raise ValueError("Fourier coefficients require r > 0")
    return -(E2 / r) * np.exp(-abs(k) * np.asarray(r, dtype=float) / cfg.R)


def potential_fourier_sum(r, theta, cfg, k_max):
    """Truncated cosine series -e^2/r - (2 e^2/r) sum_{k=1}^{k_max} e^(-k r/R) cos(k theta)."""
    if r <= 0.0:
        raise ValueError("Fourier sum requires r > 0")
    if k_max < 0:
        raise ValueError(f"k_max must be >= 0, got {k_max}")
    th = normalize_angle(theta)
    total = -E2 / r
    if k_max > 0:
        k = np.arange(1, k_max + 1)
        total += -(2.0 * E2 / r) * np.sum(np.exp(-k * r / cfg.R) * np.cos(k * th))
    return float(total)


def fourier_kmax(r, cfg, eps=1e-14):
    """Smallest cutoff with e^(-k_max r/R) < eps, for truncating the cosine series."""
    if r <= 0.0:
        raise ValueError("cutoff rule requires r > 0")
    return int(math.ceil(math.log(1.0 / eps) * cfg.R / r))
