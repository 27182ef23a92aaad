"""Wronskian shooting method for the radial Coulomb + Yukawa problem (l = 0).

The substitution R(r) = u(r)/r gives

    u''(r) = (k^2 - 2/r - 2 g exp(-mu r)/r) u(r),      E = -k^2,

with u ~ r at the origin and u ~ exp(-k r) at infinity.  A solution is
integrated outward from r1 with u(r1) = r1, u'(r1) = 1 and another inward
from r3 with u(r3) = exp(-k r3), u'(r3) = -k u(r3); a bound state is where
the Wronskian W = u_out u_in' - u_out' u_in of the two vanishes at the
matching point r2 (W is r-independent, so one point suffices).

This is the independent cross-check for the diagonalization results: any
variational (truncated-basis) ground energy must lie above the shooting one.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp


class NoBoundStateError(RuntimeError):
    pass


@dataclass(frozen=True)
class ShootingConfig:
    """Integration endpoints, matching point, ODE tolerance and k search window.

    r3 = None picks the k-dependent outer start 30/k, keeping exp(-k r3)
    representable across the bracket.
    """

    r1: float = 1e-4
    r2: float = 1.5
    r3: float | None = None
    ode_tol: float = 1e-10
    k_bracket: tuple = (0.05, 3.0)

    def __post_init__(self):
        if not 0 < self.r1 < self.r2:
            raise ValueError(f"need 0 < r1 < r2, got r1={self.r1}, r2={self.r2}")
        if self.r3 is not None and self.r3 <= self.r2:
            raise ValueError(f"need r3 > r2, got r3={self.r3}, r2={self.r2}")
        lo, hi = self.k_bracket
        if not 0 < lo < hi:
            raise ValueError(f"need 0 < k_lo < k_hi, got {self.k_bracket}")

    def outer_start(self, k):
        return self.r3 if self.r3 is not None else 30.0 / k


DEFAULT_CONFIG = ShootingConfig()


def integrate_radial(k, g, mu, direction, cfg=DEFAULT_CONFIG):
    """Integrate the radial equation to r2; returns (u(r2), u'(r2)).

    direction "outward": start at r1 with u = r1, u' = 1 (regular branch).
    direction "inward":  start at r3 with u = exp(-k r3), u' = -k u.
    """
    if k <= 0:
        raise ValueError(f"k must be > 0, got {k}")
    r3 = cfg.outer_start(k)
    if not cfg.r1 < cfg.r2 < r3:
        raise ValueError(f"matching point r2={cfg.r2} outside (r1, r3)=({cfg.r1}, {r3})")
    k2 = k * k

    def rhs(r, y):
        return (y[1], (k2 - 2.0 * (1.0 + g * math.exp(-mu * r)) / r) * y[0])

    if direction == "outward":
        span, y0 = (cfg.r1, cfg.r2), (cfg.r1, 1.0)
    elif direction == "inward":
        u3 = math.exp(-k * r3)
        span, y0 = (r3, cfg.r2), (u3, -k * u3)
    else:
        raise ValueError(f"direction must be 'outward' or 'inward', got {direction!r}")
    sol = solve_ivp(rhs, span, y0, method="RK45",
                    rtol=cfg.ode_tol, atol=cfg.ode_tol * max(abs(y0[0]), abs(y0[1])))
    if not sol.success:
        raise RuntimeError(f"radial integration failed: {sol.message}")
    return float(sol.y[0, -1]), float(sol.y[1, -1])


def wronskian_raw(k, g, mu, cfg=DEFAULT_CONFIG):
    """Unnormalized W(r2) = u_out u_in' - u_out' u_in and its magnitude scale."""
    uo, duo = integrate_radial(k, g, mu, "outward", cfg)
    ui, dui = integrate_radial(k, g, mu, "inward", cfg)
    w = uo * dui - duo * ui
    scale = abs(uo * dui) + abs(duo * ui)
    return w, scale


def wronskian_mismatch(k, g, mu, cfg=DEFAULT_CONFIG):
    """Scale-free matching defect; zero exactly at bound-state k."""
    w, scale = wronskian_raw(k, g, mu, cfg)
    if scale == 0.0:
        return 0.0
    return w / scale


def ground_energy_shooting(g, mu, cfg=DEFAULT_CONFIG, scan_points=25, k_tol=1e-10):
    """Ground-state energy E = -k*^2, with k* the largest Wronskian root.

    Scans the bracket from above for the first sign change, then bisects
    to |delta k| < k_tol. Raises NoBoundStateError when the bracket holds
    no sign change.
    """
    k_lo, k_hi = cfg.k_bracket
    ks = np.linspace(k_hi, k_lo, scan_points)
    k_prev = float(ks[0])
    f_prev = wronskian_mismatch(k_prev, g, mu, cfg)
    if f_prev == 0.0:
        return -k_prev**2
    bracket = None
    for k in map(float, ks[1:]):
        f = wronskian_mismatch(k, g, mu, cfg)
        if f == 0.0:
            return -(k**2)
        if f_prev * f < 0.0:
            bracket = (k, f, k_prev)
            break
        k_prev, f_prev = k, f
    if bracket is None:
        raise NoBoundStateError(
            f"no bound state detected in bracket k in ({k_lo}, {k_hi}) for g={g}, mu={mu}")
    a, fa, b = bracket  # a < b, sign change across (a, b)
    while b - a > k_tol:
        m = 0.5 * (a + b)
        fm = wronskian_mismatch(m, g, mu, cfg)
        if fm == 0.0:
            a = b = m
            break
        if fa * fm < 0.0:
            b = m
        else:
            a, fa = m, fm
    k_star = 0.5 * (a + b)
    return -(k_star ** 2)
