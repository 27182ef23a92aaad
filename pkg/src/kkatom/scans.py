"""Parameter scans over compactification radius, Yukawa range, and basis size.

Every scan row holds the sorted lowest eigenvalues at one axis point; level
identity is not tracked through crossings (a fixed number of lowest levels
is reported per point, so apparent "breaks" in plots are expected).  Scan
points are independent; CSV output is deterministic (fixed evaluation and
formatting, 9 significant digits).
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .eig import eig_generalized, eig_symmetric
from .matrixbuild import (BasisSpec, alpha_geometric, build_compact_exponential,
                          build_compact_hydrogen, build_toy_exponential,
                          build_toy_hydrogen)
from .potential import ModelConfig
from .shooting import DEFAULT_CONFIG, ground_energy_shooting

STEP_MIN = 0.005
STEP_MAX = 0.03
CURVATURE_BUDGET = 1e-5  # target |E''| * step^2 / 8 per move

DEFAULT_ALPHA_SET = alpha_geometric(0.1, 1.5, 10)


@dataclass
class ScanResult:
    """Axis values, per-point ascending levels, and full provenance."""

    axis: np.ndarray
    levels: np.ndarray  # shape (len(axis), n_columns)
    provenance: dict
    columns: tuple = ()
    failures: list = field(default_factory=list)


def solve_compact(basis, R):
    """Build and diagonalize the compactified Hamiltonian for one radius."""
    cfg = ModelConfig(R=R)
    if basis.family == "hydrogen":
        pair = build_compact_hydrogen(basis.N, basis.l, basis.Q, cfg)
        return pair, eig_symmetric(pair.H)
    pair = build_compact_exponential(basis.alphas, basis.Q, cfg)
    return pair, eig_generalized(pair.H, pair.S)


def solve_toy(basis, g, mu):
    """Build and diagonalize the Coulomb + Yukawa toy Hamiltonian."""
    if basis.family == "hydrogen":
        pair = build_toy_hydrogen(basis.N, basis.l, g, mu)
        return pair, eig_symmetric(pair.H)
    pair = build_toy_exponential(basis.alphas, g, mu)
    return pair, eig_generalized(pair.H, pair.S)


def _plan_step(proposed, remaining):
    """Clamp the next radius step to [STEP_MIN, STEP_MAX] and land on the endpoint."""
    if remaining <= STEP_MAX:
        return remaining
    if remaining <= STEP_MAX + STEP_MIN:
        return remaining / 2.0
    return max(STEP_MIN, min(proposed, STEP_MAX, remaining - STEP_MIN))


def scan_radius(basis, R_min, R_max, k_levels):
    """Lowest k_levels eigenvalues versus compactification radius.

    The step in R follows the local second derivative of the ground level
    (three-point finite differences), clamped to [0.005, 0.03]; both
    endpoints are always included.
    """
    if not 0 < R_min < R_max <= 0.25:
        raise ValueError(f"need 0 < R_min < R_max <= 0.25, got [{R_min}, {R_max}]")
    if k_levels < 1 or k_levels > basis.dim:
        raise ValueError(f"k_levels must be in 1..{basis.dim}, got {k_levels}")
    axis, rows, failures = [], [], []
    R = R_min
    proposed = STEP_MIN
    while True:
        try:
            _, spectrum = solve_compact(basis, R)
            axis.append(R)
            rows.append(spectrum.eigenvalues[:k_levels].copy())
        except Exception as exc:  # keep scanning past a bad point
            failures.append((R, str(exc)))
        if R >= R_max - 1e-12:
            break
        if len(rows) >= 3:
            h1 = axis[-2] - axis[-3]
            h2 = axis[-1] - axis[-2]
            e0, e1, e2 = rows[-3][0], rows[-2][0], rows[-1][0]
            d2 = 2.0 * (h1 * e2 - (h1 + h2) * e1 + h2 * e0) / (h1 * h2 * (h1 + h2))
            proposed = math.sqrt(8.0 * CURVATURE_BUDGET / max(abs(d2), 1e-12))
        R = min(R + _plan_step(proposed, R_max - R), R_max)
    prov = _basis_provenance(basis)
    prov.update({"scan": "radius", "R_min": R_min, "R_max": R_max, "k_levels": k_levels})
    return ScanResult(axis=np.array(axis), levels=np.array(rows), provenance=prov,
                      columns=tuple(f"E{i + 1}" for i in range(k_levels)),
                      failures=failures)


def scan_toy_mu(inv_mu_list, bases=None, shooting_cfg=DEFAULT_CONFIG, g=1.0):
    """Toy-model ground energy versus 1/mu: shooting plus each basis."""
    if bases is None:
        bases = (BasisSpec.hydrogen(10), BasisSpec.exponential(DEFAULT_ALPHA_SET))
    inv_mu = np.sort(np.asarray(list(inv_mu_list), dtype=float))
    if np.any(inv_mu <= 0):
        raise ValueError("1/mu values must be > 0")
    rows = []
    for im in inv_mu:
        mu = 1.0 / im
        row = [ground_energy_shooting(g, mu, shooting_cfg)]
        for basis in bases:
            _, spectrum = solve_toy(basis, g, mu)
            row.append(float(spectrum.eigenvalues[0]))
        rows.append(row)
    cols = ("E_shooting",) + tuple(f"E_{b.family}" for b in bases)
    prov = {"scan": "toy_mu", "g": g,
            "bases": ";".join(_basis_label(b) for b in bases),
            "ode_tol": shooting_cfg.ode_tol}
    return ScanResult(axis=inv_mu, levels=np.array(rows), provenance=prov, columns=cols)


def convergence_scan(family, N_fixed, Q_range, R, l=0, A=0.1, B=1.5):
    """Ground energy versus Fourier cutoff Q at fixed radial basis size."""
    qs = sorted(int(q) for q in Q_range)
    if qs and qs[0] < 0:
        raise ValueError("Q values must be >= 0")
    rows, axis = [], []
    for Q in qs:
        basis = _make_basis(family, N_fixed, l, A, B, Q)
        _, spectrum = solve_compact(basis, R)
        axis.append(Q)
        rows.append([float(spectrum.eigenvalues[0])])
    prov = {"scan": "convergence", "family": family, "N": N_fixed, "R": R,
            "l": l, "A": A, "B": B}
    return ScanResult(axis=np.array(axis, dtype=float), levels=np.array(rows),
                      provenance=prov, columns=("E1",))


def degeneracy_scan(R_values, N=7, Q=30):
    """Splitting of the n = 2, 3 levels between the l = 0 and l = 1 channels.

    Also reports the first Kaluza-Klein level, identified in the l = 0
    channel as the eigenvector with the largest weight on the (n = 1,
    q = +-1) basis states.
    """
    rows = []
    R_values = sorted(float(R) for R in R_values)
    for R in R_values:
        row = []
        pair0, spec0 = solve_compact(BasisSpec.hydrogen(N, 0, Q), R)
        row.extend([float(spec0.eigenvalues[1]), float(spec0.eigenvalues[2])])
        _, spec1 = solve_compact(BasisSpec.hydrogen(N, 1, Q), R)
        row.extend([float(spec1.eigenvalues[0]), float(spec1.eigenvalues[1])])
        kk_rows = [i for i, (n, q) in enumerate(pair0.index_map) if n == 1 and abs(q) == 1]
        weights = np.sum(spec0.eigenvectors[kk_rows, :] ** 2, axis=0)
        row.append(float(spec0.eigenvalues[int(np.argmax(weights))]))
        rows.append(row)
    prov = {"scan": "degeneracy", "N": N, "Q": Q}
    return ScanResult(axis=np.array(R_values), levels=np.array(rows), provenance=prov,
                      columns=("E_n2_l0", "E_n3_l0", "E_n2_l1", "E_n3_l1", "E_kk"))


def _make_basis(family, N, l, A, B, Q):
    if family == "hydrogen":
        return BasisSpec.hydrogen(N, l, Q)
    if family == "exponential":
        return BasisSpec.exponential(alpha_geometric(A, B, N), Q)
    raise ValueError(f"unknown basis family {family!r}")


def _basis_label(basis):
    if basis.family == "hydrogen":
        return f"hydrogen(N={basis.N},l={basis.l})"
    return f"exponential(I={len(basis.alphas)})"


def _basis_provenance(basis):
    prov = {"basis": basis.family, "l": basis.l, "Q": basis.Q,
            "version": "kkatom 0.1.0"}
    if basis.family == "hydrogen":
        prov["N"] = basis.N
    else:
        prov["I"] = len(basis.alphas)
        prov["alphas"] = ",".join(f"{a:.9g}" for a in basis.alphas)
    return prov


def write_scan_csv(result, path, axis_name):
    """Deterministic CSV: '#' provenance lines, then axis plus level columns."""
    cols = result.columns or tuple(f"E{i + 1}" for i in range(result.levels.shape[1]))
    with open(path, "w") as fh:
        for key in sorted(result.provenance):
            fh.write(f"# {key}={result.provenance[key]}\n")
        for R, msg in result.failures:
            fh.write(f"# failed point {R:.9g}: {msg}\n")
        fh.write(axis_name + "," + ",".join(cols) + "\n")
        for x, row in zip(result.axis, result.levels):
            fh.write(f"{x:.9g}," + ",".join(f"{v:.9g}" for v in row) + "\n")
