"""Eigenstate reconstruction on (r, theta) and probability-density grids.

The truncated eigenvector a_{n,q} defines the radial x circle part

    psi(r, theta) = sum_{n,q} a_{n,q} f_n(r) exp(i q theta)/sqrt(2 pi),

with f_n the hydrogen radial functions or the normalized exponentials.
The constant angular factor of l = 0 (and the Y_lm of l > 0 channels) is
left out: grids show the (r, theta) dependence only, with normalization
int |psi|^2 r^2 dr dtheta = 1.
"""

import math
from dataclasses import dataclass

import numpy as np

from .specialfn import RadialIndex, hydrogen_radial


@dataclass
class DensityGrid:
    """|psi|^2 on an (r, theta) product grid, with provenance metadata."""

    r_nodes: np.ndarray
    theta_nodes: np.ndarray
    values: np.ndarray  # shape (len(r_nodes), len(theta_nodes))
    metadata: dict


def radial_functions(spec, r):
    """Matrix of radial basis functions evaluated at r: shape (n_radial, len(r))."""
    r = np.atleast_1d(np.asarray(r, dtype=float))
    if spec.family == "hydrogen":
        return np.array([hydrogen_radial(RadialIndex(n, spec.l), r)
                         for n in spec.radial_labels])
    al = np.asarray(spec.alphas)
    return 2.0 * al[:, None] ** 1.5 * np.exp(-np.outer(al, r))


def radial_gram(spec):
    """Gram matrix of the radial family (identity for hydrogen)."""
    if spec.family == "hydrogen":
        return np.eye(spec.n_radial)
    al = np.asarray(spec.alphas)
    prod = np.multiply.outer(al, al)
    tot = np.add.outer(al, al)
    return (2.0 * np.sqrt(prod) / tot) ** 3


def wavefunction_at(spec, coeffs, r, theta):
    """Complex amplitude psi(r, theta); r and theta broadcast elementwise."""
    coeffs = np.asarray(coeffs, dtype=float)
    if coeffs.shape != (spec.dim,):
        raise ValueError(f"coefficient vector has length {coeffs.shape}, "
                         f"basis dimension is {spec.dim}")
    scalar = np.ndim(r) == 0 and np.ndim(theta) == 0
    rr, th = np.broadcast_arrays(np.asarray(r, dtype=float), np.asarray(theta, dtype=float))
    shape = rr.shape
    rr, th = rr.ravel(), th.ravel()
    A = coeffs.reshape(len(spec.q_values), spec.n_radial)
    F = A @ radial_functions(spec, rr)  # (n_q, npts)
    qs = np.asarray(spec.q_values)
    phases = np.exp(1j * np.outer(qs, th)) / math.sqrt(2.0 * math.pi)
    psi = np.sum(F * phases, axis=0)
    return complex(psi[0]) if scalar else psi.reshape(shape)


def _parity_permutation(spec):
    """Flat-index permutation of the q -> -q reflection."""
    imap = spec.index_map()
    pos = {pair: i for i, pair in enumerate(imap)}
    return np.array([pos[(lab, -q)] for lab, q in imap])


def select_state(spec, spectrum, state_index, degeneracy_tol=1e-8):
    """Eigenvector for one state, deterministic under degeneracy.

    Members of a (numerically) degenerate group are rotated onto parity
    eigenstates (even combinations first), then the sign is fixed so the
    largest-magnitude component is positive.  Returns (vector, eigenvalue).
    """
    w = spectrum.eigenvalues
    if not 0 <= state_index < len(w):
        raise IndexError(f"state index {state_index} out of range 0..{len(w) - 1}")
    tol = degeneracy_tol * max(1.0, abs(w[state_index]))
    lo = state_index
    while lo > 0 and abs(w[lo - 1] - w[state_index]) <= tol:
        lo -= 1
    hi = state_index
    while hi + 1 < len(w) and abs(w[hi + 1] - w[state_index]) <= tol:
        hi += 1
    if lo == hi:
        v = spectrum.eigenvectors[:, state_index].copy()
    else:
        V = spectrum.eigenvectors[:, lo:hi + 1]
        perm = _parity_permutation(spec)
        if spectrum.metric == "overlap":
            S = np.kron(np.eye(len(spec.q_values)), radial_gram(spec))
            B = V.T @ S @ V[perm, :]
        else:
            B = V.T @ V[perm, :]
        B = 0.5 * (B + B.T)
        par, W = np.linalg.eigh(B)
        order = np.argsort(-par, kind="stable")  # even (+1) first
        V = V @ W[:, order]
        v = V[:, state_index - lo].copy()
    peak = np.argmax(np.abs(v))
    if v[peak] < 0:
        v = -v
    return v, float(w[state_index])


def density_grid(spec, spectrum, state_index, r_max=10.0, n_r=200, n_theta=181, R=None):
    """Sample |psi|^2 of one eigenstate on uniform r and theta grids.

    theta nodes cover (-pi, pi] once, equally spaced, so the plain
    Riemann sum with weight 2 pi/n_theta integrates the periodic
    direction at spectral accuracy.
    """
    v, energy = select_state(spec, spectrum, state_index)
    r_nodes = np.linspace(0.0, r_max, n_r)
    theta_nodes = -math.pi + 2.0 * math.pi * np.arange(1, n_theta + 1) / n_theta
    A = v.reshape(len(spec.q_values), spec.n_radial)
    F = A @ radial_functions(spec, r_nodes)  # (n_q, n_r)
    qs = np.asarray(spec.q_values)
    phases = np.exp(1j * np.outer(qs, theta_nodes)) / math.sqrt(2.0 * math.pi)
    psi = F.T @ phases  # (n_r, n_theta)
    size = spec.N if spec.family == "hydrogen" else len(spec.alphas)
    meta = {
        "basis": spec.family,
        "size": size,
        "l": spec.l,
        "Q": spec.Q,
        "R": R,
        "state": state_index,
        "eigenvalue": energy,
    }
    return DensityGrid(r_nodes=r_nodes, theta_nodes=theta_nodes,
                       values=np.abs(psi) ** 2, metadata=meta)


def localization_measure(state, spec=None):
    """Fraction of circle probability within |theta| < pi/2 (0.5 when uniform).

    Accepts a DensityGrid (numerical integration) or an eigenvector with its
    BasisSpec (exact Fourier integral of the theta marginal).
    """
    if isinstance(state, DensityGrid):
        rw = state.values * state.r_nodes[:, None] ** 2
        radial = np.trapezoid(rw, state.r_nodes, axis=0)
        inside = np.abs(state.theta_nodes) < math.pi / 2.0
        total = radial.sum()
        if total == 0.0:
            raise ValueError("density grid integrates to zero")
        return float(radial[inside].sum() / total)
    if spec is None:
        raise ValueError("coefficient input needs the basis spec")
    coeffs = np.asarray(state, dtype=float)
    A = coeffs.reshape(len(spec.q_values), spec.n_radial)
    c = A @ radial_gram(spec) @ A.T  # theta-marginal Fourier matrix
    qs = np.asarray(spec.q_values)
    total = np.trace(c)
    acc = 0.5 * total
    nq = len(qs)
    for i in range(nq):
        for j in range(i + 1, nq):
            d = qs[i] - qs[j]
            acc += (2.0 / math.pi) * c[i, j] * math.sin(d * math.pi / 2.0) / d
    return float(acc / total)


def save_density_csv(grid, path):
    """CSV dump: '#' metadata lines, header r,theta,density, row-major in r."""
    with open(path, "w") as fh:
        for key in sorted(grid.metadata):
            fh.write(f"# {key}={_fmt_meta(grid.metadata[key])}\n")
        fh.write("r,theta,density\n")
        for i, r in enumerate(grid.r_nodes):
            for j, t in enumerate(grid.theta_nodes):
                fh.write(f"{r:.9g},{t:.9g},{grid.values[i, j]:.9g}\n")


def _fmt_meta(value):
    if value is None:
        return "-"
    if isinstance(value, float):
        return f"{value:.9g}"
    return str(value)
