"""Truncated Hamiltonian and overlap matrices.

Two basis families are supported:

* hydrogen bound states R_nl(r) with plane waves exp(i q theta)/sqrt(2 pi)
  along the compact dimension (orthonormal, no overlap matrix);
* normalized exponentials 2 alpha^(3/2) exp(-alpha r) with the same plane
  waves (non-orthogonal, overlap matrix S).

The screened-Coulomb (Yukawa) matrix element in the hydrogen basis,

    M_{n,n';l}(g, mu) = 2 g int_0^inf r^2 R_nl R_n'l exp(-mu r)/r dr,

has a finite-sum closed form (a reduction of the product-of-Laguerre
integral); it is evaluated in log space with explicit sign tracking and
checked against adaptive quadrature of the defining integral.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.integrate import quad

from .specialfn import RadialIndex, hydrogen_radial, log_factorial


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to converge; carries the achieved error estimate."""

    def __init__(self, message, achieved_error):
        super().__init__(message)
        self.achieved_error = achieved_error


@dataclass(frozen=True)
class BasisSpec:
    """Truncated basis description.

    family "hydrogen": principal quantum numbers n = l+1 .. N at fixed l.
    family "exponential": decay parameters alphas (positive, strictly
    increasing); spherically symmetric only (l = 0).
    Q is the Fourier cutoff (modes q = -Q .. Q); None for toy-model use.
    """

    family: str
    N: int | None = None
    l: int = 0
    alphas: tuple | None = None
    Q: int | None = None

    def __post_init__(self):
        if self.family == "hydrogen":
            if self.N is None or self.N < self.l + 1:
                raise ValueError(f"hydrogen basis needs N >= l+1, got N={self.N}, l={self.l}")
            if self.l < 0:
                raise ValueError(f"l must be >= 0, got {self.l}")
        elif self.family == "exponential":
            if self.l != 0:
                raise ValueError("exponential basis supports l = 0 only")
            if not self.alphas:
                raise ValueError("exponential basis needs a non-empty alpha list")
            a = tuple(float(x) for x in self.alphas)
            if any(x <= 0 for x in a) or any(y <= x for x, y in zip(a, a[1:])):
                raise ValueError("alphas must be positive and strictly increasing")
            object.__setattr__(self, "alphas", a)
        else:
            raise ValueError(f"unknown basis family {self.family!r}")
        if self.Q is not None and self.Q < 0:
            raise ValueError(f"Fourier cutoff Q must be >= 0, got {self.Q}")

    @classmethod
    def hydrogen(cls, N, l=0, Q=None):
        return cls(family="hydrogen", N=N, l=l, Q=Q)

    @classmethod
    def exponential(cls, alphas, Q=None):
        return cls(family="exponential", alphas=tuple(alphas), Q=Q)

    @property
    def n_radial(self):
        """Number of radial basis functions."""
        if self.family == "hydrogen":
            return self.N - self.l
        return len(self.alphas)

    @property
    def radial_labels(self):
        """n values (hydrogen) or 1-based alpha indices (exponential)."""
        if self.family == "hydrogen":
            return tuple(range(self.l + 1, self.N + 1))
        return tuple(range(1, len(self.alphas) + 1))

    @property
    def q_values(self):
        Q = 0 if self.Q is None else self.Q
        return tuple(range(-Q, Q + 1))

    @property
    def dim(self):
        return self.n_radial * len(self.q_values)

    def index_map(self):
        """Flat-index order: q major (-Q..Q), radial label minor."""
        return tuple((lab, q) for q in self.q_values for lab in self.radial_labels)


@dataclass
class HamiltonianPair:
    """Dense symmetric H (energy units e^2/2a), optional overlap S, and index map."""

    H: np.ndarray
    S: np.ndarray | None
    index_map: tuple
    spec: BasisSpec
    R: float | None = None


def yukawa_element_quad(n, nprime, l, g, mu, tol=1e-11):
    """M_{n,n';l}(g, mu) by adaptive quadrature of the defining radial integral.

    Independent oracle for the closed form. Integrates on [0, 40 max(n, n')]
    where the integrand has decayed below double precision.
    """
    _check_nl(n, nprime, l)
    if g == 0.0:
        return 0.0
    ra, rb = RadialIndex(n, l), RadialIndex(nprime, l)

    def integrand(r):
        return 2.0 * g * r * hydrogen_radial(ra, r) * hydrogen_radial(rb, r) * math.exp(-mu * r)

    upper = 40.0 * max(n, nprime)
    val, err, info, *rest = quad(integrand, 0.0, upper, epsabs=tol, epsrel=tol,
                                 limit=400, full_output=True)
    if rest:
        raise QuadratureError(
            f"quadrature for M({n},{nprime};{l}) did not converge: "
            f"achieved error estimate {err:.3e}", err)
    return val


def yukawa_element_closed(n, nprime, l, g, mu):
    """Closed-form M_{n,n';l}(g, mu) as a finite sum over Laguerre cross terms.

    Linear in g; the g = 1 value is cached per (n, n', l, mu).
    """
    _check_nl(n, nprime, l)
    return g * _yukawa_unit(n, nprime, l, float(mu))


def _check_nl(n, nprime, l):
    if l < 0 or n < l + 1 or nprime < l + 1:
        raise ValueError(f"need n, n' >= l+1 >= 1, got n={n}, n'={nprime}, l={l}")


@lru_cache(maxsize=None)
def _yukawa_unit(n, nprime, l, mu):
    """g = 1 Yukawa matrix element via the finite-sum reduction.

    sigma = 1/n + 1/n' + mu.  The bases (1 - 2/(n sigma)) may be negative or
    zero, so magnitudes are accumulated in log space with the signs tracked
    separately and the k-sum rescaled by its largest term.
    """
    sigma = 1.0 / n + 1.0 / nprime + mu
    log_pre = (
        math.log(0.5)
        + (l + 2) * math.log(4.0 / (n * nprime))
        + 0.5 * (log_factorial(n - l - 1) + log_factorial(nprime - l - 1)
                 - log_factorial(n + l) - log_factorial(nprime + l))
        + log_factorial(2 * l + 1)
        - (2 * l + 2) * math.log(sigma)
    )
    a = 1.0 - 2.0 / (n * sigma)
    b = 1.0 - 2.0 / (nprime * sigma)
    log_ratio = math.log(2.0 / (n * sigma)) + math.log(2.0 / (nprime * sigma))
    kmax = min(n - l - 1, nprime - l - 1)
    logs, signs = [], []
    for k in range(kmax + 1):
        ea, eb = n - l - 1 - k, nprime - l - 1 - k
        if (a == 0.0 and ea > 0) or (b == 0.0 and eb > 0):
            continue
        lg = (
            _log_binomial(n + l, n - l - 1 - k)
            + _log_binomial(nprime + l, nprime - l - 1 - k)
            + _log_binomial(k + 2 * l + 1, k)
            + k * log_ratio
        )
        sgn = 1.0
        if ea > 0:
            lg += ea * math.log(abs(a))
            sgn *= (-1.0) ** ea if a < 0 else 1.0
        if eb > 0:
            lg += eb * math.log(abs(b))
            sgn *= (-1.0) ** eb if b < 0 else 1.0
        logs.append(lg)
        signs.append(sgn)
    if not logs:
        return 0.0
    top = max(logs)
    total = sum(s * math.exp(lg - top) for lg, s in zip(logs, signs))
    return math.exp(log_pre + top) * total


def _log_binomial(a, b):
    return log_factorial(a) - log_factorial(b) - log_factorial(a - b)


def alpha_geometric(A, B, N):
    """Geometric decay-parameter set alpha_n = A B^(n-1), n = 1..N."""
    if A <= 0:
        raise ValueError(f"A must be > 0, got {A}")
    if B <= 1:
        raise ValueError(f"B must be > 1, got {B}")
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    return tuple(A * B**i for i in range(N))


def _yukawa_matrix(ns, l, g, mu):
    """Symmetric matrix of M_{n,n';l}(g, mu) over the given n values."""
    nn = len(ns)
    M = np.zeros((nn, nn))
    for i in range(nn):
        for j in range(i, nn):
            M[i, j] = M[j, i] = yukawa_element_closed(ns[i], ns[j], l, g, mu)
    return M


def build_toy_hydrogen(N, l=0, g=1.0, mu=0.0):
    """Hydrogen-basis matrix of the Coulomb + Yukawa toy Hamiltonian.

    Entries -delta_{nn'}/n^2 - M_{n,n';l}(g, mu) for n, n' in {l+1, .., N}.
    """
    spec = BasisSpec.hydrogen(N, l)
    ns = spec.radial_labels
    H = -_yukawa_matrix(ns, l, g, mu)
    H[np.diag_indices_from(H)] += [-1.0 / n**2 for n in ns]
    return HamiltonianPair(H=H, S=None, index_map=spec.index_map(), spec=spec)


def build_toy_exponential(alphas, g=1.0, mu=0.0):
    """Exponential-basis (l = 0) matrices of the toy Hamiltonian.

    H_mn = -(a_m + a_n - a_m a_n) <m|n> - g (2 sqrt(a_m a_n))^3/(a_m + a_n + mu)^2,
    S_mn = (2 sqrt(a_m a_n)/(a_m + a_n))^3.
    """
    spec = BasisSpec.exponential(alphas)
    al = np.asarray(spec.alphas)
    prod = np.multiply.outer(al, al)
    tot = np.add.outer(al, al)
    S = (2.0 * np.sqrt(prod) / tot) ** 3
    H = -(tot - prod) * S - g * 8.0 * prod**1.5 / (tot + mu) ** 2
    return HamiltonianPair(H=H, S=S, index_map=spec.index_map(), spec=spec)


def build_compact_hydrogen(N, l, Q, cfg, g=1.0):
    """Hydrogen-plane-wave basis matrix of the compactified Hamiltonian.

    Entries delta_{nn'} delta_{qq'} (-1/n^2 + q^2/R^2)
            - (1 - delta_{qq'}) M_{n,n';l}(g, |q-q'|/R),
    flat index q major (-Q..Q), n minor. Couplings depend on |q - q'| only,
    so the matrix is assembled from one M table per mode offset.
    """
    spec = BasisSpec.hydrogen(N, l, Q)
    ns = spec.radial_labels
    nn = len(ns)
    qs = np.asarray(spec.q_values)
    R = cfg.R
    mtab = np.zeros((2 * Q + 1, nn, nn))
    for d in range(1, 2 * Q + 1):
        mtab[d] = _yukawa_matrix(ns, l, g, d / R)
    D = np.abs(np.subtract.outer(qs, qs))
    H = -mtab[D].transpose(0, 2, 1, 3).reshape(spec.dim, spec.dim)
    diag = np.add.outer(qs.astype(float) ** 2 / R**2,
                        np.array([-1.0 / n**2 for n in ns])).ravel()
    H[np.diag_indices_from(H)] += diag
    return HamiltonianPair(H=H, S=None, index_map=spec.index_map(), spec=spec, R=R)


def build_compact_exponential(alphas, Q, cfg):
    """Exponential-plane-wave basis matrices of the compactified Hamiltonian.

    H_{(j,p),(i,q)} = <jp|iq> (a_i a_j + q^2/R^2)
                      - (2 sqrt(a_i a_j))^3/(a_i + a_j + |q-p|/R)^2,
    S_{(j,p),(i,q)} = (2 sqrt(a_i a_j)/(a_i + a_j))^3 delta_pq.
    The |q-p| = 0 attraction term is the pure Coulomb part.
    """
    spec = BasisSpec.exponential(alphas, Q)
    al = np.asarray(spec.alphas)
    ni = len(al)
    qs = np.asarray(spec.q_values)
    R = cfg.R
    prod = np.multiply.outer(al, al)
    tot = np.add.outer(al, al)
    S_r = (2.0 * np.sqrt(prod) / tot) ** 3
    kin = prod * S_r
    ctab = np.empty((2 * Q + 1, ni, ni))
    for d in range(2 * Q + 1):
        ctab[d] = 8.0 * prod**1.5 / (tot + d / R) ** 2
    D = np.abs(np.subtract.outer(qs, qs))
    H = -ctab[D].transpose(0, 2, 1, 3).reshape(spec.dim, spec.dim)
    for iq, q in enumerate(qs):
        sl = slice(iq * ni, (iq + 1) * ni)
        H[sl, sl] += kin + (q**2 / R**2) * S_r
    S = np.kron(np.eye(2 * Q + 1), S_r)
    return HamiltonianPair(H=H, S=S, index_map=spec.index_map(), spec=spec, R=R)


def dump_hamiltonian(pair, path):
    """Plain-text row-major dump of H with a one-line header."""
    spec = pair.spec
    d = pair.H.shape[0]
    size = spec.N if spec.family == "hydrogen" else len(spec.alphas)
    rv = "-" if pair.R is None else f"{pair.R:.9g}"
    qv = "-" if spec.Q is None else str(spec.Q)
    with open(path, "w") as fh:
        fh.write(f"dim={d} basis={spec.family} R={rv} N={size} Q={qv}\n")
        for row in pair.H:
            fh.write(" ".join(f"{v:.17g}" for v in row) + "\n")
