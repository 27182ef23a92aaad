"""Hydrogen atom with one compactified extra dimension (R^3 x S^1).

Truncated-basis diagonalization of the compactified Hamiltonian in two
basis families, cross-validated on a Coulomb + Yukawa toy model by a
Wronskian shooting method.  Units: lengths in Bohr radii a, energies in
e^2/2a (hydrogen ground state = -1).
"""

from .density import (DensityGrid, density_grid, localization_measure,
                      save_density_csv, select_state, wavefunction_at)
from .eig import (NotPositiveDefiniteError, Spectrum, eig_generalized,
                  eig_symmetric, overlap_condition)
from .matrixbuild import (BasisSpec, HamiltonianPair, QuadratureError,
                          alpha_geometric, build_compact_exponential,
                          build_compact_hydrogen, build_toy_exponential,
                          build_toy_hydrogen, dump_hamiltonian,
                          yukawa_element_closed, yukawa_element_quad)
from .potential import (ModelConfig, fourier_coeff, fourier_kmax,
                        potential_closed, potential_fourier_sum,
                        potential_image_sum)
from .scans import (ScanResult, convergence_scan, degeneracy_scan, scan_radius,
                    scan_toy_mu, solve_compact, solve_toy, write_scan_csv)
from .shooting import (NoBoundStateError, ShootingConfig, ground_energy_shooting,
                       integrate_radial, wronskian_mismatch, wronskian_raw)
from .specialfn import (RadialIndex, binomial_real, hydrogen_radial, laguerre,
                        log_factorial)

__version__ = "0.1.0"

__all__ = [
    "BasisSpec", "DensityGrid", "HamiltonianPair", "ModelConfig",
    "NoBoundStateError", "NotPositiveDefiniteError", "QuadratureError",
    "RadialIndex", "ScanResult", "ShootingConfig", "Spectrum",
    "alpha_geometric", "binomial_real", "build_compact_exponential",
    "build_compact_hydrogen", "build_toy_exponential", "build_toy_hydrogen",
    "convergence_scan", "degeneracy_scan", "density_grid", "dump_hamiltonian",
    "eig_generalized", "eig_symmetric", "fourier_coeff", "fourier_kmax",
    "ground_energy_shooting", "hydrogen_radial", "integrate_radial",
    "laguerre", "localization_measure", "log_factorial", "overlap_condition",
    "potential_closed", "potential_fourier_sum", "potential_image_sum",
    "save_density_csv", "scan_radius", "scan_toy_mu", "select_state",
    "solve_compact", "solve_toy", "wavefunction_at", "write_scan_csv",
    "wronskian_mismatch", "wronskian_raw", "yukawa_element_closed",
    "yukawa_element_quad",
]
