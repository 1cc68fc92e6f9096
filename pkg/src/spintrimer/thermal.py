"""Ground-state and finite-temperature density matrices.

The thermal state is the Boltzmann mixture of the 18 eigenstates,
rho = (1/Z) sum_i exp(-e_i / kT) |psi_i><psi_i|, evaluated with energies
shifted by the ground-state energy so that no exponential overflows; the
shift cancels between numerator and partition function.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hamiltonian import Spectrum
from .spin_algebra import DIM


@dataclass
class DensityMatrix:
    """Unit-trace Hermitian PSD operator on the trimer space.

    temperature is in units of k_B T / J; 0 marks a ground-state
    construction.  weights holds the Boltzmann (or degenerate-mixture)
    populations of the underlying eigenstates, for diagnostics.
    """

    matrix: np.ndarray
    temperature: float
    weights: np.ndarray | None = None

    def validate(self, tol: float = 1e-10) -> None:
        m = self.matrix
        if m.shape != (DIM, DIM):
            raise ValueError(f"density matrix must be {DIM}x{DIM}, got {m.shape}")
        if np.abs(m - m.conj().T).max() > 1e-12:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(m).real - 1.0) > 1e-12:
            raise ValueError("density matrix trace differs from 1")
        if np.linalg.eigvalsh(m).min() < -tol:
            raise ValueError("density matrix has a significantly negative eigenvalue")


def thermal_density_matrix(s: Spectrum, kT: float) -> DensityMatrix:
    """Boltzmann mixture of a complete 18-level spectrum at temperature kT."""
    if not kT > 0:
        raise ValueError(f"temperature must be positive, got kT={kT}")
    if len(s) != DIM:
        raise ValueError(f"spectrum is incomplete: {len(s)} of {DIM} levels")
    w = np.exp(-(s.energies - s.energies[0]) / kT)
    w /= w.sum()
    rho = (s.vectors * w) @ s.vectors.conj().T
    rho = (rho + rho.conj().T) / 2
    return DensityMatrix(matrix=rho, temperature=kT, weights=w)


def ground_state_density_matrix(s: Spectrum, degeneracy_tol: float = 1e-9) -> DensityMatrix:
    """Equal-weight mixture over all levels within degeneracy_tol of the minimum.

    A unique ground state yields a pure projector.  At h = 0 every level
    family is two-fold degenerate in the sign of S_t^z, so this returns
    the rank-2 mixture there; for the single-member pure state use
    pure_state_density_matrix on the chosen eigenvector instead.
    """
    if not degeneracy_tol > 0:
        raise ValueError("degeneracy_tol must be positive")
    if len(s) != DIM:
        raise ValueError(f"spectrum is incomplete: {len(s)} of {DIM} levels")
    scale = max(1.0, abs(s.energies[0]))
    sel = s.energies <= s.energies[0] + degeneracy_tol * scale
    k = int(sel.sum())
    V = s.vectors[:, sel]
    rho = (V @ V.conj().T) / k
    w = np.zeros(DIM)
    w[sel] = 1.0 / k
    return DensityMatrix(matrix=rho, temperature=0.0, weights=w)


def pure_state_density_matrix(vector: np.ndarray) -> DensityMatrix:
    """Projector onto a single normalized state (phase-characterization mode)."""
    v = np.asarray(vector, dtype=float)
    n = np.linalg.norm(v)
    if not np.isfinite(n) or n == 0:
        raise ValueError("cannot build a projector from a zero or non-finite vector")
    v = v / n
    return DensityMatrix(matrix=np.outer(v, v.conj()), temperature=0.0)
