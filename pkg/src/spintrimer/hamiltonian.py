"""Trimer Hamiltonian assembly and the numerical exact-diagonalization oracle.

The model couples a central spin-1/2 (mu) to two spin-1 sites (S1, S2)
with isotropic exchange J, couples the spin-1 pair with exchange J1, adds
uniaxial single-ion anisotropy D on the spin-1 sites only, and a Zeeman
field h along z acting on all three spins:

    H = sum_{i=1,2} [ J mu.S_i + D (S_i^z)^2 - h S_i^z ] + J1 S1.S2 - h mu^z

The matrix is real symmetric in the product basis (the transverse terms
enter via SxSx + SySy, whose imaginary parts cancel).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .spin_algebra import DIM, DIMS, embed, is_hermitian, spin_matrices, total_sz_diagonal

#: Hermitian eigensolver residual contract, relative to ||H||
RESIDUAL_TOL = 1e-9


@dataclass(frozen=True)
class ModelParams:
    """Dimensionless model couplings (energies in units of J unless stated).

    J  : mu-S exchange, the energy unit; must be positive
    J1 : S1-S2 exchange ratio J1/J
    D  : single-ion anisotropy D/J (D > 0 easy-plane, D < 0 easy-axis)
    h  : Zeeman energy h/J, h = g mu_B B^z in physical units
    """

    J: float = 1.0
    J1: float = 0.0
    D: float = 0.0
    h: float = 0.0

    def __post_init__(self):
        for name in ("J", "J1", "D", "h"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"model parameter {name}={v} is not finite")
        if self.J <= 0:
            raise ValueError(f"exchange J must be positive (got {self.J})")


@dataclass
class Spectrum:
    """Full eigendecomposition: 18 energies ascending, orthonormal vectors.

    vectors[:, k] is the eigenvector of energies[k].  sz[k] holds the
    S_t^z expectation of vector k; inside degenerate blocks the vectors
    are rotated to diagonalize S_t^z so sz is half-integer valued.
    """

    energies: np.ndarray
    vectors: np.ndarray
    sz: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __len__(self):
        return len(self.energies)


_CACHED_OPS = None


def _site_operators():
    """Embedded (x, y, z) spin operators for the three sites, cached."""
    global _CACHED_OPS
    if _CACHED_OPS is None:
        mu = [embed(o, 0) for o in spin_matrices(0.5)]
        s1 = [embed(o, 1) for o in spin_matrices(1.0)]
        s2 = [embed(o, 2) for o in spin_matrices(1.0)]
        _CACHED_OPS = (mu, s1, s2)
    return _CACHED_OPS


def build_hamiltonian(p: ModelParams) -> np.ndarray:
    """Assemble the 18x18 trimer Hamiltonian as a real symmetric matrix."""
    mu, s1, s2 = _site_operators()
    H = np.zeros((DIM, DIM), dtype=complex)
    for si in (s1, s2):
        H += p.J * (mu[0] @ si[0] + mu[1] @ si[1] + mu[2] @ si[2])
        H += p.D * (si[2] @ si[2]) - p.h * si[2]
    H += p.J1 * (s1[0] @ s2[0] + s1[1] @ s2[1] + s1[2] @ s2[2])
    H += -p.h * mu[2]
    imag_max = np.abs(H.imag).max()
    if imag_max > 1e-12:
        raise AssertionError(f"Hamiltonian acquired imaginary parts ({imag_max:.2e})")
    return H.real


def total_sz(dims: tuple[int, ...] = DIMS) -> np.ndarray:
    """The conserved z-projection mu^z + S_1^z + S_2^z (diagonal matrix)."""
    if dims != DIMS:
        raise ValueError(f"site dimensions {dims} are fixed to {DIMS}")
    return np.diag(total_sz_diagonal())


def diagonalize(op: np.ndarray, degeneracy_tol: float = 1e-9) -> Spectrum:
    """Numerically exact eigendecomposition of a Hermitian operator.

    This is the independent oracle against which the closed-form spectrum
    is validated.  Within degenerate energy blocks the eigenvectors are
    rotated to diagonalize S_t^z, which makes labels and density-matrix
    block structure deterministic; the global phase of each vector is
    fixed by making its largest-magnitude component real and positive.
    """
    op = np.asarray(op)
    if not is_hermitian(op, tol=1e-10):
        raise ValueError("diagonalize requires a Hermitian matrix (tolerance 1e-10)")
    w, V = np.linalg.eigh(op)
    if op.shape == (DIM, DIM):
        V = _rotate_degenerate_blocks(w, V, degeneracy_tol)
    V = _fix_phases(V)
    szd = total_sz_diagonal() if op.shape == (DIM, DIM) else np.zeros(op.shape[0])
    sz = np.einsum("ik,i,ik->k", V.conj(), szd, V).real
    return Spectrum(energies=w, vectors=V, sz=sz)


def _rotate_degenerate_blocks(w: np.ndarray, V: np.ndarray, tol: float) -> np.ndarray:
    szd = total_sz_diagonal()
    V = V.copy()
    i = 0
    n = len(w)
    scale = max(1.0, np.abs(w).max())
    while i < n:
        j = i + 1
        while j < n and w[j] - w[i] <= tol * scale:
            j += 1
        if j - i > 1:
            block = V[:, i:j]
            szb = block.conj().T @ (szd[:, None] * block)
            _, U = np.linalg.eigh(szb)
            # descending S_t^z within the block, for a stable convention
            V[:, i:j] = block @ U[:, ::-1]
        i = j
    return V


def _fix_phases(V: np.ndarray) -> np.ndarray:
    V = V.copy()
    for k in range(V.shape[1]):
        idx = np.argmax(np.abs(V[:, k]))
        pivot = V[idx, k]
        if abs(pivot) > 0:
            V[:, k] = V[:, k] * (abs(pivot) / pivot)
    if np.abs(V.imag).max() < 1e-14:
        V = V.real
    return V


def residuals(op: np.ndarray, s: Spectrum) -> np.ndarray:
    """Per-pair residuals ||H v - e v||, for eigensolver contract checks."""
    op = np.asarray(op)
    R = op @ s.vectors - s.vectors * s.energies
    return np.linalg.norm(R, axis=0)
