"""Spin operators and tensor-product embeddings on the 2x3x3 product space.

The trimer Hilbert space is ordered (mu, S1, S2) with local dimensions
(2, 3, 3), i.e. a spin-1/2 between two spin-1 sites.  The product basis is
fixed once and for all in row-major order over the magnetic quantum
numbers, each site running from highest m to lowest:

    index = i_mu * 9 + i_1 * 3 + i_2

    i_mu = 0, 1        ->  m_mu = +1/2, -1/2
    i_1, i_2 = 0, 1, 2 ->  m    = +1, 0, -1

Every other module relies on this ordering; nothing is permuted silently.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

#: local dimensions of the (mu, S1, S2) sites
DIMS = (2, 3, 3)

#: total Hilbert-space dimension
DIM = 18

#: site magnetic quantum numbers keyed by local index, per site
SITE_M = (
    (Fraction(1, 2), Fraction(-1, 2)),
    (Fraction(1), Fraction(0), Fraction(-1)),
    (Fraction(1), Fraction(0), Fraction(-1)),
)

HERMITICITY_TOL = 1e-12


def spin_matrices(s: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return (Sx, Sy, Sz) for spin s in the basis |s>, |s-1>, ..., |-s>.

    Only s = 1/2 and s = 1 are supported; these are the two site spins of
    the trimer.  Sz is diagonal with entries s, s-1, ..., -s and the
    triple satisfies the cyclic commutation algebra [Sx, Sy] = i Sz.
    """
    if s not in (0.5, 1.0):
        raise ValueError(f"unsupported spin s={s}; only s=1/2 and s=1 are available")
    d = int(round(2 * s + 1))
    m = s - np.arange(d)
    sz = np.diag(m).astype(complex)
    sp = np.zeros((d, d), dtype=complex)
    for k in range(1, d):
        mk = m[k]
        sp[k - 1, k] = np.sqrt(s * (s + 1) - mk * (mk + 1))
    sm = sp.conj().T
    sx = (sp + sm) / 2
    sy = (sp - sm) / 2j
    return sx, sy, sz


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with a's index slowest (row-major convention)."""
    return np.kron(a, b)


def embed(op: np.ndarray, site: int, dims: tuple[int, ...] = DIMS) -> np.ndarray:
    """Lift a single-site operator to the full product space.

    Returns identity (x) ... (x) op (x) ... (x) identity with `op` acting
    on `site`, consistent with the fixed basis ordering.
    """
    op = np.asarray(op)
    if site not in range(len(dims)):
        raise ValueError(f"site index {site} outside 0..{len(dims) - 1}")
    if op.shape != (dims[site], dims[site]):
        raise ValueError(
            f"operator of shape {op.shape} does not act on site {site} "
            f"with local dimension {dims[site]}"
        )
    out = np.eye(1, dtype=complex)
    for k, d in enumerate(dims):
        out = np.kron(out, op if k == site else np.eye(d))
    return out


def basis_labels(index: int) -> tuple[Fraction, Fraction, Fraction]:
    """Magnetic quantum numbers (m_mu, m_1, m_2) of a product basis state."""
    if not 0 <= index < DIM:
        raise ValueError(f"basis index {index} outside 0..{DIM - 1}")
    i_mu, rem = divmod(index, 9)
    i_1, i_2 = divmod(rem, 3)
    return SITE_M[0][i_mu], SITE_M[1][i_1], SITE_M[2][i_2]


def basis_index(m_mu: Fraction, m_1: Fraction, m_2: Fraction) -> int:
    """Inverse of basis_labels: product-state index from quantum numbers."""
    try:
        i_mu = SITE_M[0].index(Fraction(m_mu))
        i_1 = SITE_M[1].index(Fraction(m_1))
        i_2 = SITE_M[2].index(Fraction(m_2))
    except ValueError as exc:
        raise ValueError(f"no basis state with labels ({m_mu}, {m_1}, {m_2})") from exc
    return i_mu * 9 + i_1 * 3 + i_2


def total_sz_diagonal() -> np.ndarray:
    """Diagonal of mu^z + S_1^z + S_2^z in the product basis, as floats."""
    return np.array([float(sum(basis_labels(i))) for i in range(DIM)])


def is_hermitian(op: np.ndarray, tol: float = HERMITICITY_TOL) -> bool:
    op = np.asarray(op)
    return op.shape[0] == op.shape[1] and np.abs(op - op.conj().T).max() <= tol
