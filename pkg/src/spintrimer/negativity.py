"""Partial transposition, bipartite negativity and the global tripartite measure.

The bipartite negativity across the cut A|BC is the absolute sum of the
negative eigenvalues of the density matrix partially transposed on A.
The global tripartite negativity (gTN) is the geometric mean of the three
one-versus-two bipartite negativities.  The Hamiltonian is symmetric
under S1 <-> S2, so the S1 and S2 cuts agree; both are always computed
independently and their agreement serves as a built-in self-check.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .spin_algebra import DIM, DIMS, total_sz_diagonal
from .thermal import DensityMatrix

#: eigenvalues below this count as genuinely negative (eigensolver noise floor)
NEGATIVE_EIG_TOL = -1e-12

#: partition key -> (site index, complementary sites)
PARTITIONS = {
    "mu": (0, ("s1", "s2")),
    "s1": (1, ("mu", "s2")),
    "s2": (2, ("mu", "s1")),
}


@dataclass
class NegativityReport:
    """The three bipartite negativities and their geometric mean at a point.

    negative_eigenvalues maps each partition to the ascending list of
    strictly negative eigenvalues of the corresponding partial transpose.
    """

    n_mu: float
    n_s1: float
    n_s2: float
    gtn: float
    negative_eigenvalues: dict = field(default_factory=dict)


def _as_matrix(rho) -> np.ndarray:
    if isinstance(rho, DensityMatrix):
        return rho.matrix
    return np.asarray(rho)


def _site_index(site) -> int:
    if isinstance(site, str):
        key = site.lower()
        if key not in PARTITIONS:
            raise ValueError(f"unknown site {site!r}; expected one of {tuple(PARTITIONS)}")
        return PARTITIONS[key][0]
    if site in (0, 1, 2):
        return int(site)
    raise ValueError(f"unknown site {site!r}; expected 'mu', 's1', 's2' or 0..2")


def partial_transpose(rho, site) -> np.ndarray:
    """Transpose the indices of one site only, in the fixed (2,3,3) ordering."""
    m = _as_matrix(rho)
    if m.shape != (DIM, DIM):
        raise ValueError(f"expected an {DIM}x{DIM} matrix, got {m.shape}")
    k = _site_index(site)
    t = m.reshape(*DIMS, *DIMS)
    t = np.swapaxes(t, k, k + 3)
    return t.reshape(DIM, DIM)


def negativity(rho, site) -> tuple[float, np.ndarray]:
    """Sum of |negative eigenvalues| of the partial transpose over `site`.

    Returns (value, negative_eigenvalues) with the eigenvalue list sorted
    ascending; the list feeds the thermal-crossing diagnostics.
    """
    pt = partial_transpose(rho, site)
    lam = np.linalg.eigvalsh(pt)
    neg = lam[lam < NEGATIVE_EIG_TOL]
    return float(-neg.sum()), neg


def negativity_pure(vector: np.ndarray, site) -> float:
    """Negativity of a pure state across site|rest from its Schmidt values.

    For a pure state the partial-transpose spectrum is {c_i^2} together
    with +/- c_i c_j, so the negativity equals ((sum_i c_i)^2 - 1)/2.
    Cross-validated against the partial-transpose route in the tests;
    used on scan hot paths.
    """
    v = np.asarray(vector)
    k = _site_index(site)
    order = (k,) + tuple(j for j in range(3) if j != k)
    t = v.reshape(DIMS).transpose(order).reshape(DIMS[k], -1)
    c = np.linalg.svd(t, compute_uv=False)
    c = c / np.linalg.norm(c)
    return float(max((c.sum() ** 2 - 1.0) / 2.0, 0.0))


def gtn(rho) -> NegativityReport:
    """Full report: all three cuts computed independently, plus their mean."""
    values = {}
    negatives = {}
    for key in PARTITIONS:
        val, neg = negativity(rho, key)
        values[key] = val
        negatives[key] = neg
    g = (values["mu"] * values["s1"] * values["s2"]) ** (1.0 / 3.0)
    return NegativityReport(
        n_mu=values["mu"],
        n_s1=values["s1"],
        n_s2=values["s2"],
        gtn=g,
        negative_eigenvalues=negatives,
    )


def gtn_pure(vector: np.ndarray) -> float:
    """Geometric-mean negativity of a pure state via the Schmidt route."""
    vals = [negativity_pure(vector, key) for key in PARTITIONS]
    return float((vals[0] * vals[1] * vals[2]) ** (1.0 / 3.0))


def pt_block_charges(site) -> np.ndarray:
    """Conserved charge of each basis state under the chosen partial transpose.

    A density matrix commuting with S_t^z stays block-diagonal after
    partial transposition, but with the transposed site's magnetic
    quantum number counted with opposite sign.  Grouping basis states by
    this charge splits the 18x18 partial transpose into small blocks and
    labels its eigenvalues for diagnostics.
    """
    k = _site_index(site)
    szd = total_sz_diagonal()
    site_m = np.empty(DIM)
    for i in range(DIM):
        idx = [i // 9, (i % 9) // 3, i % 3]
        m_of_site = {0: (0.5, -0.5), 1: (1.0, 0.0, -1.0), 2: (1.0, 0.0, -1.0)}[k][idx[k]]
        site_m[i] = m_of_site
    return szd - 2.0 * site_m


def pt_spectrum_blocks(rho, site) -> list[tuple[float, np.ndarray]]:
    """Eigenvalues of the partial transpose resolved by conserved charge.

    Returns (charge, ascending eigenvalues) pairs, sorted by charge.
    Only valid when rho commutes with S_t^z (cross-block weight is
    checked and rejected otherwise).
    """
    pt = partial_transpose(rho, site)
    charges = pt_block_charges(site)
    out = []
    for c in np.unique(charges):
        sel = np.where(np.abs(charges - c) < 1e-9)[0]
        block = pt[np.ix_(sel, sel)]
        mask = np.ones(DIM, bool)
        mask[sel] = False
        cross = np.abs(pt[np.ix_(sel, mask)]).max() if mask.any() else 0.0
        if cross > 1e-10:
            raise ValueError(
                "partial transpose is not block-diagonal; input does not conserve S_t^z"
            )
        out.append((float(c), np.linalg.eigvalsh(block)))
    return out
