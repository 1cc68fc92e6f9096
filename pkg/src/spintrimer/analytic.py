"""Closed-form eigenvalues and eigenvectors of the trimer Hamiltonian.

Conservation of S_t^z and of the S1<->S2 exchange parity splits the 18x18
problem into blocks of size at most 3, so every level has a closed form.
The nine level families, each with a pair of S_t^z = +/-m members, are

    |5/2,+/-5/2>        fully stretched product states
    |3/2,+/-3/2>^I      odd-parity dimer state, decoupled
    |3/2,+/-3/2>^II     lower root of the even 2x2 block at |S_t^z| = 3/2
    |5/2,+/-3/2>        upper root of that block
    |1/2,+/-1/2>^II     lower root of the odd 2x2 block at |S_t^z| = 1/2
    |3/2,+/-1/2>^I      upper root of that block
    |5/2,+/-1/2>        highest root Y0 of the even cubic at |S_t^z| = 1/2
    |3/2,+/-1/2>^II     middle root Y1
    |1/2,+/-1/2>^I      lowest root Y2

The total-spin labels are nominal branch names: the anisotropy D mixes
total spin, and the three cubic roots are attached to the labels in
descending order (Y0 >= Y1 >= Y2), which reduces to the exact total-spin
assignment wherever the branches connect continuously to the isotropic
limit.  The Zeeman term only shifts each member by -h S_t^z and leaves
every eigenvector h-independent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .hamiltonian import ModelParams
from .spin_algebra import DIM, basis_index

SQ2 = math.sqrt(2.0)

#: relative size of the 3x3-block determinant below which the closed-form
#: component formulas lose precision and the block is solved numerically
DELTA_FALLBACK_REL = 1e-6


@dataclass(frozen=True)
class SpectralCoefficients:
    """All closed-form auxiliaries at one parameter point.

    P1, P2 gap parameters of the 2x2 blocks; (p, q, phi) the depressed
    cubic of the even |S_t^z| = 1/2 block with roots Y = (Y0, Y1, Y2)
    in descending order; a1m/a1p and a2m/a2p the 2x2 block amplitudes;
    R, T, alpha, beta, gamma the cubic-block eigenvector amplitudes,
    indexed by root.
    """

    P1: float
    P2: float
    p: float
    q: float
    phi: float
    Y: tuple[float, float, float]
    a1m: float
    a1p: float
    a2m: float
    a2p: float
    R: tuple[float, float, float]
    T: tuple[float, float, float]
    alpha: tuple[float, float, float]
    beta: tuple[float, float, float]
    gamma: tuple[float, float, float]


@dataclass
class AnalyticLevel:
    """One labeled level: quantum numbers, branch, energy, eigenvector."""

    s_t: Fraction
    s_t_z: Fraction
    branch: str  # "I", "II" or "" for pure total-spin levels
    energy: float
    vector: np.ndarray

    @property
    def display(self) -> str:
        sup = f"^{self.branch}" if self.branch else ""
        return f"|{self.s_t},{self.s_t_z}>{sup}"


#: family keys in a fixed canonical order: (S_t, |S_t^z|, branch)
FAMILIES = (
    "5/2,5/2",
    "3/2,3/2,I",
    "3/2,3/2,II",
    "5/2,3/2",
    "1/2,1/2,II",
    "3/2,1/2,I",
    "5/2,1/2",
    "3/2,1/2,II",
    "1/2,1/2,I",
)

_FAMILY_QN = {
    "5/2,5/2": (Fraction(5, 2), Fraction(5, 2), ""),
    "3/2,3/2,I": (Fraction(3, 2), Fraction(3, 2), "I"),
    "3/2,3/2,II": (Fraction(3, 2), Fraction(3, 2), "II"),
    "5/2,3/2": (Fraction(5, 2), Fraction(3, 2), ""),
    "1/2,1/2,II": (Fraction(1, 2), Fraction(1, 2), "II"),
    "3/2,1/2,I": (Fraction(3, 2), Fraction(1, 2), "I"),
    "5/2,1/2": (Fraction(5, 2), Fraction(1, 2), ""),
    "3/2,1/2,II": (Fraction(3, 2), Fraction(1, 2), "II"),
    "1/2,1/2,I": (Fraction(1, 2), Fraction(1, 2), "I"),
}


def family_quantum_numbers(key: str) -> tuple[Fraction, Fraction, str]:
    """(S_t, |S_t^z|, branch) for a family key such as "3/2,3/2,II"."""
    try:
        return _FAMILY_QN[key]
    except KeyError as exc:
        raise ValueError(f"unknown level family {key!r}; expected one of {FAMILIES}") from exc


def cubic_roots(p_aux: float, q_aux: float) -> tuple[float, float, float]:
    """Real roots of Y^3 - 3 p Y - 2 q = 0, descending (Y0 >= Y1 >= Y2).

    The block matrix behind this cubic is real symmetric, so all three
    roots are real and p >= 0 up to rounding; both p and the discriminant
    p^3 - q^2 are clamped at zero before the square roots.
    """
    if p_aux < -1e-12 * max(1.0, abs(q_aux) ** (2.0 / 3.0)):
        raise ValueError(f"cubic auxiliary p={p_aux} is negative; parameter bug upstream")
    p_aux = max(p_aux, 0.0)
    disc = max(p_aux**3 - q_aux**2, 0.0)
    phi = math.atan2(math.sqrt(disc), q_aux)
    r = 2.0 * math.sqrt(p_aux)
    return tuple(r * math.cos(phi / 3.0 - 2.0 * math.pi * k / 3.0) for k in range(3))


def _cubic_pq(J: float, J1: float, D: float) -> tuple[float, float]:
    """Depressed-cubic coefficients of the even |S_t^z| = 1/2 block.

    Derived from the characteristic polynomial of the symmetric-sector
    3x3 matrix after shifting by (D - J/6); verified against numerical
    diagonalization over the full parameter range.
    """
    p = D * D / 3 - D * J1 / 3 + 19 * J * J / 36 - J * J1 / 6 + J1 * J1
    q = (
        (J / 3 - J1) ** 3
        + 0.5 * (J / 3 - J1) * (D * D - D * J1 + 1.5 * J1 * J - J * J)
        + (J * J / 4) * (4.5 * J1 - D)
    )
    return p, q


def _gaps(J: float, J1: float, D: float) -> tuple[float, float]:
    # positive-definite forms of the 2x2-block gap parameters; equal to
    # (5J+2D)^2 - 32JD and (3J-2D)^2 + 16JD but free of cancellation
    P1 = math.sqrt((3 * J - 2 * D) ** 2 + 16 * J * J)
    P2 = math.sqrt((J + 2 * D) ** 2 + 8 * J * J)
    return P1, P2


def spectral_coefficients(par: ModelParams) -> SpectralCoefficients:
    """Evaluate every closed-form auxiliary at one parameter point."""
    J, J1, D = par.J, par.J1, par.D
    P1, P2 = _gaps(J, J1, D)
    a1m = -math.sqrt((P1 - (3 * J - 2 * D)) / (2 * P1))
    a1p = math.sqrt((P1 + (3 * J - 2 * D)) / (2 * P1))
    a2m = -math.sqrt((P2 - (J + 2 * D)) / (2 * P2))
    a2p = math.sqrt((P2 + (J + 2 * D)) / (2 * P2))
    p, q = _cubic_pq(J, J1, D)
    Y = cubic_roots(p, q)
    phi = math.atan2(math.sqrt(max(p**3 - q * q, 0.0)), q)
    R, T, alpha, beta, gamma = [], [], [], [], []
    for i, Yi in enumerate(Y):
        try:
            Ri, Ti = _cubic_block_components(J, J1, D, Yi)
            ai = 1.0 / math.sqrt(1.0 + Ri * Ri + Ti * Ti / 2.0)
            bi, gi = ai * Ri, ai * Ti / SQ2
        except _CubicBlockSingularity:
            ai, gi, bi = _numeric_cubic_amplitudes(par, i)
            Ri = bi / ai if ai != 0 else math.inf
            Ti = SQ2 * gi / ai if ai != 0 else math.inf
        R.append(Ri)
        T.append(Ti)
        alpha.append(ai)
        beta.append(bi)
        gamma.append(gi)
    return SpectralCoefficients(
        P1=P1, P2=P2, p=p, q=q, phi=phi, Y=tuple(Y),
        a1m=a1m, a1p=a1p, a2m=a2m, a2p=a2p,
        R=tuple(R), T=tuple(T),
        alpha=tuple(alpha), beta=tuple(beta), gamma=tuple(gamma),
    )


def _cubic_block_components(J: float, J1: float, D: float, Y: float) -> tuple[float, float]:
    """Eigenvector amplitudes (R, T) of the even cubic block at root Y.

    In the sector basis (symmetric |+1,-1>+|-1,+1> state, |0,0> state,
    symmetric one-magnon state on the flipped mu), the unnormalized
    eigenvector is (1, T/sqrt(2), R) with

        Delta = (Y + D - J/6)(Y + J/3 - J1) - J^2
        R     = J (Y + D - J/6 + 2 J1) / (sqrt(2) Delta)
        T     = (2 J1 (Y + J/3 - J1) + J^2) / Delta

    When Delta is tiny the leading component vanishes and the formulas
    lose precision; the caller must use the numerical block fallback,
    signaled here by a ValueError.
    """
    delta = (Y + D - J / 6) * (Y + J / 3 - J1) - J * J
    scale = max(1.0, abs(Y) + abs(D) + abs(J1) + abs(J)) ** 2
    if abs(delta) < DELTA_FALLBACK_REL * scale:
        raise _CubicBlockSingularity(Y)
    R = J * (Y + D - J / 6 + 2 * J1) / (SQ2 * delta)
    T = (2 * J1 * (Y + J / 3 - J1) + J * J) / delta
    return R, T


class _CubicBlockSingularity(ValueError):
    def __init__(self, Y):
        super().__init__(f"cubic block component formulas singular at Y={Y}")
        self.Y = Y


def _ket(m_mu, m_1, m_2) -> np.ndarray:
    v = np.zeros(DIM)
    v[basis_index(m_mu, m_1, m_2)] = 1.0
    return v


def _half(sign: int) -> Fraction:
    return Fraction(sign, 2)


def _dimer_states(sign: int):
    """Dimer combination states for the S_t^z = sign*m member."""
    s = sign
    phi_a = lambda m_mu: (_ket(m_mu, s, 0) - _ket(m_mu, 0, s)) / SQ2
    phi_s = lambda m_mu: (_ket(m_mu, s, 0) + _ket(m_mu, 0, s)) / SQ2
    psi_a = lambda m_mu: (_ket(m_mu, s, -s) - _ket(m_mu, -s, s)) / SQ2
    psi_s = lambda m_mu: (_ket(m_mu, s, -s) + _ket(m_mu, -s, s)) / SQ2
    return phi_a, phi_s, psi_a, psi_s


def _even_block_matrix(J: float, J1: float, D: float) -> np.ndarray:
    """Even-parity |S_t^z| = 1/2 sector matrix at h = 0 (basis e1, e2, e3)."""
    return np.array(
        [
            [2 * D - J1, SQ2 * J1, J / SQ2],
            [SQ2 * J1, 0.0, J],
            [J / SQ2, J, D - J / 2 + J1],
        ]
    )


def base_energies(par: ModelParams,
                  coeffs: SpectralCoefficients | None = None) -> dict[str, float]:
    """h = 0 energies of all nine families; members shift by -h S_t^z.

    Cheaper than spectral_coefficients when eigenvectors are not needed,
    which matters in phase scans.
    """
    J, J1, D = par.J, par.J1, par.D
    if coeffs is None:
        P1, P2 = _gaps(J, J1, D)
        Y = cubic_roots(*_cubic_pq(J, J1, D))
    else:
        P1, P2, Y = coeffs.P1, coeffs.P2, coeffs.Y
    base4 = (6 * D - J) / 4
    base6 = (6 * D - J) / 6
    return {
        "5/2,5/2": base4 + J1 + (5 * J + 2 * D) / 4,
        "3/2,3/2,I": base4 - J1 + (3 * J - 2 * D) / 4,
        "3/2,3/2,II": base4 + J1 - P1 / 4,
        "5/2,3/2": base4 + J1 + P1 / 4,
        "1/2,1/2,II": base4 - J1 - P2 / 4,
        "3/2,1/2,I": base4 - J1 + P2 / 4,
        "5/2,1/2": base6 + Y[0],
        "3/2,1/2,II": base6 + Y[1],
        "1/2,1/2,I": base6 + Y[2],
    }


def family_base_energy(key: str, par: ModelParams,
                       coeffs: SpectralCoefficients | None = None) -> float:
    """Energy of the family at h = 0; members shift by -h S_t^z."""
    try:
        return base_energies(par, coeffs)[key]
    except KeyError as exc:
        raise ValueError(f"unknown level family {key!r}") from exc


def family_energy(key: str, par: ModelParams, sign: int = +1,
                  coeffs: SpectralCoefficients | None = None) -> float:
    """Energy of the S_t^z = sign*|S_t^z| member, including the Zeeman shift."""
    _, m, _ = family_quantum_numbers(key)
    return family_base_energy(key, par, coeffs) - par.h * sign * float(m)


def family_vector(key: str, par: ModelParams, sign: int = +1,
                  coeffs: SpectralCoefficients | None = None) -> np.ndarray:
    """Normalized eigenvector of the chosen member in the product basis.

    Eigenvectors do not depend on h.  The global phase is fixed by making
    the largest-magnitude component positive.
    """
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    if coeffs is None:
        coeffs = spectral_coefficients(par)
    c = coeffs
    s = sign
    up, dn = _half(s), _half(-s)
    phi_a, phi_s, psi_a, psi_s = _dimer_states(s)
    if key == "5/2,5/2":
        v = _ket(up, s, s)
    elif key == "3/2,3/2,I":
        v = phi_a(up)
    elif key == "3/2,3/2,II":
        v = c.a1m * phi_s(up) + c.a1p * _ket(dn, s, s)
    elif key == "5/2,3/2":
        v = c.a1p * phi_s(up) - c.a1m * _ket(dn, s, s)
    elif key == "1/2,1/2,II":
        v = c.a2m * psi_a(up) + c.a2p * phi_a(dn)
    elif key == "3/2,1/2,I":
        v = c.a2p * psi_a(up) - c.a2m * phi_a(dn)
    elif key in ("5/2,1/2", "3/2,1/2,II", "1/2,1/2,I"):
        i = {"5/2,1/2": 0, "3/2,1/2,II": 1, "1/2,1/2,I": 2}[key]
        amps = _cubic_amplitudes(par, c, i)
        v = amps[0] * psi_s(up) + amps[1] * _ket(up, 0, 0) + amps[2] * phi_s(dn)
    else:
        raise ValueError(f"unknown level family {key!r}")
    v = v / np.linalg.norm(v)
    pivot = v[np.argmax(np.abs(v))]
    if pivot < 0:
        v = -v
    return v


def _numeric_cubic_amplitudes(par: ModelParams, i: int) -> np.ndarray:
    """(alpha, gamma, beta) for cubic root i from the numerical 3x3 block."""
    M = _even_block_matrix(par.J, par.J1, par.D)
    w, V = np.linalg.eigh(M)  # ascending: columns map to (Y2, Y1, Y0)
    return V[:, 2 - i]


def _cubic_amplitudes(par: ModelParams, c: SpectralCoefficients, i: int) -> np.ndarray:
    """(alpha, gamma, beta) for cubic root i; already fallback-safe."""
    return np.array([c.alpha[i], c.gamma[i], c.beta[i]])


def analytic_eigensystem(par: ModelParams) -> list[AnalyticLevel]:
    """All 18 labeled levels, sorted by ascending energy.

    Every vector satisfies the eigenvalue equation of the assembled
    Hamiltonian to better than 1e-8 (validated by the oracle test suite).
    """
    coeffs = spectral_coefficients(par)
    levels = []
    for key in FAMILIES:
        s_t, m, branch = family_quantum_numbers(key)
        base = family_base_energy(key, par, coeffs)
        for sign in (+1, -1):
            levels.append(
                AnalyticLevel(
                    s_t=s_t,
                    s_t_z=sign * m,
                    branch=branch,
                    energy=base - par.h * float(sign * m),
                    vector=family_vector(key, par, sign, coeffs),
                )
            )
    levels.sort(key=lambda lv: lv.energy)
    return levels
