import numpy as np
import pytest

from spintrimer.hamiltonian import ModelParams, build_hamiltonian, diagonalize
from spintrimer.analytic import family_vector
from spintrimer.negativity import (
    gtn,
    gtn_pure,
    negativity,
    negativity_pure,
    partial_transpose,
    pt_spectrum_blocks,
)
from spintrimer.spin_algebra import DIM, DIMS, basis_index
from spintrimer.thermal import pure_state_density_matrix, thermal_density_matrix


def brute_force_pt(rho, site):
    """Independent element-permutation oracle for the partial transpose."""
    out = np.zeros_like(rho)
    for a in range(DIMS[0]):
        for b in range(DIMS[1]):
            for c in range(DIMS[2]):
                for d in range(DIMS[0]):
                    for e in range(DIMS[1]):
                        for f in range(DIMS[2]):
                            row = (a * 9 + b * 3 + c, d * 9 + e * 3 + f)
                            if site == 0:
                                src = (d * 9 + b * 3 + c, a * 9 + e * 3 + f)
                            elif site == 1:
                                src = (a * 9 + e * 3 + c, d * 9 + b * 3 + f)
                            else:
                                src = (a * 9 + b * 3 + f, d * 9 + e * 3 + c)
                            out[row] = rho[src]
    return out


def random_density_matrix(rng):
    m = rng.normal(size=(DIM, DIM)) + 1j * rng.normal(size=(DIM, DIM))
    rho = m @ m.conj().T
    return rho / np.trace(rho)


def test_involution_is_exact():
    rng = np.random.default_rng(0)
    rho = random_density_matrix(rng)
    for site in ("mu", "s1", "s2"):
        again = partial_transpose(partial_transpose(rho, site), site)
        assert np.array_equal(again, rho)


def test_matches_brute_force_permutation_oracle():
    rng = np.random.default_rng(1)
    rho = random_density_matrix(rng)
    for k, site in enumerate(("mu", "s1", "s2")):
        assert np.abs(partial_transpose(rho, site) - brute_force_pt(rho, k)).max() == 0.0


def test_embedded_two_qubit_state():
    # Bell-like state on (mu, S1 restricted to two levels); textbook value 1/2
    v = np.zeros(DIM)
    v[basis_index(0.5, 1, 1)] = 1 / np.sqrt(2)
    v[basis_index(-0.5, 0, 1)] = 1 / np.sqrt(2)
    rho = np.outer(v, v)
    val, neg = negativity(rho, "mu")
    assert val == pytest.approx(0.5, abs=1e-12)
    assert len(neg) == 1
    assert np.abs(partial_transpose(rho, "mu") - brute_force_pt(rho, 0)).max() == 0.0


def test_product_state_stays_psd():
    rng = np.random.default_rng(2)
    a = rng.normal(size=2)
    b = rng.normal(size=3)
    c = rng.normal(size=3)
    v = np.kron(a, np.kron(b, c))
    v /= np.linalg.norm(v)
    rho = np.outer(v, v)
    for site in ("mu", "s1", "s2"):
        val, _ = negativity(rho, site)
        assert val == 0.0
        assert np.linalg.eigvalsh(partial_transpose(rho, site)).min() > -1e-12


def test_classical_mixture_of_products_is_ppt():
    rng = np.random.default_rng(3)
    rho = np.zeros((DIM, DIM))
    for _ in range(6):
        v = np.kron(rng.normal(size=2), np.kron(rng.normal(size=3), rng.normal(size=3)))
        v /= np.linalg.norm(v)
        rho += rng.uniform(0.1, 1.0) * np.outer(v, v)
    rho /= np.trace(rho)
    for site in ("mu", "s1", "s2"):
        assert negativity(rho, site)[0] < 1e-10


def test_maximally_mixed_state():
    rep = gtn(np.eye(DIM) / DIM)
    assert rep.n_mu == rep.n_s1 == rep.n_s2 == 0.0
    assert rep.gtn == 0.0


def test_gtn_is_geometric_mean():
    par = ModelParams(J=1.0, J1=0.6, D=-0.9, h=0.2)
    rho = thermal_density_matrix(diagonalize(build_hamiltonian(par)), kT=0.4)
    rep = gtn(rho)
    assert rep.gtn == pytest.approx((rep.n_mu * rep.n_s1 * rep.n_s2) ** (1 / 3), abs=1e-12)


def test_s1_s2_symmetry():
    rng = np.random.default_rng(4)
    for _ in range(25):
        j1, d, h = rng.uniform(-3, 3, 3)
        kt = rng.uniform(0.05, 3.0)
        spec = diagonalize(build_hamiltonian(ModelParams(J=1.0, J1=j1, D=d, h=h)))
        rep = gtn(thermal_density_matrix(spec, kt))
        assert abs(rep.n_s1 - rep.n_s2) < 1e-9


def test_pure_route_matches_partial_transpose_route():
    rng = np.random.default_rng(5)
    for _ in range(40):
        v = rng.normal(size=DIM)
        v /= np.linalg.norm(v)
        rho = np.outer(v, v)
        for site in ("mu", "s1", "s2"):
            assert negativity_pure(v, site) == pytest.approx(
                negativity(rho, site)[0], abs=1e-10
            )
        assert gtn_pure(v) == pytest.approx(gtn(rho).gtn, abs=1e-10)


def test_biseparable_ground_state_has_zero_gtn():
    par = ModelParams(J=1.0, J1=1.5, D=0.0, h=1e-9)
    v = family_vector("1/2,1/2,I", par, +1)
    rep = gtn(pure_state_density_matrix(v))
    assert rep.n_mu < 1e-10
    assert rep.n_s1 == pytest.approx(1.0, abs=1e-9)  # spin-1 dimer singlet
    assert rep.gtn < 1e-3


def test_doublet_gtn_peak_value():
    par = ModelParams(J=1.0, J1=0.5, D=-0.5)
    v = family_vector("1/2,1/2,II", par, +1)
    rep = gtn(pure_state_density_matrix(v))
    assert rep.gtn == pytest.approx(0.771, abs=1e-3)
    assert rep.n_mu == pytest.approx(0.5, abs=1e-9)


def test_accepts_density_matrix_wrapper_and_ndarray():
    par = ModelParams(J=1.0, J1=0.3, D=0.4, h=0.1)
    rho = thermal_density_matrix(diagonalize(build_hamiltonian(par)), kT=1.0)
    assert gtn(rho).gtn == pytest.approx(gtn(rho.matrix).gtn, abs=1e-15)


def test_invalid_site_rejected():
    rho = np.eye(DIM) / DIM
    with pytest.raises(ValueError, match="unknown site"):
        negativity(rho, "s3")
    with pytest.raises(ValueError, match="unknown site"):
        partial_transpose(rho, 7)


def test_pt_spectrum_blocks_cover_full_spectrum():
    par = ModelParams(J=1.0, J1=1.5, D=0.2, h=0.05)
    rho = thermal_density_matrix(diagonalize(build_hamiltonian(par)), kT=0.8)
    for site in ("mu", "s1"):
        blocks = pt_spectrum_blocks(rho, site)
        merged = np.sort(np.concatenate([lam for _, lam in blocks]))
        full = np.sort(np.linalg.eigvalsh(partial_transpose(rho, site)))
        assert np.abs(merged - full).max() < 1e-10
        assert sum(len(lam) for _, lam in blocks) == DIM
