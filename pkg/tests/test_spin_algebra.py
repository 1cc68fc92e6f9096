import numpy as np
import pytest

from spintrimer.spin_algebra import (
    DIM,
    DIMS,
    basis_index,
    basis_labels,
    embed,
    kron,
    spin_matrices,
    total_sz_diagonal,
)


def test_spin_half_sz_diagonal():
    _, _, sz = spin_matrices(0.5)
    assert np.allclose(np.diag(sz), [0.5, -0.5])


def test_spin_one_sz_and_trace():
    _, _, sz = spin_matrices(1.0)
    assert np.allclose(np.diag(sz), [1.0, 0.0, -1.0])
    assert abs(np.trace(sz @ sz).real - 2.0) < 1e-14


def test_spin_one_casimir():
    sx, sy, sz = spin_matrices(1.0)
    cas = sx @ sx + sy @ sy + sz @ sz
    assert np.abs(cas - 2.0 * np.eye(3)).max() < 1e-12


@pytest.mark.parametrize("s", [0.5, 1.0])
def test_commutation_algebra(s):
    sx, sy, sz = spin_matrices(s)
    for a, b, c in ((sx, sy, sz), (sy, sz, sx), (sz, sx, sy)):
        comm = a @ b - b @ a
        assert np.abs(comm - 1j * c).max() < 1e-12


def test_unsupported_spin_rejected():
    with pytest.raises(ValueError, match="unsupported spin"):
        spin_matrices(1.5)


def test_kron_dimensions_and_diagonal():
    assert kron(np.eye(2), np.eye(3)).shape == (6, 6)
    out = kron(np.diag([1.0, 2.0]), np.diag([3.0, 4.0]))
    assert np.allclose(np.diag(out), [3, 4, 6, 8])


def test_kron_mixed_product_property():
    rng = np.random.default_rng(11)
    a, c = rng.normal(size=(2, 2, 2))
    b, d = rng.normal(size=(2, 3, 3))
    lhs = kron(a, b) @ kron(c, d)
    rhs = kron(a @ c, b @ d)
    assert np.abs(lhs - rhs).max() < 1e-12


def test_embed_diagonal_action():
    _, _, sz = spin_matrices(1.0)
    op = embed(sz, site=1)
    v = np.zeros(DIM)
    v[basis_index(0.5, 1, 0)] = 1.0  # m_mu=+1/2, m_1=+1, m_2=0
    assert np.allclose(op @ v, 1.0 * v)


def test_embed_identity():
    assert np.allclose(embed(np.eye(3), site=2), np.eye(DIM))


def test_embed_sz_squared_trace():
    # brute-force oracle: single-site trace times the complementary dimension
    _, _, sz = spin_matrices(1.0)
    single = np.trace(sz @ sz).real
    complement = DIMS[0] * DIMS[2]
    assert single * complement == pytest.approx(12.0)
    assert np.trace(embed(sz @ sz, site=1)).real == pytest.approx(12.0, abs=1e-12)


def test_embed_preserves_hermiticity_and_spectrum():
    rng = np.random.default_rng(5)
    m = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    m = m + m.conj().T
    big = embed(m, site=2)
    assert np.abs(big - big.conj().T).max() < 1e-12
    small_eigs = np.linalg.eigvalsh(m)
    big_eigs = np.linalg.eigvalsh(big)
    expected = np.sort(np.repeat(small_eigs, 6))
    assert np.abs(np.sort(big_eigs) - expected).max() < 1e-10


def test_embed_dimension_mismatch_rejected():
    with pytest.raises(ValueError, match="local dimension"):
        embed(np.eye(2), site=1)
    with pytest.raises(ValueError, match="site index"):
        embed(np.eye(3), site=5)


def test_basis_ordering_roundtrip():
    for i in range(DIM):
        assert basis_index(*basis_labels(i)) == i


def test_basis_order_is_row_major_highest_m_first():
    assert basis_labels(0) == (0.5, 1, 1)
    assert basis_labels(17) == (-0.5, -1, -1)
    # m_2 varies fastest
    assert basis_labels(1) == (0.5, 1, 0)
    assert basis_labels(9) == (-0.5, 1, 1)


def test_total_sz_diagonal_range():
    d = total_sz_diagonal()
    assert d.max() == 2.5 and d.min() == -2.5
    assert d[0] == 2.5
