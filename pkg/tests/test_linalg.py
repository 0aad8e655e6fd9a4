import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from skewmum.linalg import (
    DimensionError,
    EigenConvergenceError,
    InvalidStateError,
    NotHermitianError,
    as_density_matrix,
    embed_at_site,
    hermitian_eigendecomposition,
    kron,
    kron_all,
    partial_trace,
    projector,
)

from conftest import I2, SX, SZ, random_density, random_hermitian


def test_kron_identities():
    np.testing.assert_array_equal(kron(I2, I2), np.eye(4))
    np.testing.assert_array_equal(kron(np.diag([1, -1]), I2), np.diag([1, 1, -1, -1]))


def test_kron_flip():
    ket00 = np.array([1, 0, 0, 0])
    np.testing.assert_array_equal(kron(SX, SX) @ ket00, [0, 0, 0, 1])


def test_embed_definition():
    np.testing.assert_array_equal(embed_at_site(SZ, 0, 2, 2), np.kron(SZ, I2))
    np.testing.assert_array_equal(embed_at_site(SZ, 1, 2, 2), np.kron(I2, SZ))


@pytest.mark.parametrize("site", [0, 1, 2, 3])
def test_embed_identity(site):
    np.testing.assert_array_equal(embed_at_site(I2, site, 4, 2), np.eye(16))


def test_embed_traceless():
    assert np.trace(embed_at_site(SX, 1, 3, 2)) == 0


def test_embed_trace_scaling(rng):
    a = random_hermitian(rng, 3)
    e = embed_at_site(a, 2, 3, 3)
    assert np.trace(e) == pytest.approx(np.trace(a) * 9)


def test_embed_errors():
    with pytest.raises(IndexError):
        embed_at_site(SX, 3, 3, 2)
    with pytest.raises(DimensionError):
        embed_at_site(SX, 0, 3, 3)
    with pytest.raises(DimensionError):
        embed_at_site(SX, 0, 13, 2)


def test_embed_additive(rng):
    a, b = random_hermitian(rng, 2), random_hermitian(rng, 2)
    lhs = embed_at_site(a + b, 1, 4, 2)
    rhs = embed_at_site(a, 1, 4, 2) + embed_at_site(b, 1, 4, 2)
    assert np.max(np.abs(lhs - rhs)) <= 1e-12


def test_eig_diagonal():
    dec = hermitian_eigendecomposition(np.diag([3.0, 1.0, 2.0]))
    np.testing.assert_allclose(dec.eigenvalues, [3, 2, 1])


def test_eig_sigma_x():
    dec = hermitian_eigendecomposition(SX)
    np.testing.assert_allclose(dec.eigenvalues, [1, -1], atol=1e-15)
    plus = np.array([1, 1]) / np.sqrt(2)
    minus = np.array([1, -1]) / np.sqrt(2)
    assert abs(np.vdot(plus, dec.eigenvectors[:, 0])) == pytest.approx(1)
    assert abs(np.vdot(minus, dec.eigenvectors[:, 1])) == pytest.approx(1)


@pytest.mark.parametrize("p", [0.0, 0.25, 0.9, 1.0])
def test_eig_rank_one_plus_isotropic(rng, p):
    dim = 16
    psi = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    psi /= np.linalg.norm(psi)
    rho = p * projector(psi) + (1 - p) / dim * np.eye(dim)
    dec = hermitian_eigendecomposition(rho)
    expected = [p + (1 - p) / dim] + [(1 - p) / dim] * (dim - 1)
    np.testing.assert_allclose(dec.eigenvalues, expected, atol=1e-13)


def test_eig_deterministic(rng):
    h = random_hermitian(rng, 32)
    a, b = hermitian_eigendecomposition(h), hermitian_eigendecomposition(h)
    np.testing.assert_array_equal(a.eigenvalues, b.eigenvalues)
    np.testing.assert_array_equal(a.eigenvectors, b.eigenvectors)


def test_eig_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        hermitian_eigendecomposition(np.array([[0, 1], [0, 0]]))


def test_eig_reconstruction_failure_reports_residual(monkeypatch):
    def broken(h):
        return np.zeros(len(h)), np.eye(len(h))

    monkeypatch.setattr(np.linalg, "eigh", broken)
    with pytest.raises(EigenConvergenceError) as info:
        hermitian_eigendecomposition(np.diag([1.0, 2.0]))
    assert info.value.residual == pytest.approx(2.0)


@settings(max_examples=40, deadline=None)
@given(dim=st.integers(1, 64), seed=st.integers(0, 2**32 - 1))
def test_eig_random_reconstruction(dim, seed):
    h = random_hermitian(np.random.default_rng(seed), dim)
    dec = hermitian_eigendecomposition(h)
    assert np.max(np.abs(dec.reconstruct() - h)) <= 1e-9
    v = dec.eigenvectors
    assert np.max(np.abs(v.conj().T @ v - np.eye(dim))) <= 1e-10
    assert np.all(np.diff(dec.eigenvalues) <= 0)


def test_partial_trace_bell():
    bell = np.array([1, 0, 0, 1]) / np.sqrt(2)
    np.testing.assert_allclose(partial_trace(projector(bell), [0], 2, 2), np.eye(2) / 2)


def test_partial_trace_product(rng):
    ra, rb = random_density(rng, 3), random_density(rng, 3)
    np.testing.assert_allclose(partial_trace(np.kron(ra, rb), [0], 2, 3), ra, atol=1e-14)
    np.testing.assert_allclose(partial_trace(np.kron(ra, rb), [1], 2, 3), rb, atol=1e-14)


def test_partial_trace_pure_product():
    ket = np.zeros(8)
    ket[0] = 1
    out = partial_trace(projector(ket), [1, 2], 3, 2)
    expect = np.zeros((4, 4))
    expect[0, 0] = 1
    np.testing.assert_array_equal(out, expect)


def test_partial_trace_keeps_site_order(rng):
    a, b, c = (random_density(rng, 2) for _ in range(3))
    np.testing.assert_allclose(partial_trace(kron_all([a, b, c]), [2, 0], 3, 2), np.kron(a, c), atol=1e-14)


def test_partial_trace_errors():
    with pytest.raises(ValueError):
        partial_trace(np.eye(4) / 4, [], 2, 2)
    with pytest.raises(DimensionError):
        partial_trace(np.eye(4) / 4, [0], 3, 2)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 4),
       keep=st.sets(st.integers(0, 3), min_size=1))
def test_partial_trace_valid_state(seed, n, keep):
    keep = {k for k in keep if k < n} or {0}
    rho = random_density(np.random.default_rng(seed), 2**n)
    red = partial_trace(rho, keep, n, 2)
    assert abs(np.trace(red) - 1) <= 1e-10
    assert np.linalg.eigvalsh(red)[0] >= -1e-10


def test_density_validation():
    with pytest.raises(InvalidStateError):
        as_density_matrix(np.diag([0.6, 0.6]))
    with pytest.raises(InvalidStateError):
        as_density_matrix(np.diag([1.5, -0.5]))
