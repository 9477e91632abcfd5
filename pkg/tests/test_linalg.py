import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from relaycap import linalg
from relaycap.linalg import DecompositionError, cholesky, cholesky_psd, quadratic_form, ridge, solve_hermitian
from relaycap.specfun import bessel_j0


def random_pd(dim, seed):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return a @ a.conj().T + np.eye(dim)


def jakes_toeplitz(fdT, dim, delta=2):
    k = np.arange(dim)
    lags = np.abs(k[:, None] - k[None, :]) * delta
    return np.vectorize(lambda x: bessel_j0(2 * np.pi * fdT * x))(lags).astype(complex)


def test_identity_factor():
    assert np.array_equal(cholesky(np.eye(3)), np.eye(3))


def test_scalar_factor():
    assert cholesky([[4.0]])[0, 0] == 2.0


@pytest.mark.parametrize("seed", range(5))
def test_reconstruction(seed):
    m = random_pd(5, seed)
    low = cholesky(m)
    assert np.allclose(np.triu(low, 1), 0)
    assert np.all(low.diagonal().real > 0) and np.all(low.diagonal().imag == 0)
    err = np.linalg.norm(low @ low.conj().T - m) / np.linalg.norm(m)
    assert err < 1e-10


def test_matches_numpy_factor():
    m = random_pd(6, 42)
    assert np.allclose(cholesky(m), np.linalg.cholesky(m), atol=1e-12)


def test_not_pd_reports_pivot():
    m = np.diag([1.0, 2.0, -1.0])
    with pytest.raises(DecompositionError) as err:
        cholesky(m)
    assert err.value.pivot == 2
    assert err.value.value == pytest.approx(-1.0)


def test_rejects_non_hermitian():
    with pytest.raises(ValueError):
        cholesky([[1.0, 2.0], [0.0, 1.0]])


def test_solve_identity():
    rhs = np.array([1 + 2j, -3, 0.5j])
    assert np.allclose(solve_hermitian(np.eye(3), rhs), rhs)


def test_solve_diagonal():
    assert np.allclose(solve_hermitian(np.diag([2.0, 4.0]), [2.0, 4.0]), [1.0, 1.0])


@pytest.mark.parametrize("seed", range(5))
def test_solve_residual(seed):
    m = random_pd(6, seed)
    rhs = np.random.default_rng(seed + 100).standard_normal(6) + 0j
    x = solve_hermitian(m, rhs)
    assert np.linalg.norm(m @ x - rhs) <= 1e-9 * np.linalg.norm(rhs)


def test_solve_shape_check():
    with pytest.raises(ValueError):
        solve_hermitian(np.eye(2), [1.0, 2.0, 3.0])


def test_quadratic_form_examples():
    assert quadratic_form(np.eye(2), [1, 1]) == pytest.approx(2.0)
    assert quadratic_form([[4.0]], [2.0]) == pytest.approx(1.0)


@pytest.mark.parametrize("seed", range(5))
def test_quadratic_form_two_paths(seed):
    m = random_pd(5, seed)
    v = np.random.default_rng(seed).standard_normal(5) * (1 + 0.5j)
    direct = np.vdot(v, solve_hermitian(m, v)).real
    assert quadratic_form(m, v) == pytest.approx(direct, rel=1e-10)
    assert quadratic_form(m, v) == pytest.approx(np.vdot(v, np.linalg.solve(m, v)).real, rel=1e-10)


@given(st.floats(0.0, 0.5), st.integers(1, 16))
@settings(max_examples=60, deadline=None)
def test_jakes_toeplitz_factorises_after_ridge(fdT, dim):
    low = cholesky(ridge(jakes_toeplitz(fdT, dim)))
    assert np.all(np.isfinite(low))


def test_ridge_size():
    m = 3.0 * np.eye(4)
    assert np.allclose(ridge(m).diagonal().real - 3.0, 3.0 * linalg.RIDGE_SCALE)


def test_psd_factor_of_rank_one():
    m = np.ones((3, 3), dtype=complex)
    low = cholesky_psd(m)
    assert np.allclose(low @ low.conj().T, m)
    z = np.array([0.3 - 0.2j, 1.0, 2.0])
    sample = low @ z
    # perfectly correlated components come out bit-identical
    assert sample[0] == sample[1] == sample[2]


@pytest.mark.parametrize("seed", range(3))
def test_psd_factor_matches_strict_on_pd(seed):
    m = random_pd(4, seed)
    assert np.allclose(cholesky_psd(m), cholesky(m))


def test_psd_rejects_indefinite():
    with pytest.raises(DecompositionError):
        cholesky_psd(np.diag([1.0, -1.0]))
