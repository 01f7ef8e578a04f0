import numpy as np
import pytest
from hypothesis import given, strategies as st

from timeless.spectra import ConvergenceError, SymmetryError, jacobi_diagonalize, spectrum_from_hamiltonian


def random_hermitian(rng, n):
    x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return x + x.conj().T


def test_diagonal_input_sorted():
    w, v = jacobi_diagonalize(np.diag([3.0, 1.0]))
    np.testing.assert_allclose(w, [1.0, 3.0])
    np.testing.assert_allclose(np.abs(v), [[0, 1], [1, 0]])


def test_pauli_x():
    w, _ = jacobi_diagonalize([[0, 1], [1, 0]])
    np.testing.assert_allclose(w, [-1.0, 1.0], atol=1e-15)


def test_complex_pauli_y():
    w, v = jacobi_diagonalize([[0, -1j], [1j, 0]])
    np.testing.assert_allclose(w, [-1.0, 1.0], atol=1e-15)
    np.testing.assert_allclose(v @ np.diag(w) @ v.conj().T, [[0, -1j], [1j, 0]], atol=1e-15)


@given(st.integers(0, 2**32 - 1), st.integers(1, 12))
def test_reconstruction_and_unitarity(seed, n):
    h = random_hermitian(np.random.default_rng(seed), n)
    w, v = jacobi_diagonalize(h)
    norm = np.linalg.norm(h)
    assert np.linalg.norm(v @ np.diag(w) @ v.conj().T - h) <= 1e-10 * norm
    np.testing.assert_allclose(v.conj().T @ v, np.eye(n), atol=1e-12)
    assert np.all(np.diff(w) >= 0)
    # LAPACK as an independent cross-check on the eigenvalues
    np.testing.assert_allclose(w, np.linalg.eigvalsh(h), atol=1e-11 * max(norm, 1))


def test_random_4x4_residual(rng):
    h = random_hermitian(rng, 4)
    w, v = jacobi_diagonalize(h)
    assert np.linalg.norm(v @ np.diag(w) @ v.conj().T - h) <= 1e-10 * np.linalg.norm(h)


def test_degenerate_eigenvalues():
    q, _ = np.linalg.qr(random_hermitian(np.random.default_rng(3), 5))
    h = q @ np.diag([1.0, 1.0, 1.0, 2.0, 2.0]) @ q.conj().T
    w, _ = jacobi_diagonalize(h)
    np.testing.assert_allclose(w, [1, 1, 1, 2, 2], atol=1e-12)


def test_zero_matrix():
    w, v = jacobi_diagonalize(np.zeros((3, 3)))
    np.testing.assert_array_equal(w, 0.0)
    np.testing.assert_array_equal(v, np.eye(3))


def test_non_hermitian_rejected():
    with pytest.raises(SymmetryError):
        jacobi_diagonalize([[0, 1], [0, 0]])


def test_non_square_rejected():
    with pytest.raises(ValueError):
        jacobi_diagonalize(np.zeros((2, 3)))


def test_sweep_cap_raises():
    h = random_hermitian(np.random.default_rng(0), 8)
    with pytest.raises(ConvergenceError):
        jacobi_diagonalize(h, max_sweeps=1)


def test_spectrum_from_hamiltonian_rotates_states():
    h = np.array([[0.5, 0.5], [0.5, 0.5]])
    spec, v = spectrum_from_hamiltonian(h)
    np.testing.assert_allclose(spec.levels, [0.0, 1.0], atol=1e-15)
    plus = np.full((2, 2), 0.5)
    np.testing.assert_allclose(v.conj().T @ plus @ v, np.diag([0, 1]), atol=1e-15)
