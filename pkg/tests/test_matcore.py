"""Spectral calculus and matrix utility tests."""

import numpy as np
import pytest

from renyilab import matcore as mc
from renyilab.exceptions import (
    BadExponentError,
    NonHermitianError,
    NotPSDError,
    ShapeMismatchError,
)

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)


def test_eig_identity_and_diagonal():
    w, _ = mc.eig_hermitian(np.eye(2))
    np.testing.assert_allclose(w, [1, 1])
    w, _ = mc.eig_hermitian(np.diag([3.0, -1.0]))
    np.testing.assert_allclose(w, [-1, 3])  # ascending


def test_eig_pauli_x_by_hand():
    # characteristic polynomial l^2 - 1: eigenpairs (-1, (1,-1)/sqrt2), (1, (1,1)/sqrt2)
    w, u = mc.eig_hermitian(PAULI_X)
    np.testing.assert_allclose(w, [-1, 1], atol=1e-12)
    minus = np.array([1, -1]) / np.sqrt(2)
    plus = np.array([1, 1]) / np.sqrt(2)
    assert abs(np.vdot(minus, u[:, 0])) == pytest.approx(1.0, abs=1e-12)
    assert abs(np.vdot(plus, u[:, 1])) == pytest.approx(1.0, abs=1e-12)


def test_eig_reconstruction_and_orthonormality():
    rng = mc.rng_from_seed(5)
    for dim in (2, 3, 5):
        a = mc.random_ginibre(dim, dim, rng)
        h = a + mc.dagger(a)
        dec = mc.eig_hermitian(h)
        scale = 1 + np.abs(dec.eigenvalues).max()
        assert np.max(np.abs(dec.reconstruct() - h)) <= 1e-9 * scale
        gram = mc.dagger(dec.eigenvectors) @ dec.eigenvectors
        assert np.max(np.abs(gram - np.eye(dim))) <= 1e-10


def test_eig_rejects_non_hermitian():
    with pytest.raises(NonHermitianError):
        mc.eig_hermitian(np.array([[0, 1], [0, 0]], dtype=complex))
    with pytest.raises(ShapeMismatchError):
        mc.eig_hermitian(np.ones((2, 3)))


def test_mat_power_identity_any_exponent():
    out = mc.mat_power(np.eye(2), 0.37 + 2j)
    np.testing.assert_allclose(out, np.eye(2), atol=1e-12)


def test_mat_power_support_convention():
    out = mc.mat_power(np.diag([4.0, 0.0]), 0.5)
    np.testing.assert_allclose(out, np.diag([2.0, 0.0]), atol=1e-12)
    # zero eigenvalues stay zero even at exponent zero
    out = mc.mat_power(np.diag([4.0, 0.0]), 0.0)
    np.testing.assert_allclose(out, np.diag([1.0, 0.0]), atol=1e-12)


def test_mat_power_imaginary_exponent_by_hand():
    # 2^{i pi / ln 2} = e^{i pi} = -1
    out = mc.mat_power(np.array([[2.0]]), 1j * np.pi / np.log(2.0))
    np.testing.assert_allclose(out, [[-1.0]], atol=1e-12)


def test_mat_power_rejects_negative():
    with pytest.raises(NotPSDError):
        mc.mat_power(np.diag([1.0, -0.5]), 0.5)


def test_mat_power_semigroup_on_support():
    rng = mc.rng_from_seed(7)
    for rank, dim in ((3, 3), (2, 3)):
        g = mc.random_ginibre(dim, rank, rng)
        a = g @ mc.dagger(g)
        for _ in range(5):
            z1 = complex(rng.uniform(-2, 2), rng.uniform(-3, 3))
            z2 = complex(rng.uniform(-2, 2), rng.uniform(-3, 3))
            lhs = mc.mat_power(a, z1) @ mc.mat_power(a, z2)
            rhs = mc.mat_power(a, z1 + z2)
            assert np.max(np.abs(lhs - rhs)) <= 1e-8


def test_mat_power_imaginary_is_isometry_on_support():
    rng = mc.rng_from_seed(9)
    g = mc.random_ginibre(4, 2, rng)
    a = g @ mc.dagger(g)
    proj = mc.support_projector(a)
    for _ in range(5):
        t = rng.uniform(-5, 5)
        v = mc.random_ginibre(4, 1, rng).ravel()
        lhs = np.linalg.norm(mc.mat_power(a, 1j * t) @ v)
        rhs = np.linalg.norm(proj @ v)
        assert lhs == pytest.approx(rhs, abs=1e-9)


def test_mat_fn_log_and_square():
    out = mc.mat_fn(np.diag([1.0, np.e]), np.log)
    np.testing.assert_allclose(out, np.diag([0.0, 1.0]), atol=1e-12)
    out = mc.mat_fn(np.diag([1.0, 0.0]), np.log)
    np.testing.assert_allclose(out, np.zeros((2, 2)), atol=1e-12)
    out = mc.mat_fn(np.array([[3.0]]), lambda x: x ** 2)
    np.testing.assert_allclose(out, [[9.0]], atol=1e-12)


def test_schatten_norm_values():
    assert mc.schatten_norm(np.eye(3), 2) == pytest.approx(np.sqrt(3), abs=1e-12)
    assert mc.schatten_norm(np.diag([3.0, 4.0]), np.inf) == pytest.approx(4.0)
    assert mc.schatten_norm(np.diag([3.0, 4.0]), 1) == pytest.approx(7.0)
    with pytest.raises(BadExponentError):
        mc.schatten_norm(np.eye(2), 0.5)


def test_schatten_unitary_invariance():
    rng = mc.rng_from_seed(13)
    a = mc.random_ginibre(3, 3, rng)
    u = mc.random_unitary(3, rng)
    v = mc.random_unitary(3, rng)
    for p in (1, 1.7, 2, 4, np.inf):
        base = mc.schatten_norm(a, p)
        rotated = mc.schatten_norm(u @ a @ v, p)
        assert rotated == pytest.approx(base, rel=1e-9)


def test_kron_partial_trace_transpose():
    a = np.diag([2.0, 5.0])
    np.testing.assert_allclose(mc.kron(a, np.eye(2)),
                               np.diag([2.0, 2.0, 5.0, 5.0]))
    rng = mc.rng_from_seed(17)
    b = mc.random_ginibre(3, 3, rng)
    b = b + mc.dagger(b)
    out = mc.partial_trace(mc.kron(a, b), (2, 3), leg=1)
    np.testing.assert_allclose(out, a * np.trace(b), atol=1e-12)
    out = mc.partial_trace(mc.kron(a, b), (2, 3), leg=0)
    np.testing.assert_allclose(out, b * np.trace(a), atol=1e-12)
    np.testing.assert_allclose(mc.transpose(PAULI_X), PAULI_X)
    with pytest.raises(ShapeMismatchError):
        mc.partial_trace(np.eye(5), (2, 3), leg=0)


def test_support_projector():
    np.testing.assert_allclose(mc.support_projector(np.diag([0.3, 0.0])),
                               np.diag([1.0, 0.0]), atol=1e-12)
    rng = mc.rng_from_seed(19)
    g = mc.random_ginibre(3, 3, rng)
    full = g @ mc.dagger(g) + 0.1 * np.eye(3)
    np.testing.assert_allclose(mc.support_projector(full), np.eye(3), atol=1e-9)
    plus = np.full((2, 2), 0.5)
    proj = mc.support_projector(plus)
    np.testing.assert_allclose(proj, plus, atol=1e-12)
    assert np.max(np.abs(proj @ proj - proj)) <= 1e-10
