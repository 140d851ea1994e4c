"""Channels, dilations, embeddings, and data-processing checks."""

import math

import numpy as np
import pytest

from renyilab import matcore as mc
from renyilab.channels import (
    Channel,
    apply_predual,
    depolarizing_channel,
    dpi_check_states,
    dpi_check_vectors,
    embed_vector,
    identity_channel,
    measurement_channel,
    random_channel,
    stinespring,
)
from renyilab.divergences import sandwiched
from renyilab.exceptions import ShapeMismatchError
from renyilab.lpnorms import vector_norm
from renyilab.states import (
    StateFunctional,
    functional_of_vector,
    purify,
    random_density,
    random_unit_vector,
)


def test_apply_predual_identity_and_depolarizing():
    rho = random_density(3, 3, 1)
    out = apply_predual(identity_channel(3), rho)
    np.testing.assert_allclose(out.density, rho.density, atol=1e-12)
    out = apply_predual(depolarizing_channel(3), rho)
    np.testing.assert_allclose(out.density, np.eye(3) / 3, atol=1e-10)
    assert out.trace_value == pytest.approx(1.0, abs=1e-10)


def test_measurement_channel_against_direct_traces():
    rng = mc.rng_from_seed(2)
    g = mc.random_ginibre(3, 3, rng)
    h = g @ mc.dagger(g)
    effect = h / (np.linalg.norm(h, 2) * 1.5)
    ch = measurement_channel(effect)
    rho = random_density(3, 2, 3)
    out = apply_predual(ch, rho)
    want = np.diag([
        np.trace(rho.density @ effect).real,
        np.trace(rho.density @ (np.eye(3) - effect)).real,
    ])
    np.testing.assert_allclose(out.density, want, atol=1e-10)


def test_stinespring_shapes_and_isometry():
    dil = stinespring(identity_channel(2))
    assert dil.env_dim == 1
    np.testing.assert_allclose(dil.isometry, np.eye(2), atol=1e-12)
    rng = mc.rng_from_seed(4)
    u = mc.random_unitary(3, rng)
    dil = stinespring(Channel.from_kraus([u]))
    np.testing.assert_allclose(dil.isometry, u, atol=1e-12)
    ch = random_channel(2, 2, 2, 5)
    dil = stinespring(ch)
    np.testing.assert_allclose(mc.dagger(dil.isometry) @ dil.isometry,
                               np.eye(2), atol=1e-9)
    # reconstruction E(a) = V^dag (a (x) 1) V on a basis of matrices
    for i in range(2):
        for j in range(2):
            a = np.zeros((2, 2), dtype=complex)
            a[i, j] = 1.0
            via_v = mc.dagger(dil.isometry) @ mc.kron(a, np.eye(2)) @ dil.isometry
            np.testing.assert_allclose(via_v, ch.heisenberg(a), atol=1e-9)


def test_stinespring_round_trip_via_partial_trace():
    ch = random_channel(3, 2, 3, 6)
    dil = stinespring(ch)
    rho = random_density(3, 3, 7)
    big = dil.isometry @ rho.density @ mc.dagger(dil.isometry)
    out = mc.partial_trace(big, (2, 3), leg=1)
    np.testing.assert_allclose(out, apply_predual(ch, rho).density, atol=1e-9)


def test_embed_vector_identity_and_unitary():
    rho = random_density(2, 2, 8)
    xi = purify(rho)
    out = embed_vector(stinespring(identity_channel(2)), xi)
    np.testing.assert_allclose(out.matrix, xi.matrix, atol=1e-12)
    rng = mc.rng_from_seed(9)
    u = mc.random_unitary(2, rng)
    out = embed_vector(stinespring(Channel.from_kraus([u])), xi)
    np.testing.assert_allclose(out.matrix, u @ xi.matrix, atol=1e-12)


def test_embed_vector_functional_is_predual_output():
    ch = random_channel(3, 2, 2, 10)
    rho = random_density(3, 3, 11)
    out = embed_vector(stinespring(ch), purify(rho))
    assert out.left_dim == 2 and out.right_dim == 2 * 3
    np.testing.assert_allclose(functional_of_vector(out).density,
                               apply_predual(ch, rho).density, atol=1e-9)
    with pytest.raises(ShapeMismatchError):
        embed_vector(stinespring(ch), random_unit_vector(2, 1))


def test_zero_kraus_padding_keeps_norms():
    """Enlarging the environment with zero operators changes nothing:
    the weighted norms of embedded vectors are representation independent."""
    dim = 3
    sigma = random_density(dim, dim, 12)
    base = identity_channel(dim)
    padded = Channel.from_kraus([np.eye(dim, dtype=complex),
                                 np.zeros((dim, dim), dtype=complex),
                                 np.zeros((dim, dim), dtype=complex)])
    for seed in range(5):
        xi = random_unit_vector(dim, 500 + seed)
        for p in (1.0, 1.5, 2.0, 4.0, np.inf):
            want = vector_norm(embed_vector(stinespring(base), xi), sigma, p)
            got = vector_norm(embed_vector(stinespring(padded), xi), sigma, p)
            if math.isinf(want):
                assert math.isinf(got)
            else:
                assert got == pytest.approx(want, rel=1e-9)


def test_dpi_states_identity_and_depolarizing():
    rho = random_density(2, 2, 13)
    sigma = random_density(2, 2, 14)
    rep = dpi_check_states(identity_channel(2), rho, sigma, 2.0)
    assert rep.passed
    assert rep.lhs == pytest.approx(rep.rhs, abs=1e-9)  # equality
    rep = dpi_check_states(depolarizing_channel(2), rho, sigma, 2.0)
    assert rep.passed
    assert rep.rhs == pytest.approx(0.0, abs=1e-9)  # both outputs I/2


def test_dpi_states_randomized():
    for seed in range(8):
        dim = 2 + seed % 2
        ch = random_channel(dim, 2, 2, 60 + seed)
        rho = random_density(dim, dim, 70 + seed)
        sigma = random_density(dim, dim, 80 + seed)
        for alpha in (0.5, 0.75, 1.5, 2.0, np.inf):
            rep = dpi_check_states(ch, rho, sigma, alpha)
            assert rep.passed, (seed, alpha, rep.to_dict())


def test_dpi_measurement_matches_two_outcome_reduction():
    from renyilab import classical
    rho = random_density(2, 2, 15)
    sigma = random_density(2, 2, 16)
    rng = mc.rng_from_seed(17)
    g = mc.random_ginibre(2, 2, rng)
    h = g @ mc.dagger(g)
    effect = h / (np.linalg.norm(h, 2) * 1.3)
    ch = measurement_channel(effect)
    for alpha in (1.5, 2.0):
        rep = dpi_check_states(ch, rho, sigma, alpha)
        assert rep.passed
        # output divergence equals the classical two-outcome value
        measured = classical.renyi_divergence(
            [rho.value(effect).real, 1 - rho.value(effect).real],
            [sigma.value(effect).real, 1 - sigma.value(effect).real], alpha)
        assert rep.rhs == pytest.approx(measured, abs=1e-10)
        assert sandwiched(rho, sigma, alpha).value >= measured - 1e-9


def test_dpi_vectors_identity_and_p2():
    rho = random_density(2, 2, 18)
    sigma = random_density(2, 2, 19)
    xi = purify(rho)
    rep = dpi_check_vectors(identity_channel(2), xi, sigma, 4.0)
    assert rep.passed
    assert rep.lhs == pytest.approx(rep.rhs, abs=1e-10)
    ch = random_channel(2, 2, 2, 20)
    rep = dpi_check_vectors(ch, xi, sigma, 2.0)
    assert rep.passed
    assert rep.lhs == pytest.approx(rep.rhs, abs=1e-9)  # isometries preserve p=2


def test_dpi_vectors_randomized_both_directions():
    count = 0
    for seed in range(10):
        dim = 2 + seed % 2
        ch = random_channel(dim, 2, 2, 90 + seed)
        sigma = random_density(dim, dim, 95 + seed)
        for vec_seed in range(3):
            xi = random_unit_vector(dim, 700 + 10 * seed + vec_seed)
            for p in (1.0, 1.5, 4.0, np.inf):
                rep = dpi_check_vectors(ch, xi, sigma, p)
                assert rep.passed, (seed, p, rep.to_dict())
                count += 1
    assert count == 120


def test_channel_validation():
    with pytest.raises(ShapeMismatchError):
        Channel.from_kraus([np.eye(2) * 0.5])
    with pytest.raises(ShapeMismatchError):
        Channel.from_kraus([np.eye(2), np.eye(3)])
    with pytest.raises(ShapeMismatchError):
        apply_predual(identity_channel(2), random_density(3, 3, 1))
