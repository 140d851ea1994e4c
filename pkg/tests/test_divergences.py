"""Divergence family: values, limits, order relations, commuting reduction."""

import math

import numpy as np
import pytest

from renyilab import classical
from renyilab import matcore as mc
from renyilab.divergences import (
    alpha_monotonicity_scan,
    alt_check,
    dmax,
    fidelity,
    petz,
    renyi_limit,
    richardson_extrapolate,
    sandwiched,
    umegaki,
)
from renyilab.exceptions import BadAlphaError, SupportViolationError
from renyilab.lpnorms import vector_norm
from renyilab.states import StateFunctional, purify, random_density

HALF = StateFunctional.from_density(np.diag([0.5, 0.5]).astype(complex))
SKEW = StateFunctional.from_density(np.diag([0.25, 0.75]).astype(complex))
PLUS = StateFunctional.from_density(np.full((2, 2), 0.5, dtype=complex))
E1 = StateFunctional.from_density(np.diag([1.0, 0.0]).astype(complex))


def test_sandwiched_values():
    sigma = random_density(3, 3, 1)
    for alpha in (0.5, 0.8, 1.5, 2.0, 7.0):
        assert sandwiched(sigma, sigma, alpha).value == pytest.approx(0.0,
                                                                      abs=1e-10)
    # classical two-point value by hand
    assert sandwiched(HALF, SKEW, 2.0).value == pytest.approx(
        math.log(4.0 / 3.0), abs=1e-12)
    # pure-state reduction Q_2 = <psi| sigma^{-1/2} |psi>^2
    want = math.log((1.0 + 1.0 / math.sqrt(3.0)) ** 2)
    assert sandwiched(PLUS, SKEW, 2.0).value == pytest.approx(want, abs=1e-12)
    with pytest.raises(BadAlphaError):
        sandwiched(HALF, SKEW, 1.0)
    with pytest.raises(BadAlphaError):
        sandwiched(HALF, SKEW, 0.3)


def test_sandwiched_support_behavior():
    assert sandwiched(PLUS, E1, 2.0).value == np.inf
    assert math.isfinite(sandwiched(PLUS, E1, 0.75).value)


def test_petz_values():
    sigma = random_density(3, 3, 2)
    assert petz(sigma, sigma, 1.5).value == pytest.approx(0.0, abs=1e-10)
    # Tr rho^2 sigma^{-1} = <+|sigma^{-1}|+> = 8/3 by hand
    assert petz(PLUS, SKEW, 2.0).value == pytest.approx(math.log(8.0 / 3.0),
                                                        abs=1e-12)
    # commuting coincidence with the sandwiched value
    assert petz(HALF, SKEW, 2.0).value == pytest.approx(
        sandwiched(HALF, SKEW, 2.0).value, abs=1e-12)
    assert petz(PLUS, E1, 1.5).value == np.inf
    with pytest.raises(BadAlphaError):
        petz(HALF, SKEW, 2.5)


def test_umegaki_values():
    sigma = random_density(3, 3, 3)
    assert umegaki(sigma, sigma) == pytest.approx(0.0, abs=1e-10)
    assert umegaki(HALF, SKEW) == pytest.approx(
        math.log(2.0) - 0.5 * math.log(3.0), abs=1e-12)
    # pure state against the maximally mixed: log d
    assert umegaki(PLUS, HALF) == pytest.approx(math.log(2.0), abs=1e-12)
    assert umegaki(PLUS, E1) == np.inf


def test_fidelity_values():
    sigma = random_density(3, 3, 4)
    assert fidelity(sigma, sigma) == pytest.approx(1.0, abs=1e-10)
    assert fidelity(HALF, SKEW) == pytest.approx(
        (math.sqrt(0.125) + math.sqrt(0.375)) ** 2, abs=1e-12)
    e2 = StateFunctional.from_density(np.diag([0.0, 1.0]).astype(complex))
    assert fidelity(E1, e2) == pytest.approx(0.0, abs=1e-12)


def test_dmax_values():
    sigma = random_density(3, 3, 5)
    assert dmax(sigma, sigma) == pytest.approx(0.0, abs=1e-9)
    assert dmax(HALF, SKEW) == pytest.approx(math.log(2.0), abs=1e-12)
    assert dmax(PLUS, E1) == np.inf


def test_renyi_limits():
    rho = random_density(2, 2, 6)
    sigma = random_density(2, 2, 7)
    assert renyi_limit(rho, sigma, "half") == pytest.approx(
        -math.log(fidelity(rho, sigma)), abs=1e-8)
    want = umegaki(rho, sigma)
    assert renyi_limit(rho, sigma, "one_from_below") == pytest.approx(want,
                                                                      abs=1e-4)
    assert renyi_limit(rho, sigma, "one_from_above") == pytest.approx(want,
                                                                      abs=1e-4)
    # anchor: commuting pair reaches its max divergence by order 1024
    tail = renyi_limit(HALF, SKEW, "infinity")
    assert abs(tail - math.log(2.0)) <= 1e-3
    assert tail <= math.log(2.0) + 1e-12
    # monotone approach from below
    prev = -np.inf
    for k in range(1, 11):
        cur = sandwiched(HALF, SKEW, 2.0 ** k).value
        assert cur >= prev - 1e-12
        prev = cur
    with pytest.raises(SupportViolationError):
        renyi_limit(PLUS, E1, "infinity")
    with pytest.raises(SupportViolationError):
        renyi_limit(PLUS, E1, "one_from_above")


def test_richardson_extrapolate_power_series():
    # A(h) = 3 + 2h + 5h^2 + h^3 at h = 2^{-k} must recover 3
    vals = [3 + 2 * 2.0 ** -k + 5 * 4.0 ** -k + 8.0 ** -k for k in range(3, 13)]
    assert richardson_extrapolate(vals) == pytest.approx(3.0, abs=1e-7)


def test_alt_check_directions():
    rep = alt_check(HALF, SKEW, 4.0)
    assert rep.passed
    # commuting instances saturate the comparison
    assert rep.lhs == pytest.approx(rep.rhs, rel=1e-10)
    rep = alt_check(PLUS, SKEW, 4.0)
    assert rep.passed
    assert rep.lhs == pytest.approx(2.4880338717125835, abs=1e-10)
    assert rep.rhs == pytest.approx(8.0 / 3.0, abs=1e-10)
    assert rep.detail["routes_agree"]
    for seed in range(6):
        rho = random_density(3, 3, 800 + seed)
        sigma = random_density(3, 3, 850 + seed)
        for p in (1.0, 1.5, 3.0, 6.0):
            rep = alt_check(rho, sigma, p)
            assert rep.passed, (seed, p, rep.to_dict())


def test_alpha_monotonicity():
    rho = random_density(2, 2, 8)
    sigma = random_density(2, 2, 9)
    rep = alpha_monotonicity_scan(rho, sigma,
                                  [0.5, 0.75, 0.9, 1.1, 1.5, 2.0, 5.0, 20.0])
    assert rep.passed
    # pure state against the maximally mixed: constant log 2 across orders
    for alpha in (0.5, 0.75, 1.5, 2.0, 20.0):
        assert sandwiched(PLUS, HALF, alpha).value == pytest.approx(
            math.log(2.0), abs=1e-10)


def test_ordering_chain_and_route_identity():
    rho = random_density(3, 3, 10)
    sigma = random_density(3, 3, 11)
    d_half = sandwiched(rho, sigma, 0.5).value
    assert d_half == pytest.approx(-math.log(fidelity(rho, sigma)), abs=1e-9)
    d_one = umegaki(rho, sigma)
    d_two = sandwiched(rho, sigma, 2.0).value
    assert d_half <= d_one + 1e-9 <= d_two + 2e-9 <= dmax(rho, sigma) + 3e-9
    for alpha in (0.6, 1.5, 1.9):
        assert sandwiched(rho, sigma, alpha).value <= \
            petz(rho, sigma, alpha).value + 1e-9
    alpha = 1.7
    via_norm = 2 * alpha / (alpha - 1.0) * math.log(
        vector_norm(purify(rho), sigma, 2 * alpha))
    assert sandwiched(rho, sigma, alpha).value == pytest.approx(via_norm,
                                                                abs=1e-9)


def test_unitary_covariance():
    rng = mc.rng_from_seed(12)
    rho = random_density(3, 2, 13)
    sigma = random_density(3, 3, 14)
    u = mc.random_unitary(3, rng)
    rho_u = StateFunctional.from_density(u @ rho.density @ mc.dagger(u))
    sigma_u = StateFunctional.from_density(u @ sigma.density @ mc.dagger(u))
    for alpha in (0.5, 2.0, 5.0):
        assert sandwiched(rho_u, sigma_u, alpha).value == pytest.approx(
            sandwiched(rho, sigma, alpha).value, abs=1e-9)
    assert umegaki(rho_u, sigma_u) == pytest.approx(umegaki(rho, sigma),
                                                    abs=1e-9)
    assert fidelity(rho_u, sigma_u) == pytest.approx(fidelity(rho, sigma),
                                                     abs=1e-9)


def test_commuting_reduction_matches_classical():
    rng = mc.rng_from_seed(15)
    for _ in range(10):
        dim = int(rng.integers(2, 5))
        r = rng.dirichlet(np.ones(dim))
        s = rng.dirichlet(np.ones(dim)) * float(rng.uniform(0.5, 2.0))
        rho = StateFunctional.from_density(np.diag(r).astype(complex))
        sigma = StateFunctional.from_density(np.diag(s).astype(complex))
        for alpha in (0.5, 0.7, 1.3, 2.0, 5.0):
            assert sandwiched(rho, sigma, alpha).value == pytest.approx(
                classical.renyi_divergence(r, s, alpha), abs=1e-10)
            if alpha <= 2.0:
                assert petz(rho, sigma, alpha).value == pytest.approx(
                    classical.renyi_divergence(r, s, alpha), abs=1e-10)
        assert umegaki(rho, sigma) == pytest.approx(
            classical.kl_divergence(r, s), abs=1e-10)
        assert fidelity(rho, sigma) == pytest.approx(
            classical.fidelity(r, s), abs=1e-10)
        assert dmax(rho, sigma) == pytest.approx(
            classical.max_divergence(r, s), abs=1e-10)
        for p in (1.0, 1.5, 2.0, 3.0, np.inf):
            assert vector_norm(purify(rho), sigma, p) == pytest.approx(
                classical.weighted_lp_norm(r, s, p), abs=1e-10)


def test_petz_limits_and_finiteness():
    rho = random_density(3, 3, 16)
    sigma = random_density(3, 3, 17)
    for alpha in (0.25, 0.75, 1.25, 1.75, 2.0):
        assert math.isfinite(petz(rho, sigma, alpha).value)
    want = umegaki(rho, sigma)
    below = richardson_extrapolate(
        [petz(rho, sigma, 1 - 2.0 ** -k).value for k in range(3, 13)])
    above = richardson_extrapolate(
        [petz(rho, sigma, 1 + 2.0 ** -k).value for k in range(3, 13)])
    assert below == pytest.approx(want, abs=1e-4)
    assert above == pytest.approx(want, abs=1e-4)
