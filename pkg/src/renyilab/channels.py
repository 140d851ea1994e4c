"""Quantum channels, Stinespring dilations, and data-processing checks.

A channel is stored through a Kraus family of shape (out_dim, in_dim)
matrices with the unitality constraint sum K_i^dag K_i = 1 on the input
space; the pre-dual action on densities is sum K_i D K_i^dag (trace
preserving).  The Stinespring isometry stacks the Kraus operators,
V = sum_i K_i (x) e_i, with the environment appended as the second factor
of the output algebra leg.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import matcore as mc
from .config import DEFAULT_TOLERANCES
from .exceptions import ShapeMismatchError
from .reporting import CheckReport
from .divergences import dmax, fidelity, sandwiched, umegaki
from .lpnorms import vector_norm
from .states import StateFunctional, VectorState, functional_of_vector, purify

__all__ = [
    "Channel",
    "StinespringDilation",
    "apply_predual",
    "stinespring",
    "embed_vector",
    "dpi_check_states",
    "dpi_check_vectors",
    "identity_channel",
    "depolarizing_channel",
    "measurement_channel",
    "random_channel",
]


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Channel:
    """A unital completely positive map, stored through its Kraus family.

    Zero Kraus operators are permitted (useful for padding the environment)
    and contribute nothing to the unitality sum.
    """

    kraus: tuple[np.ndarray, ...]

    @classmethod
    def from_kraus(cls, kraus, unitality_tol: float | None = None) -> "Channel":
        ops = tuple(_freeze(k) for k in kraus)
        if not ops:
            raise ShapeMismatchError("a channel needs at least one Kraus operator")
        shape = ops[0].shape
        if any(k.shape != shape for k in ops):
            raise ShapeMismatchError("all Kraus operators must share one shape")
        tol = DEFAULT_TOLERANCES.unitality if unitality_tol is None else unitality_tol
        gram = sum(mc.dagger(k) @ k for k in ops)
        defect = float(np.max(np.abs(gram - np.eye(shape[1]))))
        if defect > tol:
            raise ShapeMismatchError(
                f"Kraus family is not unital: |sum K^dag K - 1| = {defect:.3e}"
            )
        return cls(ops)

    @property
    def in_dim(self) -> int:
        return self.kraus[0].shape[1]

    @property
    def out_dim(self) -> int:
        return self.kraus[0].shape[0]

    @property
    def env_dim(self) -> int:
        return len(self.kraus)

    def heisenberg(self, a: np.ndarray) -> np.ndarray:
        """Unital action on output-algebra elements: sum K^dag a K."""
        return sum(mc.dagger(k) @ a @ k for k in self.kraus)


@dataclass(frozen=True)
class StinespringDilation:
    """Isometry V with V^dag (a (x) 1) V realizing the channel."""

    isometry: np.ndarray
    out_dim: int
    env_dim: int

    @property
    def in_dim(self) -> int:
        return self.isometry.shape[1]


def apply_predual(ch: Channel, rho: StateFunctional) -> StateFunctional:
    """Trace-preserving pre-dual action on densities: sum K D K^dag."""
    if rho.dim != ch.in_dim:
        raise ShapeMismatchError(
            f"state dim {rho.dim} does not match channel input {ch.in_dim}"
        )
    out = sum(k @ rho.density @ mc.dagger(k) for k in ch.kraus)
    return StateFunctional.from_density((out + mc.dagger(out)) / 2)


def stinespring(ch: Channel) -> StinespringDilation:
    """Stack the Kraus family into the canonical dilation isometry.

    Deterministic given the Kraus ordering: V = sum_i K_i (x) e_i with the
    environment basis vector on the second factor.
    """
    k_count = ch.env_dim
    v = np.zeros((ch.out_dim * k_count, ch.in_dim), dtype=complex)
    for i, k in enumerate(ch.kraus):
        e = np.zeros((k_count, 1))
        e[i, 0] = 1.0
        v += mc.kron(k, e)
    return StinespringDilation(_freeze(v), ch.out_dim, k_count)


def embed_vector(dil: StinespringDilation, xi: VectorState) -> VectorState:
    """Apply the dilation isometry on the algebra leg and re-bracket.

    The raw image has reshape matrix V M with the (out, env) pair on the
    algebra leg; the environment is then re-bracketed onto the commutant
    side, so the result has algebra leg ``out_dim`` and commutant leg
    ``env_dim * right_dim``.  Its left-leg functional is the pre-dual image
    of the input functional.
    """
    if xi.left_dim != dil.in_dim:
        raise ShapeMismatchError(
            f"vector algebra leg {xi.left_dim} does not match isometry input "
            f"{dil.in_dim}"
        )
    raw = dil.isometry @ xi.matrix  # (out*env) x right
    m_out = raw.reshape(dil.out_dim, dil.env_dim, xi.right_dim).reshape(
        dil.out_dim, dil.env_dim * xi.right_dim
    )
    return VectorState.from_matrix(m_out)


def dpi_check_states(ch: Channel, rho: StateFunctional, sigma: StateFunctional,
                     alpha: float, tol: float | None = None) -> CheckReport:
    """Data processing for the divergence family at order alpha,
    plus the relative-entropy case and monotonicity of the fidelity."""
    tol = DEFAULT_TOLERANCES.dpi_slack if tol is None else tol
    rho_out = apply_predual(ch, rho)
    sigma_out = apply_predual(ch, sigma)
    if alpha == np.inf:
        lhs = dmax(rho, sigma)
        rhs = dmax(rho_out, sigma_out)
    else:
        lhs = sandwiched(rho, sigma, alpha).value
        rhs = sandwiched(rho_out, sigma_out, alpha).value
    slack = float("inf") if lhs == float("inf") else lhs - rhs
    u_in, u_out = umegaki(rho, sigma), umegaki(rho_out, sigma_out)
    u_slack = float("inf") if u_in == float("inf") else u_in - u_out
    f_slack = fidelity(rho_out, sigma_out) - fidelity(rho, sigma)
    passed = slack >= -tol and u_slack >= -tol and f_slack >= -tol
    return CheckReport(
        "dpi_states", lhs, rhs, min(slack, u_slack, f_slack), passed,
        {"alpha": alpha, "umegaki_slack": u_slack, "fidelity_slack": f_slack},
    )


def dpi_check_vectors(ch: Channel, xi: VectorState, sigma: StateFunctional,
                      p: float, tol: float | None = None) -> CheckReport:
    """Vector-level data processing through the Stinespring embedding:
    ||V xi||_{p, E(sigma)} <= ||xi||_{p, sigma} for p >= 2, reversed for
    1 <= p <= 2, for arbitrary doubled-space vectors xi."""
    tol = DEFAULT_TOLERANCES.dpi_slack if tol is None else tol
    dil = stinespring(ch)
    sigma_out = apply_predual(ch, sigma)
    embedded = embed_vector(dil, xi)
    norm_in = vector_norm(xi, sigma, p)
    norm_out = vector_norm(embedded, sigma_out, p)
    if p >= 2:
        slack = float("inf") if norm_in == float("inf") else norm_in - norm_out
    else:
        slack = norm_out - norm_in
    return CheckReport("dpi_vectors", norm_out, norm_in, slack, slack >= -tol,
                       {"p": p})


def identity_channel(dim: int) -> Channel:
    return Channel.from_kraus([np.eye(dim, dtype=complex)])


def depolarizing_channel(dim: int) -> Channel:
    """Completely depolarizing map: every state to the maximally mixed one."""
    kraus = []
    for i in range(dim):
        for j in range(dim):
            k = np.zeros((dim, dim), dtype=complex)
            k[i, j] = 1.0 / math.sqrt(dim)
            kraus.append(k)
    return Channel.from_kraus(kraus)


def measurement_channel(effect: np.ndarray) -> Channel:
    """Two-outcome measurement {T, 1-T} written as a channel onto diagonal
    2x2 densities: D maps to diag(Tr(T D), Tr((1-T) D))."""
    t = mc.assert_hermitian(effect)
    dim = t.shape[0]
    w, u = mc.eig_hermitian(t)
    if w.size and (w[0] < -DEFAULT_TOLERANCES.test_operator
                   or w[-1] > 1 + DEFAULT_TOLERANCES.test_operator):
        raise ShapeMismatchError("effect operator must satisfy 0 <= T <= 1")
    w = np.clip(w, 0.0, 1.0)
    kraus = []
    basis = np.eye(2, dtype=complex)
    for idx in range(dim):
        vec = u[:, idx:idx + 1]
        for outcome, weight in ((0, w[idx]), (1, 1.0 - w[idx])):
            if weight <= 0:
                continue
            kraus.append(math.sqrt(weight) * basis[:, outcome:outcome + 1]
                         @ mc.dagger(vec))
    return Channel.from_kraus(kraus)


def random_channel(in_dim: int, out_dim: int, n_kraus: int, seed: int) -> Channel:
    """Seeded random unital-CP channel with the requested Kraus count.

    Built from a Haar-ish isometry from the input space into
    out_dim * n_kraus dimensions, sliced into Kraus blocks.
    """
    rng = mc.rng_from_seed(seed, in_dim, out_dim, n_kraus, 13)
    total = out_dim * n_kraus
    if total < in_dim:
        raise ShapeMismatchError(
            f"need out_dim * n_kraus >= in_dim, got {total} < {in_dim}"
        )
    q, r = np.linalg.qr(mc.random_ginibre(total, in_dim, rng))
    v = q * (np.diag(r) / np.abs(np.diag(r)))
    kraus = [v[i * out_dim:(i + 1) * out_dim, :] for i in range(n_kraus)]
    return Channel.from_kraus(kraus)
