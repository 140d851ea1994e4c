"""States, implementing vectors, support relations, and spatial derivatives.

The standard representation puts the algebra on the left tensor leg,
``pi(x) = x (x) 1``, and the commutant on the right leg.  A vector in the
doubled space is stored through its reshape matrix ``M`` (``xi_{ij} = M_{ij}``),
so the canonical purification of a density ``D`` has ``M = D^{1/2}`` and a
vector with reshape ``M`` implements the functional with density ``M M^dag``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import matcore as mc
from .config import DEFAULT_TOLERANCES
from .exceptions import BadRankError, ShapeMismatchError

__all__ = [
    "StateFunctional",
    "VectorState",
    "SpatialDerivative",
    "trace_vector",
    "purify",
    "functional_of_vector",
    "commutant_functional",
    "supported_on",
    "dominance_constant",
    "spatial_derivative",
    "relation_operator",
    "random_density",
    "random_unit_vector",
    "random_isometry",
]


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class StateFunctional:
    """A positive linear functional, stored through its density matrix.

    ``normalized`` records whether the trace is one within tolerance; general
    positive functionals (trace != 1) are allowed everywhere a weight is
    expected.
    """

    density: np.ndarray
    normalized: bool

    @classmethod
    def from_density(cls, density: np.ndarray,
                     trace_tol: float | None = None) -> "StateFunctional":
        d = mc.assert_hermitian(density)
        # PSD check with the standard support cutoff
        mc._psd_eigs(d, None)
        trace_tol = DEFAULT_TOLERANCES.trace if trace_tol is None else trace_tol
        tr = float(np.trace(d).real)
        return cls(_freeze(d), abs(tr - 1.0) <= trace_tol)

    @property
    def dim(self) -> int:
        return self.density.shape[0]

    @property
    def trace_value(self) -> float:
        return float(np.trace(self.density).real)

    def value(self, x: np.ndarray) -> complex:
        """Evaluate the functional on an algebra element: Tr(D x)."""
        return complex(np.trace(self.density @ x))


@dataclass(frozen=True)
class VectorState:
    """A vector in the doubled space, stored as its reshape matrix.

    ``matrix`` has shape (left_dim, right_dim); the flat vector is the
    row-major ravel, consistent with :func:`renyilab.matcore.kron` ordering.
    """

    matrix: np.ndarray

    @classmethod
    def from_matrix(cls, matrix: np.ndarray) -> "VectorState":
        m = np.asarray(matrix, dtype=complex)
        if m.ndim != 2:
            raise ShapeMismatchError(f"reshape matrix must be 2-d, got shape {m.shape}")
        return cls(_freeze(m))

    @classmethod
    def from_vector(cls, vec: np.ndarray, left_dim: int, right_dim: int) -> "VectorState":
        v = np.asarray(vec, dtype=complex).ravel()
        if v.size != left_dim * right_dim:
            raise ShapeMismatchError(
                f"vector of length {v.size} does not factor as {left_dim}x{right_dim}"
            )
        return cls.from_matrix(v.reshape(left_dim, right_dim))

    @property
    def left_dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def right_dim(self) -> int:
        return self.matrix.shape[1]

    @property
    def vector(self) -> np.ndarray:
        return self.matrix.ravel()

    @property
    def hilbert_norm(self) -> float:
        return float(np.linalg.norm(self.matrix))


def trace_vector(dim: int) -> VectorState:
    """The vector implementing the trace: reshape matrix = identity."""
    return VectorState.from_matrix(np.eye(dim, dtype=complex))


def purify(rho: StateFunctional) -> VectorState:
    """Canonical purification: reshape matrix D_rho^{1/2} on the doubled space."""
    return VectorState.from_matrix(mc.mat_sqrt(rho.density))


def functional_of_vector(xi: VectorState) -> StateFunctional:
    """Functional implemented on the algebra (left leg): density M M^dag."""
    return StateFunctional.from_density(xi.matrix @ mc.dagger(xi.matrix))


def commutant_functional(xi: VectorState) -> StateFunctional:
    """Functional implemented on the commutant (right leg): density (M^dag M)^T."""
    return StateFunctional.from_density((mc.dagger(xi.matrix) @ xi.matrix).T)


def supported_on(rho: StateFunctional, sigma: StateFunctional,
                 support_tol: float | None = None) -> bool:
    """Whether rho is supported on sigma (rho << sigma).

    True iff compressing D_rho to the support of D_sigma leaves it unchanged.
    """
    if rho.dim != sigma.dim:
        raise ShapeMismatchError("functionals live on different algebras")
    p = mc.support_projector(sigma.density, support_tol)
    d = rho.density
    defect = float(np.max(np.abs(p @ d @ p - d))) if d.size else 0.0
    scale = max(1.0, float(np.linalg.norm(d, 2)))
    tol = DEFAULT_TOLERANCES.support_rel if support_tol is None else support_tol
    return defect <= 1e3 * tol * scale


def dominance_constant(rho: StateFunctional, sigma: StateFunctional,
                       support_tol: float | None = None) -> float:
    """Least C with rho <= C sigma; +inf when rho is not dominated by sigma.

    On the support the constant is the top eigenvalue of
    sigma^{-1/2} rho sigma^{-1/2} (pseudo-inverse powers).
    """
    if not supported_on(rho, sigma, support_tol):
        return float("inf")
    s_inv_half = mc.mat_power(sigma.density, -0.5, support_tol)
    middle = s_inv_half @ rho.density @ s_inv_half
    w, _ = mc.eig_hermitian((middle + mc.dagger(middle)) / 2)
    return float(max(w[-1], 0.0)) if w.size else 0.0


@dataclass(frozen=True)
class SpatialDerivative:
    """The relative modular / spatial derivative operator on the doubled space.

    ``matrix`` equals kron(D_omega, transpose(pinv(D_sigma))), with the
    inverse taken on the support of sigma.
    """

    matrix: np.ndarray
    omega: StateFunctional
    sigma: StateFunctional

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def power(self, z: complex, support_tol: float | None = None) -> np.ndarray:
        """Pseudo-power of the operator (zero eigenvalues stay zero)."""
        return mc.mat_power(self.matrix, z, support_tol)

    def apply(self, xi: VectorState, z: complex = 1.0,
              support_tol: float | None = None) -> VectorState:
        """Apply a power of the operator to a doubled-space vector."""
        if xi.left_dim * xi.right_dim != self.dim:
            raise ShapeMismatchError("vector does not live on this doubled space")
        out = self.power(z, support_tol) @ xi.vector
        return VectorState.from_vector(out, xi.left_dim, xi.right_dim)


def spatial_derivative(omega: StateFunctional,
                       sigma: StateFunctional,
                       support_tol: float | None = None) -> SpatialDerivative:
    """Build D_omega (x) (D_sigma^{-1})^T with the pseudo-inverse on supp(sigma)."""
    if omega.dim != sigma.dim:
        raise ShapeMismatchError("weight functionals live on different algebras")
    inv_t = mc.mat_power(sigma.density, -1.0, support_tol).T
    base = mc.kron(omega.density, inv_t)
    return SpatialDerivative(_freeze((base + mc.dagger(base)) / 2), omega, sigma)


def relation_operator(xi: VectorState, sigma: StateFunctional,
                      support_tol: float | None = None) -> np.ndarray:
    """Right-leg factor of the map sending pi(a) sigma_vec to pi(a) xi.

    For a vector with reshape matrix M this is ``M^T (D_sigma^{-1/2})^T``
    (pseudo-inverse on the support); its operator norm squared equals the
    dominance constant of the implemented functional relative to sigma.
    For canonical purifications the factor reduces to
    ``(D_rho^{1/2})^T (D_sigma^{-1/2})^T``.
    """
    if xi.left_dim != sigma.dim:
        raise ShapeMismatchError("vector's algebra leg does not match sigma")
    s_inv_half = mc.mat_power(sigma.density, -0.5, support_tol)
    return xi.matrix.T @ s_inv_half.T


def random_density(dim: int, rank: int, seed: int) -> StateFunctional:
    """Seeded random density of exact rank: GG^dag / Tr on a rank-sized factor."""
    if not 1 <= rank <= dim:
        raise BadRankError(f"rank must lie in [1, {dim}], got {rank}")
    rng = mc.rng_from_seed(seed, dim, rank)
    g = mc.random_ginibre(dim, rank, rng)
    d = g @ mc.dagger(g)
    return StateFunctional.from_density(d / np.trace(d).real)


def random_unit_vector(dim: int, seed: int, right_dim: int | None = None) -> VectorState:
    """Seeded Haar-random unit vector on the doubled space dim x right_dim."""
    right_dim = dim if right_dim is None else right_dim
    rng = mc.rng_from_seed(seed, dim, right_dim, 7)
    m = mc.random_ginibre(dim, right_dim, rng)
    return VectorState.from_matrix(m / np.linalg.norm(m))


def random_isometry(n: int, m: int, seed: int) -> np.ndarray:
    """Seeded random isometry V of shape (m, n) with V^dag V = 1_n."""
    if m < n:
        raise BadRankError(f"isometry needs m >= n, got n={n}, m={m}")
    rng = mc.rng_from_seed(seed, n, m, 11)
    q, r = np.linalg.qr(mc.random_ginibre(m, n, rng))
    phase = np.diag(r) / np.abs(np.diag(r))
    return q * phase
