"""Complex Hermitian linear algebra and spectral calculus.

Every operation is a pure function of its arguments; nothing here keeps
state.  Matrices are plain ``numpy`` arrays.  Pseudo-power semantics (zero
eigenvalues stay zero for every exponent, including zero and imaginary
exponents) are governed by the single relative cutoff
``Tolerances.support_rel``.
"""

from __future__ import annotations

import math
from typing import Callable, NamedTuple, Sequence

import numpy as np
from scipy.special import logsumexp

from .config import DEFAULT_TOLERANCES
from .exceptions import (
    BadExponentError,
    NonHermitianError,
    NotPSDError,
    ShapeMismatchError,
)

__all__ = [
    "SpectralDecomposition",
    "dagger",
    "hermiticity_defect",
    "assert_hermitian",
    "eig_hermitian",
    "mat_power",
    "mat_fn",
    "mat_sqrt",
    "support_projector",
    "schatten_norm",
    "kron",
    "trace",
    "transpose",
    "partial_trace",
    "rng_from_seed",
    "random_ginibre",
    "random_unitary",
]


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return a.conj().T


def hermiticity_defect(a: np.ndarray) -> float:
    """Max-norm distance of ``a`` from its conjugate transpose."""
    return float(np.max(np.abs(a - dagger(a)))) if a.size else 0.0


def assert_hermitian(a: np.ndarray, tol: float | None = None) -> np.ndarray:
    """Validate Hermiticity within ``tol`` and return the Hermitian part.

    Raises
    ------
    NonHermitianError
        If ``max |a - a^dag|`` exceeds the tolerance.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ShapeMismatchError(f"expected a square matrix, got shape {a.shape}")
    tol = DEFAULT_TOLERANCES.hermiticity if tol is None else tol
    defect = hermiticity_defect(a)
    if defect > tol:
        raise NonHermitianError(
            f"matrix is not Hermitian: max |A - A^dag| = {defect:.3e} > {tol:.3e}"
        )
    return (a + dagger(a)) / 2


class SpectralDecomposition(NamedTuple):
    """Eigendecomposition of a Hermitian matrix.

    ``eigenvalues`` are real and sorted ascending; ``eigenvectors`` holds the
    corresponding orthonormal eigenvectors as columns.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        w, u = self
        return (u * w) @ dagger(u)


def eig_hermitian(a: np.ndarray, tol: float | None = None) -> SpectralDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending."""
    h = assert_hermitian(a, tol)
    w, u = np.linalg.eigh(h)
    return SpectralDecomposition(w, u)


def _support_cut(eigenvalues: np.ndarray, support_tol: float) -> float:
    scale = float(np.max(np.abs(eigenvalues))) if eigenvalues.size else 0.0
    return support_tol * scale


def _psd_eigs(
    a: np.ndarray, support_tol: float | None
) -> tuple[np.ndarray, np.ndarray, float]:
    """Eigensystem of a PSD matrix with the support cutoff applied.

    Returns (clipped eigenvalues, eigenvectors, cutoff).  Eigenvalues below
    the cutoff are exactly zero on return.
    """
    support_tol = DEFAULT_TOLERANCES.support_rel if support_tol is None else support_tol
    w, u = eig_hermitian(a)
    cut = _support_cut(w, support_tol)
    if w.size and float(w[0]) < -max(cut, np.finfo(float).tiny):
        raise NotPSDError(
            f"matrix has negative eigenvalue {w[0]:.3e} beyond cutoff {cut:.3e}"
        )
    w = np.where(w > cut, w, 0.0)
    return w, u, cut


def mat_power(a: np.ndarray, z: complex, support_tol: float | None = None) -> np.ndarray:
    """Pseudo-power ``a^z`` of a PSD matrix for a complex exponent.

    Strictly positive eigenvalues are raised to ``z``; eigenvalues in the
    kernel (below the support cutoff) map to zero for every ``z``, so
    ``mat_power(a, 0)`` is the support projector and purely imaginary
    exponents give partial isometries on the support.
    """
    w, u, _ = _psd_eigs(a, support_tol)
    f = np.zeros(w.shape, dtype=complex)
    pos = w > 0
    f[pos] = np.exp(z * np.log(w[pos]))
    return (u * f) @ dagger(u)


def mat_fn(
    a: np.ndarray,
    f: Callable[[np.ndarray], np.ndarray],
    support_tol: float | None = None,
) -> np.ndarray:
    """Apply a real scalar function to the positive spectrum of a PSD matrix.

    Zero eigenvalues map to zero regardless of ``f`` (support convention),
    which makes ``mat_fn(a, np.log)`` the support-restricted logarithm.
    """
    w, u, _ = _psd_eigs(a, support_tol)
    vals = np.zeros(w.shape, dtype=float)
    pos = w > 0
    vals[pos] = f(w[pos])
    out = (u * vals) @ dagger(u)
    return (out + dagger(out)) / 2


def mat_sqrt(a: np.ndarray, support_tol: float | None = None) -> np.ndarray:
    """Hermitian PSD square root with the support convention."""
    out = mat_power(a, 0.5, support_tol)
    return (out + dagger(out)) / 2


def support_projector(a: np.ndarray, support_tol: float | None = None) -> np.ndarray:
    """Orthogonal projector onto the strictly positive eigenspace of ``a``."""
    w, u, _ = _psd_eigs(a, support_tol)
    pos = (w > 0).astype(float)
    out = (u * pos) @ dagger(u)
    return (out + dagger(out)) / 2


def schatten_norm(m: np.ndarray, p: float) -> float:
    """Schatten norm of order ``p`` in [1, inf] of an arbitrary matrix.

    Computed from singular values; finite orders go through a log-domain sum
    so that large ``p`` does not overflow.
    """
    if not (p == np.inf or p >= 1):
        raise BadExponentError(f"Schatten order must satisfy p >= 1 or p = inf, got {p}")
    m = np.asarray(m, dtype=complex)
    s = np.linalg.svd(m, compute_uv=False)
    if p == np.inf:
        return float(s[0]) if s.size else 0.0
    s = s[s > 0]
    if s.size == 0:
        return 0.0
    return float(np.exp(logsumexp(p * np.log(s)) / p))


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product, left factor on the slow (first) index."""
    return np.kron(np.asarray(a), np.asarray(b))


def trace(a: np.ndarray) -> complex:
    return complex(np.trace(a))


def transpose(a: np.ndarray) -> np.ndarray:
    """Transpose in the computational basis (no conjugation)."""
    return np.asarray(a).T


def partial_trace(a: np.ndarray, dims: Sequence[int], leg: int) -> np.ndarray:
    """Trace out one tensor leg of an operator on a tensor-product space.

    ``dims`` is the dimension of each leg (slow index first, matching
    :func:`kron`); ``leg`` is the 0-based position to contract.
    """
    dims = tuple(int(d) for d in dims)
    n = math.prod(dims)
    a = np.asarray(a, dtype=complex)
    if a.shape != (n, n):
        raise ShapeMismatchError(f"operator shape {a.shape} does not match dims {dims}")
    if not 0 <= leg < len(dims):
        raise ShapeMismatchError(f"leg {leg} out of range for {len(dims)} legs")
    k = len(dims)
    t = a.reshape(dims + dims)
    t = np.trace(t, axis1=leg, axis2=leg + k)
    kept = math.prod(d for i, d in enumerate(dims) if i != leg)
    return t.reshape(kept, kept)


def rng_from_seed(seed: int, *stream: int) -> np.random.Generator:
    """Deterministic generator keyed by a seed plus optional stream labels."""
    return np.random.default_rng([int(seed), *(int(s) for s in stream)])


def random_ginibre(rows: int, cols: int, rng: np.random.Generator) -> np.ndarray:
    """Complex standard-Gaussian matrix."""
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-ish random unitary from the QR decomposition of a Ginibre matrix."""
    q, r = np.linalg.qr(random_ginibre(dim, dim, rng))
    phase = np.diag(r) / np.abs(np.diag(r))
    return q * phase
