"""Scalar (commutative) formulas on probability weight vectors.

These are the independent cross-check route for commuting instances: plain
sums over nonnegative weight vectors, sharing no code with the matrix
machinery.  All logarithms are natural.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

__all__ = [
    "renyi_divergence",
    "kl_divergence",
    "fidelity",
    "max_divergence",
    "weighted_lp_norm",
    "strong_converse_exponent",
]


def _clean(w: Sequence[float]) -> np.ndarray:
    arr = np.asarray(w, dtype=float)
    return np.where(arr > 0, arr, 0.0)


def renyi_divergence(r: Sequence[float], s: Sequence[float], alpha: float) -> float:
    """Classical Renyi divergence sum(r^alpha s^(1-alpha)) route, in nats."""
    r, s = _clean(r), _clean(s)
    if alpha > 1 and np.any((r > 0) & (s == 0)):
        return float("inf")
    mask = r > 0 if alpha > 1 else (r > 0) & (s > 0)
    if not np.any(mask):
        return float("inf") if alpha < 1 else 0.0
    total = float(np.sum(r[mask] ** alpha * s[mask] ** (1.0 - alpha)))
    if total <= 0:
        return float("inf")
    return math.log(total) / (alpha - 1.0)


def kl_divergence(r: Sequence[float], s: Sequence[float]) -> float:
    """Classical relative entropy sum r log(r/s), in nats."""
    r, s = _clean(r), _clean(s)
    if np.any((r > 0) & (s == 0)):
        return float("inf")
    mask = r > 0
    return float(np.sum(r[mask] * (np.log(r[mask]) - np.log(s[mask]))))


def fidelity(r: Sequence[float], s: Sequence[float]) -> float:
    """Squared Bhattacharyya overlap (sum sqrt(r s))^2."""
    r, s = _clean(r), _clean(s)
    return float(np.sum(np.sqrt(r * s)) ** 2)


def max_divergence(r: Sequence[float], s: Sequence[float]) -> float:
    """log of the least C with r <= C s pointwise."""
    r, s = _clean(r), _clean(s)
    if np.any((r > 0) & (s == 0)):
        return float("inf")
    mask = r > 0
    if not np.any(mask):
        return float("-inf")
    return float(np.log(np.max(r[mask] / s[mask])))


def weighted_lp_norm(r: Sequence[float], s: Sequence[float], p: float) -> float:
    """Scalar weighted norm (sum r^{p/2} s^{1-p/2})^{1/p}; +inf for p >= 2
    when r has mass off the support of s."""
    r, s = _clean(r), _clean(s)
    if p == np.inf:
        if np.any((r > 0) & (s == 0)):
            return float("inf")
        mask = r > 0
        return float(np.sqrt(np.max(r[mask] / s[mask]))) if np.any(mask) else 0.0
    if p >= 2 and np.any((r > 0) & (s == 0)):
        return float("inf")
    mask = (r > 0) & (s > 0)
    if not np.any(mask):
        return 0.0
    total = float(np.sum(r[mask] ** (p / 2.0) * s[mask] ** (1.0 - p / 2.0)))
    return total ** (1.0 / p)


def strong_converse_exponent(r_vec: Sequence[float], s_vec: Sequence[float],
                             rate: float, alpha_max: float = 64.0,
                             grid_points: int = 48) -> float:
    """sup over alpha > 1 of ((alpha-1)/alpha)(rate - D_alpha), clamped at
    zero: bracketing grid plus golden-section refinement in 1/alpha, with
    the alpha -> inf tail included through the max divergence."""

    def psi(alpha: float) -> float:
        d = renyi_divergence(r_vec, s_vec, alpha)
        if not math.isfinite(d):
            return float("-inf")
        return (alpha - 1.0) / alpha * (rate - d)

    alphas = list(1.0 + np.geomspace(1e-4, alpha_max - 1.0, grid_points))
    vals = [psi(a) for a in alphas]
    k = int(np.argmax(vals))
    u_lo = 1.0 / alphas[min(k + 1, len(alphas) - 1)]
    u_hi = 1.0 / alphas[max(k - 1, 0)]
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a_pt = u_hi - inv_phi * (u_hi - u_lo)
    b_pt = u_lo + inv_phi * (u_hi - u_lo)
    fa, fb = psi(1.0 / a_pt), psi(1.0 / b_pt)
    for _ in range(60):
        if u_hi - u_lo < 1e-12:
            break
        if fa >= fb:
            u_hi, b_pt, fb = b_pt, a_pt, fa
            a_pt = u_hi - inv_phi * (u_hi - u_lo)
            fa = psi(1.0 / a_pt)
        else:
            u_lo, a_pt, fa = a_pt, b_pt, fb
            b_pt = u_lo + inv_phi * (u_hi - u_lo)
            fb = psi(1.0 / b_pt)
    best = max(vals[k], fa, fb)
    dmax = max_divergence(r_vec, s_vec)
    if math.isfinite(dmax):
        best = max(best, rate - dmax)
    return max(best, 0.0)
