"""The divergence family: sandwiched and Petz Renyi divergences, relative
entropy, fidelity, and max-relative entropy, with limits and order checks.

All values are in nats.  Order alpha = 1 is never evaluated directly; the
limit is reached either through the relative entropy or by Richardson
extrapolation.  Orders alpha in [1/2, 1) need no support condition
(pseudo-powers on the support of sigma); alpha > 1 requires rho << sigma,
otherwise the value is +inf.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from . import matcore as mc
from .exceptions import BadAlphaError, SupportViolationError
from .config import DEFAULT_TOLERANCES
from .reporting import CheckReport
from .states import (
    StateFunctional,
    dominance_constant,
    purify,
    spatial_derivative,
    supported_on,
)
from .lpnorms import vector_norm

__all__ = [
    "DivergenceValue",
    "sandwiched",
    "petz",
    "umegaki",
    "fidelity",
    "dmax",
    "renyi_limit",
    "richardson_extrapolate",
    "alt_check",
    "alpha_monotonicity_scan",
]


@dataclass(frozen=True)
class DivergenceValue:
    """A divergence value tagged with its order and evaluation route."""

    alpha: float
    value: float
    route: str  # "closed_form" | "variational" | "limit"


def _log_trace_power(psd: np.ndarray, exponent: float) -> float:
    """log Tr(A^exponent) over the positive spectrum, in the log domain.

    The cutoff here is the eigensolver noise floor, not the support cutoff:
    for exponents below one, genuinely tiny positive eigenvalues (tensor
    powers produce them) still contribute measurably and must be kept.
    """
    w, _ = mc.eig_hermitian(psd)
    if w.size:
        noise = w.size * np.finfo(float).eps * max(float(w[-1]), 0.0)
        w = w[w > noise]
    if w.size == 0:
        return float("-inf")
    return float(logsumexp(exponent * np.log(w)))


def sandwiched(rho: StateFunctional, sigma: StateFunctional,
               alpha: float) -> DivergenceValue:
    """Sandwiched Renyi divergence of order alpha:
    (alpha-1)^{-1} log Tr (sigma^{(1-alpha)/2alpha} rho sigma^{(1-alpha)/2alpha})^alpha.

    Evaluated in the log domain so very large orders stay finite.
    """
    if not (0.5 <= alpha and alpha != 1.0):
        raise BadAlphaError(f"order must lie in [1/2,1) or (1,inf), got {alpha}")
    if alpha > 1 and not supported_on(rho, sigma):
        return DivergenceValue(alpha, float("inf"), "closed_form")
    e = (1.0 - alpha) / (2.0 * alpha)
    half = mc.mat_power(sigma.density, e)
    middle = half @ rho.density @ half
    log_q = _log_trace_power((middle + mc.dagger(middle)) / 2, alpha)
    value = log_q / (alpha - 1.0)
    if log_q == float("-inf"):
        value = float("inf")  # orthogonal supports
    return DivergenceValue(alpha, value, "closed_form")


def petz(rho: StateFunctional, sigma: StateFunctional, alpha: float) -> DivergenceValue:
    """Petz Renyi divergence of order alpha:
    (alpha-1)^{-1} log Tr(D_rho^alpha D_sigma^{1-alpha})."""
    if not 0.0 < alpha <= 2.0 or alpha == 1.0:
        raise BadAlphaError(f"order must lie in (0,1) or (1,2], got {alpha}")
    if alpha > 1 and not supported_on(rho, sigma):
        return DivergenceValue(alpha, float("inf"), "closed_form")
    q = np.trace(
        mc.mat_power(rho.density, alpha) @ mc.mat_power(sigma.density, 1.0 - alpha)
    ).real
    if q <= 0:
        return DivergenceValue(alpha, float("inf") if alpha < 1 else float("-inf"),
                               "closed_form")
    return DivergenceValue(alpha, math.log(float(q)) / (alpha - 1.0), "closed_form")


def umegaki(rho: StateFunctional, sigma: StateFunctional) -> float:
    """Relative entropy Tr D_rho (log D_rho - log D_sigma), logs on supports;
    +inf when rho is not supported on sigma."""
    if not supported_on(rho, sigma):
        return float("inf")
    log_r = mc.mat_fn(rho.density, np.log)
    log_s = mc.mat_fn(sigma.density, np.log)
    return float(np.trace(rho.density @ (log_r - log_s)).real)


def fidelity(rho: StateFunctional, sigma: StateFunctional) -> float:
    """Uhlmann fidelity || sqrt(D_rho) sqrt(D_sigma) ||_1^2 via singular
    values of the product of square roots (independent of the weighted-norm
    machinery)."""
    product = mc.mat_sqrt(rho.density) @ mc.mat_sqrt(sigma.density)
    s = np.linalg.svd(product, compute_uv=False)
    return float(np.sum(s) ** 2)


def dmax(rho: StateFunctional, sigma: StateFunctional) -> float:
    """Max-relative entropy: log of the least C with rho <= C sigma."""
    c = dominance_constant(rho, sigma)
    if not math.isfinite(c):
        return float("inf")
    return math.log(c) if c > 0 else float("-inf")


def richardson_extrapolate(values: list[float]) -> float:
    """Second-order Richardson extrapolation for a step-halving schedule."""
    first = [2.0 * values[i + 1] - values[i] for i in range(len(values) - 1)]
    second = [(4.0 * first[i + 1] - first[i]) / 3.0 for i in range(len(first) - 1)]
    return second[-1]


def renyi_limit(rho: StateFunctional, sigma: StateFunctional, target: str,
                k_schedule: range = range(3, 13)) -> float:
    """Limiting values of the sandwiched divergence.

    target = "half": the exact order-1/2 value (equals -log fidelity).
    target = "one_from_below"/"one_from_above": Richardson extrapolation of
    the order along alpha = 1 -+ 2^{-k}; matches the relative entropy.
    target = "infinity": evaluation along alpha = 2^k up to 1024, approaching
    the max-relative entropy monotonically from below.

    The one-sided limit from above and the infinite-order limit require
    rho <<< sigma (finite dominance constant).
    """
    if target == "half":
        return sandwiched(rho, sigma, 0.5).value
    if target in ("one_from_above", "infinity"):
        if not math.isfinite(dominance_constant(rho, sigma)):
            raise SupportViolationError(
                f"target {target!r} requires rho dominated by sigma"
            )
    if target == "one_from_below":
        vals = [sandwiched(rho, sigma, 1.0 - 2.0 ** (-k)).value for k in k_schedule]
        return richardson_extrapolate(vals)
    if target == "one_from_above":
        vals = [sandwiched(rho, sigma, 1.0 + 2.0 ** (-k)).value for k in k_schedule]
        return richardson_extrapolate(vals)
    if target == "infinity":
        value = float("-inf")
        for k in range(1, 11):
            value = sandwiched(rho, sigma, 2.0 ** k).value
        return value
    raise ValueError(f"unknown limit target {target!r}")


def alt_check(rho: StateFunctional, sigma: StateFunctional, p: float,
              tol: float | None = None,
              route_tol: float | None = None) -> CheckReport:
    """Araki-Lieb-Thirring comparison in weighted-norm normal form:
    ||rho_vec||_{p,sigma}^p <= Tr(D_rho^{p/2} D_sigma^{1-p/2}) for p >= 2,
    reversed for 1 <= p <= 2.

    The right side is evaluated twice: as the trace formula and as
    || Delta_{rho|sigma}^{p/4} sigma_vec ||^2 on the doubled space; the two
    routes must agree.
    """
    tol = DEFAULT_TOLERANCES.inequality_slack if tol is None else tol
    route_tol = DEFAULT_TOLERANCES.route_agreement if route_tol is None else route_tol
    supported = supported_on(rho, sigma)
    if p > 2 and not supported:
        return CheckReport("alt", float("inf"), float("inf"), 0.0, True,
                           {"p": p, "supported": False})
    lhs = vector_norm(purify(rho), sigma, p) ** p
    rhs_trace = float(np.trace(
        mc.mat_power(rho.density, p / 2.0)
        @ mc.mat_power(sigma.density, 1.0 - p / 2.0)
    ).real)
    delta = spatial_derivative(rho, sigma)
    sig_vec = purify(sigma).vector
    rhs_operator = float(np.linalg.norm(delta.power(p / 4.0) @ sig_vec) ** 2)
    routes_agree = abs(rhs_trace - rhs_operator) <= route_tol * (1 + abs(rhs_trace))
    slack = (rhs_trace - lhs) if p >= 2 else (lhs - rhs_trace)
    return CheckReport(
        "alt", lhs, rhs_trace, slack, slack >= -tol and routes_agree,
        {"p": p, "alpha": p / 2.0, "rhs_operator_route": rhs_operator,
         "routes_agree": routes_agree},
    )


def alpha_monotonicity_scan(rho: StateFunctional, sigma: StateFunctional,
                            alpha_grid: list[float],
                            tol: float | None = None) -> CheckReport:
    """Nondecreasing order dependence of the divergences.

    Checks the sandwiched family along ``alpha_grid`` (which must avoid 1)
    and the Petz family along a fixed grid in (0,2); only the nonstrict
    direction is asserted.
    """
    tol = DEFAULT_TOLERANCES.inequality_slack if tol is None else tol
    sand = [sandwiched(rho, sigma, a).value for a in sorted(alpha_grid)]
    petz_grid = [0.2, 0.4, 0.6, 0.8, 0.95, 1.05, 1.25, 1.5, 1.75, 1.95]
    petz_vals = [petz(rho, sigma, a).value for a in petz_grid]

    def worst_step(values: list[float]) -> float:
        worst = float("inf")
        for lo, hi in zip(values, values[1:]):
            if math.isinf(hi):
                continue
            worst = min(worst, hi - lo)
        return worst

    worst = min(worst_step(sand), worst_step(petz_vals))
    passed = worst == float("inf") or worst >= -tol
    return CheckReport("alpha_monotonicity", 0.0, 0.0, worst, passed,
                       {"alpha_grid": sorted(alpha_grid), "petz_grid": petz_grid})
