"""Binary hypothesis testing on tensor powers.

Neyman-Pearson tests, error trade-offs, the strong-converse exponent curve

    B(r) = sup_{alpha > 1} ((alpha - 1) / alpha) (r - D_alpha(rho || tau)),

and finite-n bound checks.  Only the lower-bound direction of the exponent
characterization is asserted anywhere; equality is conjectural and every
curve report is labeled accordingly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import matcore as mc
from .config import DEFAULT_TOLERANCES
from .divergences import dmax, sandwiched
from .exceptions import NotConvergedError
from .reporting import CheckReport
from .states import StateFunctional

__all__ = [
    "TENSOR_DIM_LIMIT",
    "EQUALITY_STATUS",
    "ExponentCurve",
    "tensor_power",
    "neyman_pearson_test",
    "strong_converse_curve",
    "finite_n_bound_check",
    "exponent_empirics",
]

#: largest tensor-power space handled before rejecting with an error
TENSOR_DIM_LIMIT = 2 ** 13

#: every exponent-curve report carries this label; the reverse inequality
#: (that the curve is attained) is an open conjecture and is never asserted
EQUALITY_STATUS = "conjecture"


@dataclass
class ExponentCurve:
    """Strong-converse exponent curve on a rate grid.

    ``alpha_witnesses`` records the maximizing order per rate (inf when the
    tail term r - Dmax wins).  ``equality_status`` documents that only the
    lower-bound direction is proven.
    """

    r_grid: list[float]
    exponents: list[float]
    alpha_witnesses: list[float]
    equality_status: str = EQUALITY_STATUS
    notes: list[str] = field(default_factory=list)


def tensor_power(rho: StateFunctional, n: int) -> StateFunctional:
    """n-fold Kronecker power of a functional."""
    if n < 1:
        raise ValueError(f"tensor power needs n >= 1, got {n}")
    if rho.dim ** n > TENSOR_DIM_LIMIT:
        raise ValueError(
            f"tensor power dimension {rho.dim}^{n} exceeds the "
            f"{TENSOR_DIM_LIMIT}-dimensional guard"
        )
    out = rho.density
    for _ in range(n - 1):
        out = mc.kron(out, rho.density)
    return StateFunctional.from_density(out)


def neyman_pearson_test(rho_n: StateFunctional, tau_n: StateFunctional,
                        lam: float) -> tuple[np.ndarray, float, float]:
    """Projector onto the strictly positive eigenspace of D_rho - lam D_tau.

    Returns (T, type-I error rho(1-T), type-II error tau(T)).  The test is
    optimal for the weighted error sum rho(1-T) + lam tau(T).
    """
    if lam < 0:
        raise ValueError(f"threshold must be nonnegative, got {lam}")
    diff = rho_n.density - lam * tau_n.density
    w, u = mc.eig_hermitian(diff)
    scale = max(float(np.max(np.abs(w))), 1.0) if w.size else 1.0
    pos = (w > 1e-12 * scale).astype(float)
    t = (u * pos) @ mc.dagger(u)
    t = (t + mc.dagger(t)) / 2
    type_one = 1.0 - float(np.trace(rho_n.density @ t).real)
    type_two = float(np.trace(tau_n.density @ t).real)
    return t, max(type_one, 0.0), max(type_two, 0.0)


def _objective(rate: float, alpha: float, d_alpha: float) -> float:
    if not math.isfinite(d_alpha):
        return float("-inf")
    return (alpha - 1.0) / alpha * (rate - d_alpha)


def strong_converse_curve(rho: StateFunctional, tau: StateFunctional,
                          r_grid: list[float],
                          alpha_max: float = 64.0,
                          grid_points: int = 48,
                          refine_iters: int = 60) -> ExponentCurve:
    """Evaluate B(r) = sup_{alpha>1} ((alpha-1)/alpha)(r - D_alpha) per rate.

    One-dimensional maximization via a bracketing grid in 1/alpha followed by
    golden-section refinement (the objective is concave in 1/alpha); the
    alpha -> inf tail is handled analytically through the max-relative
    entropy.  Values are clamped at zero from below.
    """
    alphas = list(1.0 + np.geomspace(1e-4, alpha_max - 1.0, grid_points))
    d_cache: dict[float, float] = {
        a: sandwiched(rho, tau, a).value for a in alphas
    }
    d_infinity = dmax(rho, tau)
    notes: list[str] = []

    def psi(rate: float, alpha: float) -> float:
        if alpha not in d_cache:
            d_cache[alpha] = sandwiched(rho, tau, alpha).value
        return _objective(rate, alpha, d_cache[alpha])

    exponents: list[float] = []
    witnesses: list[float] = []
    for rate in r_grid:
        vals = [psi(rate, a) for a in alphas]
        k = int(np.argmax(vals))
        lo = alphas[max(k - 1, 0)]
        hi = alphas[min(k + 1, len(alphas) - 1)]
        # golden-section in u = 1/alpha, where the objective is concave
        u_lo, u_hi = 1.0 / hi, 1.0 / lo
        inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
        a_pt = u_hi - inv_phi * (u_hi - u_lo)
        b_pt = u_lo + inv_phi * (u_hi - u_lo)
        fa = psi(rate, 1.0 / a_pt)
        fb = psi(rate, 1.0 / b_pt)
        for _ in range(refine_iters):
            if u_hi - u_lo < 1e-12:
                break
            if fa >= fb:
                u_hi, b_pt, fb = b_pt, a_pt, fa
                a_pt = u_hi - inv_phi * (u_hi - u_lo)
                fa = psi(rate, 1.0 / a_pt)
            else:
                u_lo, a_pt, fa = a_pt, b_pt, fb
                b_pt = u_lo + inv_phi * (u_hi - u_lo)
                fb = psi(rate, 1.0 / b_pt)
        u_best = a_pt if fa >= fb else b_pt
        best = max(vals[k], psi(rate, 1.0 / u_best))
        witness = alphas[k] if vals[k] >= psi(rate, 1.0 / u_best) else 1.0 / u_best
        tail = rate - d_infinity if math.isfinite(d_infinity) else float("-inf")
        if tail > best:
            best, witness = tail, float("inf")
        if not math.isfinite(best):
            notes.append(f"rate {rate}: objective unbounded below; clamped")
            best, witness = 0.0, float("nan")
        exponents.append(max(best, 0.0))
        witnesses.append(witness)
    return ExponentCurve(list(r_grid), exponents, witnesses, notes=notes)


def finite_n_bound_check(rho: StateFunctional, tau: StateFunctional, n: int,
                         lambda_grid: list[float], alpha_grid: list[float],
                         tol: float | None = None,
                         additivity_tol: float | None = None) -> CheckReport:
    """Finite-n converse chain for Neyman-Pearson tests:
    for every test T on the threshold grid and order alpha > 1,

        D_alpha(rho||tau) >= (n(alpha-1))^{-1} log(rho_n(T)^alpha tau_n(T)^{1-alpha}),

    together with tensor-power additivity
    D_alpha(rho^(n) || tau^(n)) = n D_alpha(rho||tau).
    """
    tol = DEFAULT_TOLERANCES.dpi_slack if tol is None else tol
    additivity_tol = (DEFAULT_TOLERANCES.additivity if additivity_tol is None
                      else additivity_tol)
    rho_n = tensor_power(rho, n)
    tau_n = tensor_power(tau, n)

    worst_add = float("inf")
    for alpha in alpha_grid:
        d1 = sandwiched(rho, tau, alpha).value
        dn = sandwiched(rho_n, tau_n, alpha).value
        if math.isinf(d1) and math.isinf(dn):
            continue
        worst_add = min(worst_add, additivity_tol - abs(dn - n * d1))

    worst_chain = float("inf")
    checked = 0
    for lam in lambda_grid:
        _, type_one, type_two = neyman_pearson_test(rho_n, tau_n, lam)
        success = 1.0 - type_one
        for alpha in alpha_grid:
            if alpha <= 1:
                continue
            d1 = sandwiched(rho, tau, alpha).value
            if success <= 1e-300:
                continue  # bound is vacuous (-inf right side)
            if type_two <= 1e-300:
                # tau-null test: right side finite only if rho-null as well
                continue
            rhs = (alpha * math.log(success)
                   + (1.0 - alpha) * math.log(type_two)) / (n * (alpha - 1.0))
            if math.isinf(d1):
                continue
            worst_chain = min(worst_chain, d1 - rhs)
            checked += 1
    passed = (worst_add == float("inf") or worst_add >= 0) and (
        worst_chain == float("inf") or worst_chain >= -tol
    )
    return CheckReport(
        "finite_n_bound", 0.0, 0.0, min(worst_add, worst_chain), passed,
        {"n": n, "checked": checked, "additivity_worst": worst_add,
         "chain_worst": worst_chain},
    )


def exponent_empirics(rho: StateFunctional, tau: StateFunctional, rate: float,
                      n_max: int, lambda_points: int = 61) -> list[dict[str, float]]:
    """Empirical strong-converse exponents from Neyman-Pearson tests.

    For each n <= n_max, scan thresholds, keep tests whose type-II error
    meets tau_n(T) <= exp(-n * rate), and among them take the one minimizing
    the type-I error; tabulate -(1/n) log rho_n(T).  These values dominate
    the exponent curve at the same rate (the proven direction of the
    characterization).  The empty test is always feasible and yields an
    infinite exponent.
    """
    rows: list[dict[str, float]] = []
    for n in range(1, n_max + 1):
        rho_n = tensor_power(rho, n)
        tau_n = tensor_power(tau, n)
        budget = math.exp(-n * rate)
        best_success = 0.0
        best = {"lambda": float("inf"), "type_one": 1.0, "type_two": 0.0}
        lams = [0.0] + list(np.geomspace(1e-9, math.exp(12.0), lambda_points))
        for lam in lams:
            _, type_one, type_two = neyman_pearson_test(rho_n, tau_n, lam)
            if type_two <= budget and 1.0 - type_one > best_success:
                best_success = 1.0 - type_one
                best = {"lambda": lam, "type_one": type_one, "type_two": type_two}
        exponent = (-math.log(best_success) / n if best_success > 0
                    else float("inf"))
        rows.append({
            "n": n,
            "typeI_exponent": exponent,
            "lambda": best["lambda"],
            "type_two": best["type_two"],
        })
    return rows
