"""Sigma-weighted vector L_p norms and their theorem checkers.

The closed form used throughout: for a doubled-space vector with reshape
matrix ``M`` and a weight functional sigma on the algebra leg,

    ||xi||_{p,sigma} = || D_sigma^{1/p - 1/2} M ||_p       (Schatten norm),

with pseudo-powers on the support of sigma.  For ``p >= 2`` the value is
+inf unless the implemented functional ``M M^dag`` is supported on sigma.
The weight multiplies on the algebra side, which makes the value depend on
the vector only through the functional it implements; on canonical
purifications (``M = D_rho^{1/2}``) this is the familiar expression
``|| D_sigma^{1/p-1/2} D_rho^{1/2} ||_p``.

The variational route evaluates

    F(omega) = Tr( D_omega^{1 - 2/p}  D_rho^{1/2} D_sigma^{2/p - 1} D_rho^{1/2} )

over states omega (supremum for p > 2, infimum for p < 2) and must
reproduce the closed form; the Hoelder-saturating optimizer is
``omega* = X^{p/2} / Tr X^{p/2}`` with ``X = D_rho^{1/2} D_sigma^{2/p-1} D_rho^{1/2}``.
For ``p < 2`` feasibility requires the commutant support condition, which is
enforced by optimizing over full-rank omega; the infimum is reported as the
limit value at an interior point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import matcore as mc
from .config import DEFAULT_TOLERANCES
from .exceptions import (
    BadExponentError,
    ConfigError,
    InfeasibleSupportError,
    NotConvergedError,
    NotSupportedError,
    ShapeMismatchError,
)
from .reporting import CheckReport
from .states import (
    StateFunctional,
    VectorState,
    functional_of_vector,
    purify,
    spatial_derivative,
    supported_on,
)

__all__ = [
    "OptimizerConfig",
    "SamplerConfig",
    "NormResult",
    "OperatorNormEstimate",
    "conjugate_exponent",
    "weight_exponent",
    "vector_norm",
    "hoelder_attainment",
    "variational_norm",
    "closed_form_optimizer",
    "hoelder_check",
    "duality_value",
    "interpolation_check",
    "log_convexity_scan",
    "weighted_op_norm",
    "riesz_thorin_check",
    "plain_norm_bound_check",
    "modular_identity_check",
]


@dataclass(frozen=True)
class OptimizerConfig:
    """Knobs for the variational and duality optimizers."""

    restarts: int = 8
    max_iter: int = 80
    value_tol: float = 1e-10
    seed: int = 0
    interior_eps: float = 1e-12
    eig_floor: float = 1e-14


@dataclass(frozen=True)
class SamplerConfig:
    """Knobs for sampled weighted operator-norm lower bounds."""

    samples: int = 200
    restarts: int = 3
    max_iter: int = 150
    seed: int = 0
    step: float = 0.25


@dataclass
class NormResult:
    """Value of a norm computation plus optimizer metadata.

    ``gap`` is the absolute difference between this route and the closed
    form whenever both were computed.
    """

    value: float
    optimizer_omega: StateFunctional | None
    iterations: int
    gap: float
    witness: VectorState | None = None


@dataclass
class OperatorNormEstimate:
    """Certified lower bound on a weighted operator norm.

    ``exact`` marks the (2,2) case where the value is a true norm, not just
    a bound.  The bound is realized by ``witness``.
    """

    lower_bound: float
    witness: VectorState
    samples: int
    exact: bool = False


def conjugate_exponent(p: float) -> float:
    """Hoelder conjugate q with 1/p + 1/q = 1."""
    if p == np.inf:
        return 1.0
    if p == 1:
        return np.inf
    if p < 1:
        raise BadExponentError(f"exponent must be >= 1, got {p}")
    return p / (p - 1.0)


def weight_exponent(p: float) -> float:
    """The sigma exponent 1/p - 1/2 (p = inf gives -1/2)."""
    return -0.5 if p == np.inf else 1.0 / p - 0.5


def _check_order(p: float) -> None:
    if not (p == np.inf or p >= 1):
        raise BadExponentError(f"norm order must satisfy p >= 1 or p = inf, got {p}")


def weighted_matrix(xi: VectorState, sigma: StateFunctional, p: float,
                    support_tol: float | None = None) -> np.ndarray:
    """The weighted reshape matrix D_sigma^{1/p-1/2} M."""
    if xi.left_dim != sigma.dim:
        raise ShapeMismatchError(
            f"vector algebra leg {xi.left_dim} does not match weight dim {sigma.dim}"
        )
    w = mc.mat_power(sigma.density, weight_exponent(p), support_tol)
    return w @ xi.matrix


def vector_norm(xi: VectorState, sigma: StateFunctional, p: float,
                support_tol: float | None = None) -> float:
    """Closed-form sigma-weighted p-norm of a doubled-space vector.

    Returns +inf for p >= 2 when the implemented functional is not
    supported on sigma; for 1 <= p < 2 the expression is a seminorm and
    off-support components are projected away.
    """
    _check_order(p)
    if p >= 2 and not supported_on(functional_of_vector(xi), sigma, support_tol):
        return float("inf")
    return mc.schatten_norm(weighted_matrix(xi, sigma, p, support_tol), p)


def _weight_objective(omega_density: np.ndarray, x: np.ndarray, r: float,
                      floor: float = 0.0) -> float:
    """F(omega) = Tr(omega^r X), with an optional eigenvalue floor."""
    w, u = mc.eig_hermitian(omega_density)
    w = np.clip(w, floor if r < 0 else 0.0, None)
    f = np.zeros_like(w)
    pos = w > 0
    f[pos] = w[pos] ** r
    return float(np.trace((u * f) @ mc.dagger(u) @ x).real)


def _weight_gradient(omega_density: np.ndarray, x: np.ndarray, r: float,
                     floor: float) -> np.ndarray:
    """Gradient of F(omega) = Tr(omega^r X) via first divided differences."""
    w, u = mc.eig_hermitian(omega_density)
    w = np.clip(w, floor, None)
    fw = w ** r
    df = r * w ** (r - 1.0)
    num = fw[:, None] - fw[None, :]
    den = w[:, None] - w[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        k = np.where(np.abs(den) > 1e-14, num / den, df[:, None])
    y = mc.dagger(u) @ x @ u
    g = u @ (k * y) @ mc.dagger(u)
    return (g + mc.dagger(g)) / 2


def _project_state(h: np.ndarray, floor: float) -> np.ndarray:
    """Project a Hermitian matrix onto the state simplex with an eigen floor."""
    w, u = mc.eig_hermitian((h + mc.dagger(h)) / 2, tol=np.inf)
    w = np.clip(w.real, floor, None)
    w = w / w.sum()
    return (u * w) @ mc.dagger(u)


def closed_form_optimizer(rho: StateFunctional, sigma: StateFunctional,
                          p: float) -> StateFunctional:
    """Hoelder-saturating weight: normalize(X^{p/2}) with
    X = D_rho^{1/2} D_sigma^{2/p-1} D_rho^{1/2}."""
    _check_order(p)
    if p == np.inf:
        raise BadExponentError("closed-form optimizer is defined for finite p")
    root = mc.mat_sqrt(rho.density)
    x = root @ mc.mat_power(sigma.density, 2.0 / p - 1.0) @ root
    x = (x + mc.dagger(x)) / 2
    opt = mc.mat_power(x, p / 2.0)
    opt = (opt + mc.dagger(opt)) / 2
    tr = float(np.trace(opt).real)
    if tr <= 0:
        raise InfeasibleSupportError(
            "weights have no common support; optimizer undefined"
        )
    return StateFunctional.from_density(opt / tr)


def hoelder_attainment(rho: StateFunctional, sigma: StateFunctional, p: float,
                       interior_eps: float = 1e-12) -> float:
    """Value F(omega*)^{1/2} of the weight objective at the closed-form
    optimizer; must reproduce the closed-form norm.

    For p < 2 the objective is evaluated at an interior smoothing of the
    optimizer, matching the limit semantics of the infimum.
    """
    _check_order(p)
    if p == np.inf:
        raise BadExponentError("attainment is defined for finite p")
    if p >= 2 and not supported_on(rho, sigma):
        return float("inf")
    root = mc.mat_sqrt(rho.density)
    x = root @ mc.mat_power(sigma.density, 2.0 / p - 1.0) @ root
    x = (x + mc.dagger(x)) / 2
    omega = closed_form_optimizer(rho, sigma, p).density
    if p < 2:
        omega = (1 - interior_eps) * omega + interior_eps * np.eye(rho.dim) / rho.dim
    value = _weight_objective(np.asarray(omega), x, 1.0 - 2.0 / p)
    return math.sqrt(max(value, 0.0))


def variational_norm(rho: StateFunctional, sigma: StateFunctional, p: float,
                     config: OptimizerConfig | None = None) -> NormResult:
    """Weighted p-norm of the canonical purification via optimization over
    weights, as an independent route against :func:`vector_norm`.

    Multi-start: the Hoelder fixed point seeds restart 0; the remaining
    restarts run projected gradient from random full-rank states and are
    reduced in restart order.  Returns F^{1/2} at the optimum together with
    the optimizing weight and the gap to the closed form.
    """
    _check_order(p)
    if p == np.inf:
        raise BadExponentError("variational route is defined for p in [1, inf)")
    cfg = config or OptimizerConfig()
    reference = vector_norm(purify(rho), sigma, p)

    if p >= 2 and not supported_on(rho, sigma):
        return NormResult(float("inf"), None, 0, 0.0)

    root = mc.mat_sqrt(rho.density)
    x = root @ mc.mat_power(sigma.density, 2.0 / p - 1.0) @ root
    x = (x + mc.dagger(x)) / 2
    r = 1.0 - 2.0 / p
    n = rho.dim
    maximize = p > 2

    if p == 2:
        # exponent r = 0: F is omega-independent on full-rank weights
        value = math.sqrt(max(float(np.trace(x).real), 0.0))
        omega = closed_form_optimizer(rho, sigma, p)
        return NormResult(value, omega, 0, abs(value - reference))

    def polish(omega0: np.ndarray) -> tuple[np.ndarray, float, int, bool]:
        omega = omega0
        val = _weight_objective(omega, x, r, cfg.eig_floor)
        sign = 1.0 if maximize else -1.0
        converged = False
        it = 0
        for it in range(1, cfg.max_iter + 1):
            g = _weight_gradient(omega, x, r, cfg.eig_floor)
            direction = g - (np.trace(g).real / n) * np.eye(n)
            step = 1.0
            improved = False
            for _ in range(40):
                cand = _project_state(omega + sign * step * direction, cfg.eig_floor)
                cand_val = _weight_objective(cand, x, r, cfg.eig_floor)
                if sign * (cand_val - val) > 0:
                    improved = True
                    break
                step /= 2.0
            if not improved:
                converged = True
                break
            if abs(cand_val - val) < cfg.value_tol:
                omega, val = cand, cand_val
                converged = True
                break
            omega, val = cand, cand_val
        return omega, val, it, converged

    results: list[tuple[np.ndarray, float, int, bool]] = []
    try:
        omega_star = closed_form_optimizer(rho, sigma, p).density
    except InfeasibleSupportError:
        omega_star = np.eye(n) / n
    if p < 2:
        # stay interior: the infimum is approached through full-rank weights
        omega_star = (1 - cfg.interior_eps) * omega_star + cfg.interior_eps * np.eye(n) / n
    results.append(polish(np.asarray(omega_star)))
    for k in range(1, max(cfg.restarts, 1)):
        rng = mc.rng_from_seed(cfg.seed, k, 101)
        g = mc.random_ginibre(n, n, rng)
        start = g @ mc.dagger(g) + cfg.eig_floor * np.eye(n)
        start = start / np.trace(start).real
        results.append(polish(start))

    best_idx = 0
    for i, (_, val, _, _) in enumerate(results):
        if (maximize and val > results[best_idx][1]) or (
            not maximize and val < results[best_idx][1]
        ):
            best_idx = i
    omega_best, f_best, _, _ = results[best_idx]
    iterations = sum(res[2] for res in results)
    value = math.sqrt(max(f_best, 0.0))
    gap = abs(value - reference) if math.isfinite(reference) else float("inf")
    if not any(res[3] for res in results):
        raise NotConvergedError(
            f"variational optimizer did not converge at p={p}", best=value, gap=gap
        )
    return NormResult(value, StateFunctional.from_density(omega_best), iterations, gap)


def _schatten_dual_gradient(b: np.ndarray, q: float) -> tuple[float, np.ndarray]:
    """Value and gradient (wrt conj(B)) of the Schatten q-norm at B."""
    u, s, vh = np.linalg.svd(b, full_matrices=False)
    if q == np.inf:
        return (float(s[0]) if s.size else 0.0), u[:, :1] @ vh[:1, :]
    pos = s > 0
    if not np.any(pos):
        return 0.0, np.zeros_like(b)
    val = float(np.exp(np.log(np.sum(s[pos] ** q)) / q))
    g = (u[:, pos] * (s[pos] ** (q - 1.0))) @ vh[pos, :] * val ** (1.0 - q)
    return val, g


def hoelder_check(xi: VectorState, eta: VectorState, sigma: StateFunctional,
                  p: float, tol: float | None = None) -> CheckReport:
    """Hoelder inequality for the doubled-space inner product:
    |<xi|eta>| <= ||xi||_{p,sigma} ||eta||_{q,sigma}."""
    tol = DEFAULT_TOLERANCES.inequality_slack if tol is None else tol
    q = conjugate_exponent(p)
    lhs = abs(complex(np.trace(mc.dagger(xi.matrix) @ eta.matrix)))
    nxi = vector_norm(xi, sigma, p)
    neta = vector_norm(eta, sigma, q)
    rhs = nxi * neta if math.isfinite(nxi) and math.isfinite(neta) else float("inf")
    slack = rhs - lhs
    return CheckReport(
        "hoelder", lhs, rhs, slack, slack >= -tol,
        {"p": p, "q": q, "norm_xi": nxi, "norm_eta": neta},
    )


def duality_value(xi: VectorState, sigma: StateFunctional, p: float,
                  config: OptimizerConfig | None = None) -> NormResult:
    """Weighted p-norm recovered through norm duality:
    maximize |<xi|eta>| over eta with ||eta||_{q,sigma} <= 1.

    Projected gradient ascent over reshape matrices with the closed-form
    q-norm as the constraint, multi-started from a Schatten-duality
    candidate and random vectors.  The result must reproduce
    :func:`vector_norm` for vectors supported on sigma.
    """
    _check_order(p)
    cfg = config or OptimizerConfig()
    q = conjugate_exponent(p)
    reference = vector_norm(xi, sigma, p)
    n, rdim = xi.left_dim, xi.right_dim
    proj = mc.support_projector(sigma.density)
    w_s = mc.mat_power(sigma.density, weight_exponent(p))
    w_q = mc.mat_power(sigma.density, weight_exponent(q))

    def q_norm_and_grad(m_eta: np.ndarray) -> tuple[float, np.ndarray]:
        val, g = _schatten_dual_gradient(w_q @ m_eta, q)
        return val, w_q @ g

    def objective(m_eta: np.ndarray) -> float:
        denom, _ = q_norm_and_grad(m_eta)
        if denom <= 0:
            return 0.0
        return abs(complex(np.trace(mc.dagger(xi.matrix) @ m_eta))) / denom

    def ascend(m0: np.ndarray) -> tuple[np.ndarray, float, int]:
        m = proj @ m0
        val = objective(m)
        it = 0
        for it in range(1, cfg.max_iter + 1):
            c = complex(np.trace(mc.dagger(xi.matrix) @ m))
            denom, gden = q_norm_and_grad(m)
            if denom <= 0 or abs(c) == 0:
                break
            gnum = (c / abs(c)) * xi.matrix
            grad = proj @ (gnum / abs(c) - gden / denom)
            step = 1.0
            improved = False
            for _ in range(40):
                cand = m + step * grad
                cand_val = objective(cand)
                if cand_val > val:
                    improved = True
                    break
                step /= 2.0
            if not improved or abs(cand_val - val) < cfg.value_tol * (1 + val):
                if improved:
                    m, val = cand, cand_val
                break
            m, val = cand, cand_val
        return m, val, it

    candidates: list[np.ndarray] = []
    a = w_s @ xi.matrix
    u, s, vh = np.linalg.svd(a, full_matrices=False)
    if s.size and s[0] > 0:
        if p == np.inf:
            dual = u[:, :1] @ vh[:1, :]
        elif p == 1:
            dual = u @ vh
        else:
            dual = (u * (s ** (p - 1.0))) @ vh
        candidates.append(w_s @ dual)
    for k in range(max(cfg.restarts, 1)):
        rng = mc.rng_from_seed(cfg.seed, k, 211)
        candidates.append(mc.random_ginibre(n, rdim, rng))

    best_m, best_val, iterations = None, -1.0, 0
    for m0 in candidates:
        m, val, it = ascend(m0)
        iterations += it
        if val > best_val:
            best_m, best_val = m, val
    if best_m is None:
        raise NotConvergedError("duality ascent found no feasible direction")
    denom, _ = q_norm_and_grad(best_m)
    witness = VectorState.from_matrix(best_m / denom if denom > 0 else best_m)
    gap = abs(best_val - reference) if math.isfinite(reference) else float("inf")
    return NormResult(best_val, functional_of_vector(witness), iterations, gap, witness)


def interpolation_check(rho: StateFunctional, sigma: StateFunctional,
                        p0: float, p1: float, theta: float,
                        tol: float | None = None) -> CheckReport:
    """Norm interpolation in the order parameter:
    ||rho||_{p_theta,sigma} <= ||rho||_{p0,sigma}^{1-theta} ||rho||_{p1,sigma}^theta.

    Both endpoint orders must lie in the same regime ([1,2] or [2,inf]).
    """
    tol = DEFAULT_TOLERANCES.inequality_slack if tol is None else tol
    if not 0.0 <= theta <= 1.0:
        raise BadExponentError(f"theta must lie in [0,1], got {theta}")
    same_low = 1 <= p0 <= 2 and 1 <= p1 <= 2
    same_high = p0 >= 2 and p1 >= 2
    if not (same_low or same_high):
        raise BadExponentError(
            f"endpoint orders must share a regime, got p0={p0}, p1={p1}"
        )
    inv = (1 - theta) * (0.0 if p0 == np.inf else 1 / p0) + theta * (
        0.0 if p1 == np.inf else 1 / p1
    )
    p_theta = np.inf if inv == 0 else 1.0 / inv
    xi = purify(rho)
    n0 = vector_norm(xi, sigma, p0)
    n1 = vector_norm(xi, sigma, p1)
    lhs = vector_norm(xi, sigma, p_theta)
    rhs = (n0 ** (1 - theta)) * (n1 ** theta) if math.isfinite(n0) and math.isfinite(n1) \
        else float("inf")
    slack = rhs - lhs if math.isfinite(rhs) else float("inf")
    return CheckReport(
        "interpolation", lhs, rhs, slack, slack >= -tol,
        {"p0": p0, "p1": p1, "theta": theta, "p_theta": p_theta},
    )


def log_convexity_scan(rho: StateFunctional, sigma: StateFunctional,
                       p_grid: list[float],
                       tol: float | None = None) -> CheckReport:
    """Midpoint convexity of phi(p) = log ||rho||_{p,sigma}^p, checked
    separately on the [1,2] and [2,inf) parts of the grid."""
    tol = DEFAULT_TOLERANCES.inequality_slack if tol is None else tol
    xi = purify(rho)

    def phi(p: float) -> float:
        v = vector_norm(xi, sigma, p)
        return p * math.log(v) if v > 0 and math.isfinite(v) else float("inf")

    worst = float("inf")
    pairs = 0
    for lo, hi in ((1.0, 2.0), (2.0, np.inf)):
        pts = sorted(p for p in p_grid if lo <= p <= hi and p != np.inf)
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                a, b = pts[i], pts[j]
                mid = (a + b) / 2
                fa, fb, fm = phi(a), phi(b), phi(mid)
                if not all(map(math.isfinite, (fa, fb, fm))):
                    continue
                slack = (fa + fb) / 2 - fm
                worst = min(worst, slack)
                pairs += 1
    passed = pairs == 0 or worst >= -tol
    return CheckReport("log_convexity", 0.0, 0.0, worst, passed,
                       {"pairs": pairs, "grid": list(p_grid)})


def plain_norm_bound_check(rho: StateFunctional, sigma: StateFunctional,
                           p: float, tol: float | None = None) -> CheckReport:
    """Envelope of the weighted norm by plain Hilbert norms:
    ||rho||_{p,sigma} >= ||rho_vec|| ||sigma_vec||^{2/p-1} for p >= 2,
    reversed for 1 <= p <= 2."""
    tol = DEFAULT_TOLERANCES.inequality_slack if tol is None else tol
    _check_order(p)
    value = vector_norm(purify(rho), sigma, p)
    bound = math.sqrt(rho.trace_value) * math.sqrt(sigma.trace_value) ** (
        (2.0 / p if p != np.inf else 0.0) - 1.0
    )
    if p >= 2:
        slack = value - bound
    else:
        slack = bound - value
    return CheckReport("plain_norm_bound", value, bound, slack, slack >= -tol,
                       {"p": p})


def modular_identity_check(rho: StateFunctional, sigma: StateFunctional,
                           omega: StateFunctional, z: complex,
                           tol: float | None = None) -> CheckReport:
    """Norm identity for mixed powers of spatial derivatives:
    || Delta_{omega|sigma}^{1/2-z} Delta_{rho|sigma}^{z} sigma_vec ||
      = || Delta_{rho|omega}^{z} omega_vec ||  for 0 <= Re z <= 1/2.

    Requires a faithful sigma; the operators are built explicitly on the
    doubled space with pseudo-powers.
    """
    tol = DEFAULT_TOLERANCES.modular if tol is None else tol
    if not 0.0 <= z.real <= 0.5:
        raise BadExponentError(f"need 0 <= Re z <= 1/2, got {z}")
    if np.linalg.matrix_rank(sigma.density, tol=1e-12) < sigma.dim:
        raise NotSupportedError("modular identity check requires faithful sigma")
    d_os = spatial_derivative(omega, sigma)
    d_rs = spatial_derivative(rho, sigma)
    d_ro = spatial_derivative(rho, omega)
    sigma_vec = purify(sigma)
    omega_vec = purify(omega)
    lhs_vec = d_os.power(0.5 - z) @ (d_rs.power(z) @ sigma_vec.vector)
    rhs_vec = d_ro.power(z) @ omega_vec.vector
    lhs = float(np.linalg.norm(lhs_vec))
    rhs = float(np.linalg.norm(rhs_vec))
    slack = tol - abs(lhs - rhs)
    return CheckReport("modular_identity", lhs, rhs, slack, slack >= 0,
                       {"z": [z.real, z.imag]})


def _as_out_vector(t: np.ndarray, m: np.ndarray, out_left: int) -> np.ndarray:
    vec = t @ m.ravel()
    return vec.reshape(out_left, -1)


def weighted_op_norm(t: np.ndarray, sigma: StateFunctional, tau: StateFunctional,
                     p: float, q: float,
                     config: SamplerConfig | None = None,
                     in_left: int | None = None,
                     out_left: int | None = None,
                     force_sampling: bool = False) -> OperatorNormEstimate:
    """Lower bound on the weighted operator norm
    ||T||_{p,sigma -> q,tau} = sup ||T xi||_{q,tau} / ||xi||_{p,sigma}.

    The (2,2) case is exact (largest singular value of the support-projected
    restriction).  Otherwise the bound comes from sampling (random supported
    vectors plus weight-power extremal inputs) followed by projected
    gradient ascent; the bound is realized by the returned witness.
    ``force_sampling`` routes the (2,2) case through the sampler as well,
    for cross-checking the ascent against the exact value.
    """
    _check_order(p)
    _check_order(q)
    cfg = config or SamplerConfig()
    t = np.asarray(t, dtype=complex)
    in_left = sigma.dim if in_left is None else in_left
    out_left = tau.dim if out_left is None else out_left
    if t.shape[1] % in_left or t.shape[0] % out_left:
        raise ShapeMismatchError(
            f"operator shape {t.shape} does not factor over legs "
            f"{in_left} and {out_left}"
        )
    in_right = t.shape[1] // in_left
    out_right = t.shape[0] // out_left

    def in_norm(m: np.ndarray) -> float:
        return vector_norm(VectorState.from_matrix(m), sigma, p)

    def out_norm(m: np.ndarray) -> float:
        return vector_norm(
            VectorState.from_matrix(_as_out_vector(t, m, out_left)), tau, q
        )

    p_in = mc.support_projector(sigma.density)
    p_out = mc.support_projector(tau.density)

    if p == 2 and q == 2 and not force_sampling:
        restricted = mc.kron(p_out, np.eye(out_right)) @ t @ mc.kron(
            p_in, np.eye(in_right)
        )
        u, s, vh = np.linalg.svd(restricted)
        value = float(s[0]) if s.size else 0.0
        witness = VectorState.from_vector(vh[0].conj(), in_left, in_right)
        return OperatorNormEstimate(value, witness, 0, exact=True)

    w_in = mc.mat_power(sigma.density, weight_exponent(p))
    w_out = mc.mat_power(tau.density, weight_exponent(q))

    def ratio(m: np.ndarray) -> float:
        ni = in_norm(m)
        if not math.isfinite(ni) or ni <= 0:
            return -1.0
        return out_norm(m) / ni

    rng = mc.rng_from_seed(cfg.seed, 401)
    candidates: list[np.ndarray] = []
    if in_right == in_left:
        candidates.append(mc.mat_sqrt(sigma.density))  # the weight's own vector
    for _ in range(cfg.samples):
        kind = rng.integers(3)
        if kind == 0 or in_right != in_left:
            m = p_in @ mc.random_ginibre(in_left, in_right, rng)
        elif kind == 1:
            # weight-power extremal form: omega^{1/p} acting on sigma's vector
            g = mc.random_ginibre(in_left, in_left, rng)
            w = g @ mc.dagger(g)
            w = w / np.trace(w).real
            lead = mc.mat_power(w, 0.0 if p == np.inf else 1.0 / p)
            m = lead @ mc.mat_sqrt(sigma.density) @ mc.random_unitary(in_right, rng)
        else:
            m = p_in @ mc.random_ginibre(in_left, in_right, rng) @ mc.random_unitary(
                in_right, rng
            )
        candidates.append(m)

    scored = sorted(
        ((ratio(m), i) for i, m in enumerate(candidates)),
        key=lambda pair: -pair[0],
    )
    best_val, best_idx = scored[0]
    if best_val < 0:
        raise NotConvergedError("no feasible input found for the operator norm")
    best_m = candidates[best_idx]

    def ascend(m0: np.ndarray) -> tuple[np.ndarray, float]:
        m = m0
        val = ratio(m)
        for _ in range(cfg.max_iter):
            nout, gout_b = _schatten_dual_gradient(
                w_out @ _as_out_vector(t, m, out_left), q
            )
            nin, gin_b = _schatten_dual_gradient(w_in @ m, p)
            if nout <= 0 or nin <= 0:
                break
            gout = (mc.dagger(t) @ (w_out @ gout_b).ravel()).reshape(m.shape)
            grad = p_in @ (gout / nout - (w_in @ gin_b) / nin)
            step = cfg.step
            improved = False
            for _ in range(30):
                cand = m + step * grad
                cand_val = ratio(cand)
                if cand_val > val:
                    improved = True
                    break
                step /= 2.0
            if not improved or abs(cand_val - val) < 1e-12 * (1 + val):
                if improved:
                    m, val = cand, cand_val
                break
            m, val = cand, cand_val
        return m, val

    for _, idx in scored[: max(cfg.restarts, 1)]:
        m_opt, val = ascend(candidates[idx])
        if val > best_val:
            best_m, best_val = m_opt, val

    ni = in_norm(best_m)
    witness = VectorState.from_matrix(best_m / ni)
    return OperatorNormEstimate(best_val, witness, len(candidates), exact=False)


def _endpoint_upper_value(t: np.ndarray, sigma: StateFunctional,
                          tau: StateFunctional, p: float, q: float,
                          isometry_tol: float) -> float:
    """Certified upper value of ||T||_{p,sigma->q,tau} at an exact endpoint."""
    if (p, q) == (2.0, 2.0):
        est = weighted_op_norm(t, sigma, tau, 2, 2)
        return est.lower_bound  # exact at (2,2)
    if p == np.inf and q == np.inf:
        gram = mc.dagger(t) @ t
        if np.max(np.abs(gram - np.eye(gram.shape[0]))) <= isometry_tol:
            # isometric embeddings never increase weighted sup-norms
            return 1.0
        raise ConfigError(
            "(inf,inf) endpoint is certified only for isometric operators"
        )
    raise ConfigError(f"no exact endpoint evaluation for (p,q)=({p},{q})")


def riesz_thorin_check(t: np.ndarray, sigma: StateFunctional, tau: StateFunctional,
                       theta: float,
                       endpoints: tuple[tuple[float, float], tuple[float, float]] = (
                           (np.inf, np.inf), (2.0, 2.0)),
                       config: SamplerConfig | None = None,
                       tol: float | None = None) -> CheckReport:
    """Interpolation bound for weighted operator norms:
    the sampled lower bound at the interpolated orders must not exceed the
    product of certified endpoint values.

    Default endpoints are (inf,inf) and (2,2), which are exactly computable
    for isometric embeddings (both equal one there).
    """
    tol = DEFAULT_TOLERANCES.riesz_thorin if tol is None else tol
    (p0, q0), (p1, q1) = endpoints
    for order in (p0, q0, p1, q1):
        if not (order == np.inf or order >= 2):
            raise BadExponentError("endpoint orders must be >= 2")
    if not 0.0 <= theta <= 1.0:
        raise BadExponentError(f"theta must lie in [0,1], got {theta}")
    iso_tol = DEFAULT_TOLERANCES.isometry

    upper0 = _endpoint_upper_value(t, sigma, tau, p0, q0, iso_tol)
    upper1 = _endpoint_upper_value(t, sigma, tau, p1, q1, iso_tol)
    upper = (upper0 ** (1 - theta)) * (upper1 ** theta)

    def interp(a: float, b: float) -> float:
        inv = (1 - theta) * (0.0 if a == np.inf else 1 / a) + theta * (
            0.0 if b == np.inf else 1 / b
        )
        return np.inf if inv == 0 else 1.0 / inv

    p_theta = interp(p0, p1)
    q_theta = interp(q0, q1)
    est = weighted_op_norm(t, sigma, tau, p_theta, q_theta, config)
    slack = upper + tol - est.lower_bound
    return CheckReport(
        "riesz_thorin", est.lower_bound, upper, slack, slack >= 0,
        {
            "theta": theta,
            "p_theta": p_theta,
            "q_theta": q_theta,
            "endpoint_values": [upper0, upper1],
            "samples": est.samples,
        },
    )
