"""Randomized verification suites over seeded desk-scale instances.

Each suite turns one family of theorems into machine-checked inequalities
on a seed x dimension grid.  Every failure record carries enough data
(suite, seed, dim, instance label, lhs/rhs/slack) to reproduce the instance
in isolation.  Suites are pure in their inputs; with ``jobs > 1`` the
(seed, dim) cells run in a thread pool and results are reduced in
submission order, so reports are deterministic.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from . import classical
from . import matcore as mc
from .channels import (
    apply_predual,
    dpi_check_states,
    dpi_check_vectors,
    measurement_channel,
    random_channel,
    stinespring,
)
from .config import DEFAULT_TOLERANCES, Tolerances
from .divergences import (
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
from .exceptions import ConfigError
from .hyptest import (
    exponent_empirics,
    finite_n_bound_check,
    neyman_pearson_test,
    strong_converse_curve,
    tensor_power,
)
from .lpnorms import (
    OptimizerConfig,
    SamplerConfig,
    duality_value,
    hoelder_attainment,
    hoelder_check,
    interpolation_check,
    log_convexity_scan,
    modular_identity_check,
    plain_norm_bound_check,
    riesz_thorin_check,
    variational_norm,
    vector_norm,
    weighted_op_norm,
)
from .states import (
    StateFunctional,
    VectorState,
    purify,
    random_density,
    random_unit_vector,
)

__all__ = ["SUITE_NAMES", "SuiteConfig", "Report", "run_suite", "run_suites"]

SUITE_NAMES = (
    "norms",
    "duality",
    "interpolation",
    "riesz_thorin",
    "divergences",
    "alt",
    "limits",
    "dpi",
    "modular",
    "hyptest",
)

NORM_ORDERS = (1.0, 4.0 / 3.0, 2.0, 3.0, 4.0, 10.0)
DUALITY_ORDERS = (2.0, 4.0, 64.0)
ALT_ALPHAS = (0.6, 0.75, 1.5, 2.0)
DPI_ALPHAS = (0.5, 1.5, 2.0, np.inf)
DPI_ORDERS = (1.0, 1.5, 4.0, np.inf)
RT_THETAS = (2.0 / 3.0, 0.5, 0.25)  # interpolated orders p_theta = 3, 4, 8


@dataclass
class SuiteConfig:
    """Selection of suites plus the seed x dimension grid they run on."""

    seeds: list[int]
    dims: list[int]
    suites: list[str]
    tolerances: Tolerances = DEFAULT_TOLERANCES
    jobs: int = 1
    negate_alt: bool = False  # test-only bug injection for harness self-tests

    def __post_init__(self) -> None:
        bad = [d for d in self.dims if not 2 <= d <= 6]
        if bad:
            raise ConfigError(f"dims must lie in [2, 6], got {bad}")
        unknown = [s for s in self.suites if s not in SUITE_NAMES]
        if unknown:
            raise ConfigError(f"unknown suites {unknown}; choose from {SUITE_NAMES}")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")


@dataclass
class Report:
    """Result of one suite over the full grid."""

    suite: str
    instances: int
    failures: list[dict[str, Any]]
    wall_time: float
    notes: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict[str, Any]:
        return {
            "suite": self.suite,
            "instances": self.instances,
            "failures": self.failures,
            "pass": self.passed,
            "wall_time": self.wall_time,
            "notes": self.notes,
        }


def _record(seed: int, dim: int, instance: str, lhs: float, rhs: float,
            slack: float, passed: bool) -> dict[str, Any]:
    return {
        "seed": seed,
        "dim": dim,
        "instance": instance,
        "lhs": float(lhs),
        "rhs": float(rhs),
        "slack": float(slack),
        "passed": bool(passed),
    }


def _from_report(seed: int, dim: int, instance: str, rep) -> dict[str, Any]:
    return _record(seed, dim, instance, rep.lhs, rep.rhs, rep.slack, rep.passed)


def _pair(seed: int, dim: int, full_rank: bool = True,
          rho_rank: int | None = None) -> tuple[StateFunctional, StateFunctional]:
    rho = random_density(dim, rho_rank or dim, seed * 1000 + 1)
    sigma = random_density(dim, dim if full_rank else max(dim - 1, 1),
                           seed * 1000 + 2)
    return rho, sigma


# ---------------------------------------------------------------------------
# individual suites: each cell function maps (tolerances, seed, dim) to records


def _cell_norms(tol: Tolerances, seed: int, dim: int) -> list[dict[str, Any]]:
    rho, sigma = _pair(seed, dim)
    records = []
    cfg = OptimizerConfig(seed=seed)
    for p in NORM_ORDERS:
        closed = vector_norm(purify(rho), sigma, p)
        var = variational_norm(rho, sigma, p, cfg)
        gap = abs(var.value - closed)
        records.append(_record(seed, dim, f"route_agreement p={p:g}",
                               closed, var.value, tol.variational - gap,
                               gap <= tol.variational))
        plug = hoelder_attainment(rho, sigma, p)
        att = abs(plug - var.value)
        records.append(_record(seed, dim, f"optimizer_attainment p={p:g}",
                               plug, var.value, tol.optimizer_attainment - att,
                               att <= tol.optimizer_attainment))
    for p in (1.5, 4.0):
        records.append(_from_report(seed, dim, f"plain_norm_bound p={p:g}",
                                    plain_norm_bound_check(rho, sigma, p,
                                                           tol.inequality_slack)))
    return records


def _cell_duality(tol: Tolerances, seed: int, dim: int) -> list[dict[str, Any]]:
    rho, sigma = _pair(seed, dim)
    xi = purify(rho)
    records = []
    cfg = OptimizerConfig(seed=seed, restarts=3)
    for p in DUALITY_ORDERS:
        res = duality_value(xi, sigma, p, cfg)
        records.append(_record(seed, dim, f"duality p={p:g}",
                               res.value, res.value + res.gap,
                               tol.duality - res.gap, res.gap <= tol.duality))
    for k in range(10):
        a = random_unit_vector(dim, seed * 100 + 2 * k)
        b = random_unit_vector(dim, seed * 100 + 2 * k + 1)
        rep = hoelder_check(a, b, sigma, 4.0, tol.inequality_slack)
        records.append(_from_report(seed, dim, f"hoelder #{k}", rep))
    return records


def _cell_interpolation(tol: Tolerances, seed: int, dim: int) -> list[dict[str, Any]]:
    rho, sigma = _pair(seed, dim)
    rng = mc.rng_from_seed(seed, dim, 31)
    theta = float(rng.uniform(0.1, 0.9))
    records = []
    hi = sorted(2.0 + 8.0 * rng.random(2))
    records.append(_from_report(
        seed, dim, "interpolation high",
        interpolation_check(rho, sigma, hi[0], hi[1], theta, tol.inequality_slack)))
    lo = sorted(1.0 + rng.random(2))
    records.append(_from_report(
        seed, dim, "interpolation low",
        interpolation_check(rho, sigma, lo[0], lo[1], theta, tol.inequality_slack)))
    records.append(_from_report(
        seed, dim, "log_convexity high",
        log_convexity_scan(rho, sigma, [2.0, 3.0, 4.0, 6.0, 10.0],
                           tol.inequality_slack)))
    records.append(_from_report(
        seed, dim, "log_convexity low",
        log_convexity_scan(rho, sigma, [1.0, 1.25, 1.5, 1.75, 2.0],
                           tol.inequality_slack)))
    return records


def _cell_riesz_thorin(tol: Tolerances, seed: int, dim: int,
                       samples: int = 112) -> list[dict[str, Any]]:
    ch = random_channel(dim, dim, 2, seed * 7 + 3)
    sigma = random_density(dim, dim, seed * 1000 + 2)
    tau = apply_predual(ch, sigma)
    v = stinespring(ch).isometry
    t = mc.kron(v, np.eye(dim))
    records = []
    for theta in RT_THETAS:
        rep = riesz_thorin_check(
            t, sigma, tau, theta,
            config=SamplerConfig(samples=samples, restarts=2, seed=seed),
            tol=tol.riesz_thorin_sample,
        )
        records.append(_from_report(
            seed, dim, f"riesz_thorin p_theta={rep.detail['p_theta']:g}", rep))
    est22 = weighted_op_norm(t, sigma, tau, 2, 2)
    records.append(_record(seed, dim, "stinespring (2,2) endpoint",
                           est22.lower_bound, 1.0,
                           1.0 + tol.route_agreement - est22.lower_bound,
                           est22.lower_bound <= 1.0 + tol.route_agreement))
    return records


def _cell_divergences(tol: Tolerances, seed: int, dim: int) -> list[dict[str, Any]]:
    records = []
    rng = mc.rng_from_seed(seed, dim, 53)

    # commuting reduction: diagonal instances against the scalar formulas
    r_vec = rng.dirichlet(np.ones(dim))
    s_vec = rng.dirichlet(np.ones(dim)) * float(rng.uniform(0.5, 2.0))
    rho_d = StateFunctional.from_density(np.diag(r_vec).astype(complex))
    sigma_d = StateFunctional.from_density(np.diag(s_vec).astype(complex))

    def close(instance: str, got: float, want: float) -> None:
        err = abs(got - want)
        records.append(_record(seed, dim, instance, got, want,
                               tol.classical - err, err <= tol.classical))

    for alpha in (0.5, 0.7, 1.3, 2.0, 5.0):
        close(f"classical sandwiched a={alpha:g}",
              sandwiched(rho_d, sigma_d, alpha).value,
              classical.renyi_divergence(r_vec, s_vec, alpha))
    for alpha in (0.5, 1.5, 2.0):
        close(f"classical petz a={alpha:g}",
              petz(rho_d, sigma_d, alpha).value,
              classical.renyi_divergence(r_vec, s_vec, alpha))
    close("classical umegaki", umegaki(rho_d, sigma_d),
          classical.kl_divergence(r_vec, s_vec))
    close("classical fidelity", fidelity(rho_d, sigma_d),
          classical.fidelity(r_vec, s_vec))
    close("classical dmax", dmax(rho_d, sigma_d),
          classical.max_divergence(r_vec, s_vec))
    for p in (1.0, 1.5, 2.0, 3.0, np.inf):
        close(f"classical norm p={p:g}",
              vector_norm(purify(rho_d), sigma_d, p),
              classical.weighted_lp_norm(r_vec, s_vec, p))

    # ordering chain and route identity on a generic full-rank pair
    rho, sigma = _pair(seed, dim)
    d_half = sandwiched(rho, sigma, 0.5).value
    d_one = umegaki(rho, sigma)
    d_two = sandwiched(rho, sigma, 2.0).value
    d_inf = dmax(rho, sigma)
    chain_worst = min(-math.log(fidelity(rho, sigma)) - d_half + tol.inequality_slack,
                      d_one - d_half, d_two - d_one, d_inf - d_two)
    records.append(_record(seed, dim, "ordering chain", d_half, d_inf,
                           chain_worst, chain_worst >= -tol.inequality_slack))
    for alpha in (0.6, 1.5, 1.9):
        ds = sandwiched(rho, sigma, alpha).value
        dp = petz(rho, sigma, alpha).value
        records.append(_record(seed, dim, f"sandwiched<=petz a={alpha:g}",
                               ds, dp, dp - ds, dp - ds >= -tol.inequality_slack))

    alpha = 1.7
    via_norm = 2 * alpha / (alpha - 1.0) * math.log(
        vector_norm(purify(rho), sigma, 2 * alpha))
    err = abs(sandwiched(rho, sigma, alpha).value - via_norm)
    records.append(_record(seed, dim, "route identity a=1.7", via_norm,
                           sandwiched(rho, sigma, alpha).value,
                           1e-9 - err, err <= 1e-9))

    u = mc.random_unitary(dim, rng)
    rho_u = StateFunctional.from_density(u @ rho.density @ mc.dagger(u))
    sigma_u = StateFunctional.from_density(u @ sigma.density @ mc.dagger(u))
    cov = abs(sandwiched(rho_u, sigma_u, 2.0).value - d_two)
    records.append(_record(seed, dim, "unitary covariance", cov, 0.0,
                           1e-9 - cov, cov <= 1e-9))

    finite = all(math.isfinite(petz(rho, sigma, a).value)
                 for a in (0.25, 0.75, 1.25, 1.75, 2.0))
    records.append(_record(seed, dim, "petz finite under domination",
                           0.0, 0.0, 0.0, finite))

    below = richardson_extrapolate(
        [petz(rho, sigma, 1 - 2.0 ** -k).value for k in range(3, 13)])
    above = richardson_extrapolate(
        [petz(rho, sigma, 1 + 2.0 ** -k).value for k in range(3, 13)])
    for label, val in (("petz limit below", below), ("petz limit above", above)):
        err = abs(val - d_one)
        records.append(_record(seed, dim, label, val, d_one,
                               tol.extrapolation - err, err <= tol.extrapolation))

    records.append(_from_report(
        seed, dim, "alpha monotonicity",
        alpha_monotonicity_scan(rho, sigma, [0.5, 0.75, 0.9, 1.1, 1.5, 2, 5, 20],
                                tol.inequality_slack)))
    return records


def _cell_alt(tol: Tolerances, seed: int, dim: int,
              negate: bool = False) -> list[dict[str, Any]]:
    rho, sigma = _pair(seed, dim)
    records = []
    for alpha in ALT_ALPHAS:
        rep = alt_check(rho, sigma, 2 * alpha, tol.inequality_slack,
                        tol.route_agreement)
        passed = (not rep.passed) if negate else rep.passed
        records.append(_record(seed, dim, f"alt a={alpha:g}", rep.lhs, rep.rhs,
                               rep.slack, passed))
    rep = alt_check(rho, sigma, 1.0, tol.inequality_slack, tol.route_agreement)
    passed = (not rep.passed) if negate else rep.passed
    records.append(_record(seed, dim, "alt p=1", rep.lhs, rep.rhs, rep.slack,
                           passed))
    return records


def _cell_limits(tol: Tolerances, seed: int, dim: int) -> list[dict[str, Any]]:
    rho, sigma = _pair(seed, dim)
    records = []
    err = abs(renyi_limit(rho, sigma, "half") + math.log(fidelity(rho, sigma)))
    records.append(_record(seed, dim, "half-order fidelity identity",
                           err, 0.0, tol.fidelity_identity - err,
                           err <= tol.fidelity_identity))
    d_one = umegaki(rho, sigma)
    for label, target in (("limit below", "one_from_below"),
                          ("limit above", "one_from_above")):
        val = renyi_limit(rho, sigma, target)
        err = abs(val - d_one)
        records.append(_record(seed, dim, label, val, d_one,
                               tol.extrapolation - err, err <= tol.extrapolation))
    d_inf = dmax(rho, sigma)
    tail = renyi_limit(rho, sigma, "infinity")
    prev = sandwiched(rho, sigma, 512.0).value
    monotone = tail >= prev - tol.inequality_slack
    below = tail <= d_inf + tol.inequality_slack
    # approach rate at desk scale: |log| spectral data over alpha ~ 1e3
    near = d_inf - tail <= 2e-2
    records.append(_record(seed, dim, "infinite-order approach", tail, d_inf,
                           d_inf - tail, monotone and below and near))
    return records


def _cell_dpi(tol: Tolerances, seed: int, dim: int) -> list[dict[str, Any]]:
    rng = mc.rng_from_seed(seed, dim, 77)
    out_dim = int(rng.integers(2, dim + 1))
    n_kraus = int(rng.integers(1, 4))
    n_kraus = max(n_kraus, -(-dim // out_dim))  # isometry needs out*env >= in
    ch = random_channel(dim, out_dim, n_kraus, seed * 13 + 5)
    rho = random_density(dim, int(rng.integers(1, dim + 1)), seed * 1000 + 1)
    sigma = random_density(dim, dim, seed * 1000 + 2)
    records = []
    for alpha in DPI_ALPHAS:
        rep = dpi_check_states(ch, rho, sigma, alpha, tol.dpi_slack)
        records.append(_from_report(seed, dim, f"dpi states a={alpha:g}", rep))
    xi_candidates = (purify(rho), random_unit_vector(dim, seed * 17 + 9))
    for p in DPI_ORDERS:
        xi = xi_candidates[int(rng.integers(2))]
        rep = dpi_check_vectors(ch, xi, sigma, p, tol.dpi_slack)
        records.append(_from_report(seed, dim, f"dpi vectors p={p:g}", rep))

    # two-outcome measurement reduction: the measured pair bounds from below
    g = mc.random_ginibre(dim, dim, rng)
    h = g @ mc.dagger(g)
    effect = h / (np.linalg.norm(h, 2) * float(rng.uniform(1.0, 2.0)))
    mch = measurement_channel(effect)
    for alpha in (1.5, 2.0):
        lhs = sandwiched(rho, sigma, alpha).value
        measured = classical.renyi_divergence(
            [rho.value(effect).real, 1 - rho.value(effect).real],
            [sigma.value(effect).real, sigma.trace_value - sigma.value(effect).real],
            alpha,
        )
        slack = lhs - measured
        records.append(_record(seed, dim, f"measured pair bound a={alpha:g}",
                               lhs, measured, slack, slack >= -tol.dpi_slack))
        rep = dpi_check_states(mch, rho, sigma, alpha, tol.dpi_slack)
        records.append(_from_report(seed, dim,
                                    f"dpi measurement a={alpha:g}", rep))
    return records


def _cell_modular(tol: Tolerances, seed: int, dim: int) -> list[dict[str, Any]]:
    rng = mc.rng_from_seed(seed, dim, 91)
    rho = random_density(dim, dim, seed * 1000 + 1)
    sigma = random_density(dim, dim, seed * 1000 + 2)
    omega = random_density(dim, dim, seed * 1000 + 3)
    z = complex(float(rng.uniform(0, 0.5)), float(rng.uniform(-2, 2)))
    rep = modular_identity_check(rho, sigma, omega, z, tol.modular)
    return [_record(seed, dim, f"modular z={z:.3f}", rep.lhs, rep.rhs,
                    rep.slack, rep.passed)]


def _smoothed_pair(seed: int, dim: int,
                   floor: float = 0.15) -> tuple[StateFunctional, StateFunctional]:
    """Random pair mixed with the maximally mixed state.

    The eigenvalue floor keeps tensor powers numerically full rank up to
    n = 6, which the finite-n chain and additivity checks rely on.
    """
    eye = np.eye(dim) / dim
    rho = random_density(dim, dim, seed * 1000 + 1).density
    tau = random_density(dim, dim, seed * 1000 + 2).density
    return (StateFunctional.from_density((1 - floor) * rho + floor * eye),
            StateFunctional.from_density((1 - floor) * tau + floor * eye))


def _cell_hyptest(tol: Tolerances, seed: int, dim: int) -> list[dict[str, Any]]:
    rho, tau = _smoothed_pair(seed, dim)
    records = []
    lam_grid = list(np.geomspace(0.05, 20.0, 11))
    n_grid = (1, 3, 5, 6) if dim == 2 else (1, 3, 5)
    for n in n_grid:
        rep = finite_n_bound_check(rho, tau, n, lam_grid,
                                   [0.5, 0.75, 1.5, 2.0, 4.0],
                                   tol.dpi_slack, tol.additivity)
        records.append(_from_report(seed, dim, f"finite-n chain n={n}", rep))

    # threshold-test optimality of the weighted error sum
    rng = mc.rng_from_seed(seed, dim, 19)
    lam = float(rng.uniform(0.2, 5.0))
    t_opt, e1, e2 = neyman_pearson_test(rho, tau, lam)
    weighted = (1 - np.trace(rho.density @ t_opt).real) + lam * e2
    worst = math.inf
    for _ in range(5):
        w = rng.uniform(0, 1, rho.dim)
        u = mc.random_unitary(rho.dim, rng)
        alt = (u * w) @ mc.dagger(u)
        val = (1 - np.trace(rho.density @ alt).real
               + lam * np.trace(tau.density @ alt).real)
        worst = min(worst, val - weighted)
    records.append(_record(seed, dim, "threshold test optimality",
                           weighted, weighted + worst, worst,
                           worst >= -tol.inequality_slack))

    # exponent curve: convex, nondecreasing, dominated by finite-n empirics
    d_one = umegaki(rho, tau)
    r_grid = [d_one * f for f in (0.5, 1.0, 1.5, 2.0, 3.0)]
    curve = strong_converse_curve(rho, tau, r_grid)
    diffs = np.diff(curve.exponents)
    mono = float(np.min(diffs)) if diffs.size else 0.0
    records.append(_record(seed, dim, "curve nondecreasing", 0.0, 0.0, mono,
                           mono >= -tol.curve))
    mid_slack = math.inf
    for i in range(len(r_grid) - 2):
        mid_slack = min(mid_slack, (curve.exponents[i] + curve.exponents[i + 2]) / 2
                        - curve.exponents[i + 1])
    records.append(_record(seed, dim, "curve convex", 0.0, 0.0, mid_slack,
                           mid_slack == math.inf or mid_slack >= -tol.curve))

    rate = float(r_grid[3])
    point = strong_converse_curve(rho, tau, [rate]).exponents[0]
    rows = exponent_empirics(rho, tau, rate, n_max=5)
    worst_dom = min(row["typeI_exponent"] - point for row in rows)
    records.append(_record(seed, dim, f"empirics dominate curve r={rate:.3f}",
                           point, point + worst_dom, worst_dom,
                           worst_dom >= -tol.empirics))
    return records


def _cell_hyptest_classical(tol: Tolerances, seed: int,
                            dim: int) -> list[dict[str, Any]]:
    """Commuting cross-check of the exponent curve against the scalar route."""
    rng = mc.rng_from_seed(seed, dim, 23)
    r_vec = rng.dirichlet(np.ones(dim))
    s_vec = rng.dirichlet(np.ones(dim))
    rho = StateFunctional.from_density(np.diag(r_vec).astype(complex))
    tau = StateFunctional.from_density(np.diag(s_vec).astype(complex))
    records = []
    base = classical.kl_divergence(r_vec, s_vec)
    for rate in (0.5 * base, 1.5 * base, 3.0 * base):
        got = strong_converse_curve(rho, tau, [rate]).exponents[0]
        want = classical.strong_converse_exponent(r_vec, s_vec, rate)
        err = abs(got - want)
        records.append(_record(seed, dim, f"classical curve r={rate:.3f}",
                               got, want, tol.curve - err, err <= tol.curve))
    return records


_CELL_FUNCS: dict[str, Callable[..., list[dict[str, Any]]]] = {
    "norms": _cell_norms,
    "duality": _cell_duality,
    "interpolation": _cell_interpolation,
    "riesz_thorin": _cell_riesz_thorin,
    "divergences": _cell_divergences,
    "alt": _cell_alt,
    "limits": _cell_limits,
    "dpi": _cell_dpi,
    "modular": _cell_modular,
    "hyptest": _cell_hyptest,
}


def run_suite(cfg: SuiteConfig, suite: str) -> Report:
    """Run one named suite over the configured grid and collect failures."""
    if suite not in SUITE_NAMES:
        raise ConfigError(f"unknown suite {suite!r}")
    start = time.perf_counter()
    tol = cfg.tolerances
    cells: list[tuple[int, int]] = [(d, s) for d in sorted(cfg.dims)
                                    for s in cfg.seeds]

    def run_cell(cell: tuple[int, int]) -> list[dict[str, Any]]:
        dim, seed = cell
        if suite == "alt":
            recs = _cell_alt(tol, seed, dim, negate=cfg.negate_alt)
        elif suite == "hyptest":
            recs = _cell_hyptest(tol, seed, dim)
            recs += _cell_hyptest_classical(tol, seed, dim)
        else:
            recs = _CELL_FUNCS[suite](tol, seed, dim)
        return recs

    if cfg.jobs > 1:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            all_records = list(pool.map(run_cell, cells))
    else:
        all_records = [run_cell(cell) for cell in cells]

    records = [r for cell_records in all_records for r in cell_records]
    failures = [r for r in records if not r["passed"]]
    return Report(suite, len(records), failures,
                  time.perf_counter() - start)


def run_suites(cfg: SuiteConfig) -> list[Report]:
    """Run every selected suite; reports come back in canonical suite order."""
    return [run_suite(cfg, s) for s in SUITE_NAMES if s in cfg.suites]
