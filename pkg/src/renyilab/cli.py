"""Command-line front end.

Commands:

* ``compute divergence`` / ``compute norm`` — evaluate one quantity from
  state files, JSON on stdout.
* ``verify`` — run the randomized verification suites; exit code 0 iff all
  selected suites pass, with a machine-readable report written to ``--out``.
* ``hyptest curve`` / ``hyptest empirics`` — exponent curves and finite-n
  tables as CSV.

Exit codes: 0 success, 1 suite failure or assertion failure, 2 usage or
parse errors.  Reports are deterministic given the configuration (modulo
the wall_time field).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from importlib import resources

import numpy as np

from .config import CONFIG_ENV_VAR, DEFAULT_TOLERANCES, Tolerances
from .divergences import dmax, fidelity, petz, sandwiched, umegaki
from .exceptions import RenyiLabError, ConfigError
from .hyptest import exponent_empirics, strong_converse_curve
from .lpnorms import vector_norm
from .serialize import load_json_file, state_from_json
from .states import purify
from .suites import SUITE_NAMES, Report, SuiteConfig, run_suites

USAGE_EXIT = 2
FAILURE_EXIT = 1


def _load_default_config() -> dict:
    override = os.environ.get(CONFIG_ENV_VAR)
    if override:
        return load_json_file(override)
    with resources.files("renyilab.data").joinpath("default_config.json").open(
        "r", encoding="utf-8"
    ) as handle:
        return json.load(handle)


def _load_state(path: str):
    obj = load_json_file(path)
    return state_from_json(obj)


def _emit(obj: dict) -> None:
    json.dump(obj, sys.stdout, sort_keys=True)
    sys.stdout.write("\n")


def _cmd_compute(args: argparse.Namespace) -> int:
    if args.what == "divergence":
        rho = _load_state(args.rho)
        sigma = _load_state(args.sigma)
        kind = args.kind
        if kind == "sandwiched":
            if args.alpha is None:
                raise ConfigError("--alpha is required for the sandwiched kind")
            val = sandwiched(rho, sigma, args.alpha)
            _emit({"value": val.value, "route": val.route, "alpha": val.alpha})
        elif kind == "petz":
            if args.alpha is None:
                raise ConfigError("--alpha is required for the petz kind")
            val = petz(rho, sigma, args.alpha)
            _emit({"value": val.value, "route": val.route, "alpha": val.alpha})
        elif kind == "umegaki":
            _emit({"value": umegaki(rho, sigma), "route": "closed_form"})
        elif kind == "fidelity":
            _emit({"value": fidelity(rho, sigma), "route": "closed_form"})
        elif kind == "dmax":
            _emit({"value": dmax(rho, sigma), "route": "closed_form"})
        else:  # pragma: no cover - argparse restricts choices
            raise ConfigError(f"unknown divergence kind {kind!r}")
        return 0
    if args.what == "norm":
        rho = _load_state(args.rho)
        sigma = _load_state(args.sigma)
        p = math.inf if args.p in ("inf", "oo") else float(args.p)
        value = vector_norm(purify(rho), sigma, p)
        _emit({"value": value, "p": p, "route": "closed_form"})
        return 0
    raise ConfigError(f"unknown compute target {args.what!r}")  # pragma: no cover


def _parse_tolerance_overrides(pairs: list[str]) -> dict[str, float]:
    out: dict[str, float] = {}
    for pair in pairs or []:
        if "=" not in pair:
            raise ConfigError(f"--tol expects name=value, got {pair!r}")
        name, value = pair.split("=", 1)
        try:
            out[name.strip()] = float(value)
        except ValueError as exc:
            raise ConfigError(f"bad tolerance value in {pair!r}") from exc
    return out


def _cmd_verify(args: argparse.Namespace) -> int:
    defaults = _load_default_config()
    tol_table = dict(defaults.get("tolerances", {}))
    tol_table.update(_parse_tolerance_overrides(args.tol))
    try:
        tolerances = DEFAULT_TOLERANCES.override(**tol_table)
    except (KeyError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc

    seeds = args.seeds or defaults.get("seeds", list(range(1, 11)))
    dims = args.dims or defaults.get("dims", [2, 3])
    suites = args.suites or defaults.get("suites", list(SUITE_NAMES))
    cfg = SuiteConfig(
        seeds=list(seeds),
        dims=list(dims),
        suites=list(suites),
        tolerances=tolerances,
        jobs=args.jobs,
        negate_alt=args.negate_alt,
    )
    reports = run_suites(cfg)
    payload = {
        "config": {
            "seeds": cfg.seeds,
            "dims": cfg.dims,
            "suites": cfg.suites,
            "jobs": cfg.jobs,
            "negate_alt": cfg.negate_alt,
            "tolerances": tolerances.as_dict(),
        },
        "reports": [r.to_dict() for r in reports],
        "pass": all(r.passed for r in reports),
    }
    text = json.dumps(payload, sort_keys=True, indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    for rep in reports:
        status = "pass" if rep.passed else f"FAIL ({len(rep.failures)} failures)"
        print(f"{rep.suite:>14}: {status}  [{rep.instances} checks, "
              f"{rep.wall_time:.1f}s]")
        for failure in rep.failures[:5]:
            print(f"    seed={failure['seed']} dim={failure['dim']} "
                  f"{failure['instance']}: lhs={failure['lhs']:.6g} "
                  f"rhs={failure['rhs']:.6g} slack={failure['slack']:.3g}")
    return 0 if payload["pass"] else FAILURE_EXIT


def _parse_grid(spec: str) -> list[float]:
    parts = spec.split(":")
    if len(parts) != 3:
        raise ConfigError(f"grid must be start:stop:steps, got {spec!r}")
    try:
        start, stop, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise ConfigError(f"bad grid {spec!r}") from exc
    if steps < 1:
        raise ConfigError("grid needs at least one step")
    return list(np.linspace(start, stop, steps))


def _cmd_hyptest(args: argparse.Namespace) -> int:
    rho = _load_state(args.rho)
    tau = _load_state(args.tau)
    if args.what == "curve":
        grid = _parse_grid(args.r_grid)
        curve = strong_converse_curve(rho, tau, grid)
        print("# strong-converse exponent curve; the matching upper bound is "
              f"{curve.equality_status}; only the lower-bound direction is checked")
        print("r,exponent,alpha_witness")
        for r, e, a in zip(curve.r_grid, curve.exponents, curve.alpha_witnesses):
            print(f"{r:.12g},{e:.12g},{a:.12g}")
        return 0
    if args.what == "empirics":
        rows = exponent_empirics(rho, tau, args.r, args.n_max)
        print("n,typeI_exponent")
        for row in rows:
            print(f"{row['n']},{row['typeI_exponent']:.12g}")
        return 0
    raise ConfigError(f"unknown hyptest target {args.what!r}")  # pragma: no cover


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="renyilab",
        description="Weighted vector L_p norms, Renyi divergence family, and "
                    "their verification suites on desk-scale instances.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser("compute", help="evaluate one quantity from files")
    compute_sub = compute.add_subparsers(dest="what", required=True)

    div = compute_sub.add_parser("divergence", help="divergence between two states")
    div.add_argument("--kind", required=True,
                     choices=["sandwiched", "petz", "umegaki", "fidelity", "dmax"])
    div.add_argument("--alpha", type=float, default=None,
                     help="order for the Renyi kinds")
    div.add_argument("--rho", required=True, help="state JSON file")
    div.add_argument("--sigma", required=True, help="weight JSON file")

    norm = compute_sub.add_parser("norm", help="weighted vector norm of a state")
    norm.add_argument("--p", required=True,
                      help="norm order in [1, inf]; 'inf' for the sup norm")
    norm.add_argument("--rho", required=True, help="state JSON file")
    norm.add_argument("--sigma", required=True, help="weight JSON file")

    verify = sub.add_parser("verify", help="run the verification suites")
    verify.add_argument("--suites", nargs="*", choices=list(SUITE_NAMES),
                        help="subset of suites (default: config file)")
    verify.add_argument("--seeds", nargs="*", type=int,
                        help="instance seeds (default: config file)")
    verify.add_argument("--dims", nargs="*", type=int,
                        help="algebra dimensions in [2, 6]")
    verify.add_argument("--tol", nargs="*", metavar="NAME=VALUE",
                        help="tolerance overrides")
    verify.add_argument("--jobs", type=int, default=1,
                        help="worker threads for independent instances")
    verify.add_argument("--out", help="write the JSON report here")
    verify.add_argument("--restarts", type=int, default=None,
                        help=argparse.SUPPRESS)  # reserved; optimizers read config
    verify.add_argument("--negate-alt", action="store_true", dest="negate_alt",
                        help="test-only: flip the ALT assertion to prove the "
                             "harness can fail")

    hyp = sub.add_parser("hyptest", help="binary hypothesis-testing tools")
    hyp_sub = hyp.add_subparsers(dest="what", required=True)
    curve = hyp_sub.add_parser("curve", help="strong-converse exponent curve (CSV)")
    curve.add_argument("--rho", required=True)
    curve.add_argument("--tau", required=True)
    curve.add_argument("--r-grid", required=True, dest="r_grid",
                       metavar="START:STOP:STEPS")
    emp = hyp_sub.add_parser("empirics", help="finite-n exponent table (CSV)")
    emp.add_argument("--rho", required=True)
    emp.add_argument("--tau", required=True)
    emp.add_argument("--r", type=float, required=True, help="type-II rate")
    emp.add_argument("--n-max", type=int, default=6, dest="n_max")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "compute":
            return _cmd_compute(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "hyptest":
            return _cmd_hyptest(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except RenyiLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILURE_EXIT
    return USAGE_EXIT  # pragma: no cover


if __name__ == "__main__":
    sys.exit(main())
