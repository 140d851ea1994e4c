"""Numerical conventions and the tolerance table.

Conventions fixed once for the whole package:

* All logarithms are natural; every divergence is reported in nats.
* Scalars are double precision; complex scalars are pairs of doubles.
* Pseudo-powers: a PSD matrix raised to any complex power acts as zero on
  its kernel.  Eigenvalues at or below ``support_rel * ||A||_inf`` count as
  zero.  This single cutoff governs every pseudo-inverse power.
* The algebra acts on the left tensor leg, the commutant on the right leg,
  and transposes are taken in the computational basis.

Every tolerance used by the library and the verification suites lives in
the frozen record below so there is exactly one place to read or override
them.  The same table ships as a versioned JSON file (``data/default_config.json``)
for the command line; the environment variable ``RENYILAB_CONFIG`` may point
at an alternative file.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

CONFIG_VERSION = 1

#: Environment variable naming an alternative default CLI config file.
CONFIG_ENV_VAR = "RENYILAB_CONFIG"


@dataclass(frozen=True)
class Tolerances:
    """All numerical tolerances, as documented constants in one record."""

    #: max-norm Hermiticity defect allowed when accepting a Hermitian matrix
    hermiticity: float = 1e-10
    #: relative support cutoff for pseudo-powers, vs the largest |eigenvalue|
    support_rel: float = 1e-10
    #: eigendecomposition reconstruction error, relative to 1 + ||A||_inf
    eig_reconstruction: float = 1e-9
    #: orthonormality defect of eigenvector matrices
    unitarity: float = 1e-10
    #: |trace - 1| for a functional to count as normalized
    trace: float = 1e-10
    #: V^dag V = 1 defect for isometries
    isometry: float = 1e-9
    #: sum K_i^dag K_i = 1 defect for channels
    unitality: float = 1e-9
    #: eigenvalue window [-tol, 1+tol] for hypothesis tests
    test_operator: float = 1e-10
    #: allowed negative slack on exact inequalities (interpolation, Hoelder, ...)
    inequality_slack: float = 1e-9
    #: agreement between two evaluation routes of the same quantity
    route_agreement: float = 1e-8
    #: closed form vs variational norm agreement
    variational: float = 1e-5
    #: attainment of the variational value by the closed-form optimizer
    optimizer_attainment: float = 1e-8
    #: duality value vs closed-form norm agreement
    duality: float = 1e-5
    #: Richardson-extrapolated alpha -> 1 limit vs relative entropy
    extrapolation: float = 1e-4
    #: alpha -> 1/2 fidelity identity (exact, evaluated directly)
    fidelity_identity: float = 1e-8
    #: approach of the divergence to its alpha -> infinity value by alpha = 1e3
    dmax_approach: float = 1e-3
    #: allowed negative slack on data-processing inequalities
    dpi_slack: float = 1e-8
    #: modular operator identity agreement
    modular: float = 1e-7
    #: tensor-power additivity of divergences
    additivity: float = 1e-7
    #: interpolation bound slack for sampled operator-norm midpoints
    riesz_thorin: float = 1e-6
    #: per-sample midpoint ratio excess for isometries with unit endpoints
    riesz_thorin_sample: float = 1e-8
    #: matrix route vs classical scalar formula on commuting instances
    classical: float = 1e-10
    #: exponent-curve convexity and classical cross-check slack
    curve: float = 1e-9
    #: empirical finite-n exponents vs the exponent curve
    empirics: float = 1e-6

    def override(self, **kwargs: float) -> "Tolerances":
        """Return a copy with the named tolerances replaced."""
        known = {f.name for f in fields(self)}
        for key, value in kwargs.items():
            if key not in known:
                raise KeyError(f"unknown tolerance {key!r}")
            if not value > 0:
                raise ValueError(f"tolerance {key!r} must be positive")
        merged = {f.name: getattr(self, f.name) for f in fields(self)}
        merged.update(kwargs)
        return Tolerances(**merged)

    def as_dict(self) -> dict[str, float]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


DEFAULT_TOLERANCES = Tolerances()
