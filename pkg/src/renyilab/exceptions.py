"""Exception types raised across the package."""

from __future__ import annotations


class RenyiLabError(Exception):
    """Base class for all errors raised by this package."""


class NonHermitianError(RenyiLabError):
    """A matrix violates the Hermiticity tolerance."""


class NotPSDError(RenyiLabError):
    """A matrix has a negative eigenvalue beyond the support tolerance."""


class ShapeMismatchError(RenyiLabError):
    """Operands have incompatible shapes or tensor-leg factorizations."""


class BadExponentError(RenyiLabError):
    """A norm order p or interpolation parameter is out of range."""


class BadAlphaError(RenyiLabError):
    """A divergence order alpha is outside the defined range."""


class BadRankError(RenyiLabError):
    """Requested rank of a random instance is not in [1, dim]."""


class NotSupportedError(RenyiLabError):
    """A support relation (rho << sigma or rho <<< sigma) fails."""


class SupportViolationError(RenyiLabError):
    """A limit requires domination rho <<< sigma that does not hold."""


class InfeasibleSupportError(RenyiLabError):
    """The feasible set of a variational problem is empty for these supports."""


class NotConvergedError(RenyiLabError):
    """An iterative routine stopped before meeting its tolerance.

    Carries the best value reached and the gap to the reference value (when
    one is available) so callers can still inspect the partial result.
    """

    def __init__(self, message: str, best: float | None = None,
                 gap: float | None = None):
        super().__init__(message)
        self.best = best
        self.gap = gap


class ConfigError(RenyiLabError):
    """A suite or CLI configuration is invalid."""
