"""Structured results for inequality and identity checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

__all__ = ["CheckReport"]


@dataclass
class CheckReport:
    """Outcome of one machine-checked inequality or identity.

    ``slack`` is oriented so that nonnegative (up to the stated tolerance)
    means the claim holds: for an inequality lhs <= rhs it is rhs - lhs, for
    an identity it is tolerance - |lhs - rhs|.
    """

    name: str
    lhs: float
    rhs: float
    slack: float
    passed: bool
    detail: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "pass": self.passed,
        }
        out.update(self.detail)
        return out

    def __bool__(self) -> bool:
        return self.passed
