from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class BetaParam:
    """Order beta of the Mittag-Leffler measure, restricted to (0, 1]."""

    beta: float

    def __post_init__(self):
        b = float(self.beta)
        if not (math.isfinite(b) and 0.0 < b <= 1.0):
            raise DomainError(f"beta must lie in (0, 1], got {self.beta!r}")
        object.__setattr__(self, "beta", b)

    def __float__(self) -> float:
        return self.beta


def as_beta(beta) -> float:
    """Validate ``beta`` (a float or :class:`BetaParam`) and return it as a float."""
    if isinstance(beta, BetaParam):
        return beta.beta
    return BetaParam(beta).beta


@dataclass(frozen=True)
class SeriesConfig:
    """Truncation controls for power-series evaluation.

    A series is cut once the running term bound drops below
    ``abs_tol * max(1, |partial sum|)``. ``cancel_tol`` caps the estimated
    rounding error of a double-precision sum; above it the evaluators switch
    to an integral representation or extended precision.
    """

    abs_tol: float = 1e-17
    max_terms: int = 20000
    cancel_tol: float = 1e-12

    def __post_init__(self):
        if self.abs_tol < 0 or self.cancel_tol <= 0:
            raise DomainError("tolerances must be non-negative")
        if int(self.max_terms) < 1:
            raise DomainError("max_terms must be positive")


@dataclass(frozen=True)
class QuadConfig:
    rel_tol: float = 1e-11
    abs_tol: float = 1e-13
    max_subdivisions: int = 200

    def __post_init__(self):
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise DomainError("quadrature tolerances must be positive")
        if int(self.max_subdivisions) < 1:
            raise DomainError("max_subdivisions must be positive")


DEFAULT_SERIES = SeriesConfig()
DEFAULT_QUAD = QuadConfig()
