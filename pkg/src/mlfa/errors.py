"""Exception types raised by mlfa."""


class MLFAError(Exception):
    """Base class for all library errors."""


class DomainError(MLFAError, ValueError):
    """An argument lies outside the domain of the operation."""


class PoleError(DomainError):
    """Gamma function evaluated at a non-positive integer."""


class GammaPole(PoleError):
    pass


class UnsupportedBeta(DomainError):
    """The requested order is valid but not supported by this code path (usually beta == 1)."""


class InvalidHParams(DomainError):
    """Fox-H parameters fail the series-evaluability conditions."""


class CauchySchwarzViolation(DomainError):
    pass


class OverflowGuard(DomainError):
    """Moment order above the supported cap."""


class NotPositiveDefinite(DomainError):
    pass


class NoConvergence(MLFAError, ArithmeticError):
    """A series did not reach its tolerance within the term budget."""


class SeriesDivergence(NoConvergence):
    """Argument outside the validated radius of a series evaluation path."""


class QuadratureFailure(MLFAError, ArithmeticError):
    """Quadrature error estimate exceeds the requested tolerance."""


class IllConditioned(MLFAError, ArithmeticError):
    pass


class DegenerateDenominator(MLFAError, ArithmeticError):
    pass
