"""Moments and integrals against the finite-dimensional Mittag-Leffler measure."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from scipy.integrate import quad as _quad

from . import _backend
from ._types import DEFAULT_QUAD, BetaParam, QuadConfig, as_beta
from .errors import DomainError, OverflowGuard, QuadratureFailure, UnsupportedBeta
from .specfn import gamma, m_wright, mittag_leffler, mwright_tail_cutoff

__all__ = [
    "MultiIndexMoment",
    "MultivariatePolynomial",
    "QuadConfig",
    "moment",
    "integrate_polynomial",
    "exp_moment",
    "integrate_mixture",
    "nu_density",
    "MAX_ORDER",
]

MAX_ORDER = 60


def _moment_value(beta, orders):
    if any(n < 0 for n in orders):
        raise DomainError("moment orders must be non-negative")
    total = sum(orders)
    if total > MAX_ORDER:
        raise OverflowGuard(f"total order {total} exceeds the cap {MAX_ORDER}")
    if any(n % 2 for n in orders):
        return 0.0
    half = [n // 2 for n in orders]
    N = sum(half)
    # prod (2n_i)!/n_i! * N! / 2**N is a ratio of integers; only Gamma(beta N + 1) is inexact
    num = math.factorial(N)
    den = 2**N
    for h in half:
        num *= math.factorial(2 * h)
        den *= math.factorial(h)
    return float(Fraction(num, den)) / gamma(beta * N + 1.0)


@dataclass(frozen=True)
class MultiIndexMoment:
    """Mixed moment ``int x_1**n_1 ... x_d**n_d dmu_beta^d``."""

    beta: float
    orders: tuple

    def __post_init__(self):
        object.__setattr__(self, "beta", as_beta(self.beta))
        object.__setattr__(self, "orders", tuple(int(n) for n in self.orders))

    @property
    def value(self) -> float:
        return _moment_value(self.beta, self.orders)


def moment(m, orders=None) -> float:
    """Exact moment of ``mu_beta^d``.

    Call as ``moment(MultiIndexMoment(beta, orders))`` or ``moment(beta, orders)``.
    Odd orders give 0; even orders give
    ``prod (2n_i)! * N! / (2**N prod n_i! Gamma(beta N + 1))`` with ``N = sum n_i``.
    """
    if not isinstance(m, MultiIndexMoment):
        m = MultiIndexMoment(m, orders)
    return m.value


@dataclass(frozen=True)
class MultivariatePolynomial:
    """Sparse polynomial ``sum c_e x**e`` over exponent tuples of length ``dim``."""

    terms: Mapping[tuple, float] = field(default_factory=dict)
    dim: int = 1

    def __post_init__(self):
        if self.dim < 1:
            raise DomainError("dim must be positive")
        terms = {}
        for e, c in dict(self.terms).items():
            e = (int(e),) if isinstance(e, int) else tuple(int(k) for k in e)
            if len(e) != self.dim:
                raise DomainError(f"exponent {e} does not have length {self.dim}")
            terms[e] = terms.get(e, 0.0) + float(c)
        object.__setattr__(self, "terms", terms)

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def __mul__(self, other: "MultivariatePolynomial") -> "MultivariatePolynomial":
        if other.dim != self.dim:
            raise DomainError("dimension mismatch")
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0.0) + c1 * c2
        return MultivariatePolynomial(out, self.dim)

    def __call__(self, *x) -> float:
        return math.fsum(c * math.prod(xi**k for xi, k in zip(x, e)) for e, c in self.terms.items())


def integrate_polynomial(beta, p: MultivariatePolynomial) -> float:
    """``int p dmu_beta^d`` as a coefficient-weighted sum of exact moments."""
    b = as_beta(beta)
    return math.fsum(c * _moment_value(b, e) for e, c in p.terms.items() if c != 0.0)


def exp_moment(beta, lam, norm_sq) -> float:
    """``int exp(lam <w, phi>) dmu_beta(w) = E_beta(lam**2 <phi,phi> / 2)``."""
    if norm_sq < 0:
        raise DomainError("norm_sq must be non-negative")
    return mittag_leffler(beta, 0.5 * lam * lam * norm_sq)


def integrate_mixture(beta, cond_expectation: Callable[[float], float], quad: QuadConfig | None = None):
    """Mixture oracle ``int_0^inf g(s) M_beta(s) ds`` with ``g(s) = E_{N(0, s I)}[f]``.

    ``cond_expectation`` is ``g``. Returns ``(value, abserr)``; at ``beta == 1``
    the mixing law is the point mass at 1 and the result is ``(g(1), 0)``.
    """
    b = as_beta(beta)
    if b == 1.0:
        return float(cond_expectation(1.0)), 0.0
    q = quad or DEFAULT_QUAD
    K = _backend.kernels()

    def integrand(s):
        return cond_expectation(s) * K.mwright_real(b, s)[0]

    cut = mwright_tail_cutoff(b, 1.0, 0.0, weight=cond_expectation)
    val = err = 0.0
    for lo, hi in ((0.0, min(1.0, cut)), (min(1.0, cut), cut)):
        if hi > lo:
            v, e = _quad(integrand, lo, hi, epsabs=q.abs_tol, epsrel=q.rel_tol, limit=int(q.max_subdivisions))
            val += v
            err += e
    if not (math.isfinite(val) and err <= max(q.abs_tol, q.rel_tol * abs(val))):
        raise QuadratureFailure(f"integrate_mixture: error estimate {err:.3g} exceeds request")
    return val, err


def nu_density(beta, t, via="mwright") -> float:
    """Density of the mixing law ``nu_beta`` at ``t >= 0``.

    ``via="mwright"`` returns ``M_beta(t)``. ``via="stable"`` is a cross-check
    through the change of variables ``g(t) = t**(-1-1/beta) f(t**(-1/beta)) / beta``
    with ``f`` the one-sided stable density from :mod:`scipy.stats`.
    """
    b = as_beta(beta)
    if b == 1.0:
        raise UnsupportedBeta("nu_1 is the point mass at 1 and has no density")
    t = float(t)
    if t < 0:
        raise DomainError("t must be non-negative")
    if via == "mwright":
        return m_wright(b, t)
    if via != "stable":
        raise ValueError(f"unknown route {via!r}")
    if t == 0.0:
        return 1.0 / gamma(1.0 - b)
    # Laplace transform exp(-s**b): totally skewed, scale cos(pi b / 2)**(1/b), S1 location 0
    scale = math.cos(0.5 * math.pi * b) ** (1.0 / b)
    x = t ** (-1.0 / b)
    return float(_stable_s1().pdf(x, b, 1.0, scale=scale)) * t ** (-1.0 - 1.0 / b) / b


_STABLE = []


def _stable_s1():
    # private instance so the global scipy parameterization setting cannot leak in
    if not _STABLE:
        from scipy.stats import levy_stable

        gen = type(levy_stable)(name="levy_stable_s1")
        gen.parameterization = "S1"
        _STABLE.append(gen)
    return _STABLE[0]
