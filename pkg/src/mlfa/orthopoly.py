"""Monic orthogonal polynomials of the one-dimensional Mittag-Leffler measure."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._mp import mp_work
from ._types import BetaParam, as_beta
from .errors import DegenerateDenominator, DomainError, IllConditioned
from .measure import MultivariatePolynomial, integrate_polynomial
from .specfn import gamma

__all__ = [
    "DensePolynomial",
    "orthogonal_poly",
    "closed_form_poly",
    "c_coeff",
    "cross_42",
    "cross_42_expansion",
    "inner_product",
    "MAX_DEGREE",
    "COND_LIMIT",
]

MAX_DEGREE = 12
COND_LIMIT = 1e12
_WORK_DPS = 50


@dataclass(frozen=True)
class DensePolynomial:
    """Univariate polynomial, ``coeffs[k]`` multiplies ``x**k``."""

    coeffs: tuple
    monic: bool = False

    def __post_init__(self):
        c = [float(v) for v in self.coeffs]
        while len(c) > 1 and c[-1] == 0.0:
            c.pop()
        if not c:
            c = [0.0]
        if self.monic:
            c[-1] = 1.0
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        return np.polynomial.polynomial.polyval(x, self.coeffs)

    def __add__(self, other: "DensePolynomial") -> "DensePolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0.0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0.0] * (n - len(other.coeffs))
        return DensePolynomial([x + y for x, y in zip(a, b)])

    def __neg__(self) -> "DensePolynomial":
        return DensePolynomial([-x for x in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, DensePolynomial):
            return DensePolynomial(np.polynomial.polynomial.polymul(self.coeffs, other.coeffs))
        return DensePolynomial([float(other) * x for x in self.coeffs])

    __rmul__ = __mul__

    def rescale(self, c) -> "DensePolynomial":
        """``x -> p(c x)``."""
        return DensePolynomial([a * c**k for k, a in enumerate(self.coeffs)])

    def as_multivariate(self, dim=1, axis=0) -> MultivariatePolynomial:
        terms = {}
        for k, a in enumerate(self.coeffs):
            if a != 0.0:
                e = [0] * dim
                e[axis] = k
                terms[tuple(e)] = a
        return MultivariatePolynomial(terms, dim)


def _mp_moment(ctx, beta, k):
    if k % 2:
        return ctx.mpf(0)
    n = k // 2
    # (2n)! / (2**n Gamma(beta n + 1))
    return ctx.mpf(math.factorial(2 * n)) / ctx.mpf(2) ** n / ctx.gamma(ctx.mpf(beta) * n + 1)


def inner_product(beta, p: DensePolynomial, q: DensePolynomial, scale=1.0) -> float:
    """``int p(t) q(t) dmu(t)`` for ``t = sqrt(scale) X``, ``X ~ mu_beta^1``, in 50-digit arithmetic.

    The coefficients are taken as exact binary values, so the only error is
    the final rounding. Double-precision moment sums lose up to ``1e-7``
    here once degrees reach 8 at small beta (terms of size ``1e9`` cancel).
    """
    b = as_beta(beta)
    with mp_work(_WORK_DPS) as ctx:
        s = ctx.mpf(scale)
        acc = ctx.mpf(0)
        for i, a in enumerate(p.coeffs):
            if a == 0.0:
                continue
            for j, c in enumerate(q.coeffs):
                if c != 0.0 and (i + j) % 2 == 0:
                    acc += ctx.mpf(a) * ctx.mpf(c) * _mp_moment(ctx, b, i + j) * s ** ((i + j) // 2)
        return float(acc)


def orthogonal_poly(beta, n: int) -> DensePolynomial:
    """Monic ``H_n`` orthogonal to all lower monomials under ``mu_beta^1``.

    Solves the Hankel moment system ``sum_j m_{i+j} c_j = -m_{i+n}``, ``i < n``,
    in 50-digit arithmetic. :class:`IllConditioned` is raised when the
    2-norm condition number of the Hankel matrix exceeds ``COND_LIMIT``.
    """
    b = as_beta(beta)
    n = int(n)
    if n < 0 or n > MAX_DEGREE:
        raise DomainError(f"degree must lie in [0, {MAX_DEGREE}], got {n}")
    if n == 0:
        return DensePolynomial([1.0], monic=True)
    with mp_work(_WORK_DPS) as ctx:
        mom = [_mp_moment(ctx, b, k) for k in range(2 * n)]
        H = ctx.matrix(n, n)
        for i in range(n):
            for j in range(n):
                H[i, j] = mom[i + j]
        cond = np.linalg.cond(np.array(H.tolist(), dtype=float))
        if not cond <= COND_LIMIT:
            raise IllConditioned(f"Hankel matrix of degree {n} has condition number {cond:.3g}")
        rhs = ctx.matrix([-mom[i + n] for i in range(n)])
        sol = ctx.lu_solve(H, rhs)
        # H_n has the parity of n; the opposite-parity entries vanish exactly
        coeffs = [float(sol[i]) if (n - i) % 2 == 0 else 0.0 for i in range(n)]
    return DensePolynomial(coeffs + [1.0], monic=True)


def c_coeff(beta) -> float:
    """``c(beta)``, minus the ``x**2`` coefficient of ``H_4``."""
    b = as_beta(beta)
    g1, g2, g3 = gamma(b + 1.0), gamma(2.0 * b + 1.0), gamma(3.0 * b + 1.0)
    num = 90.0 * g1 * g1 * g2 - 6.0 * g1 * g3
    den = 6.0 * g1 * g1 * g3 - g2 * g3
    if abs(den) <= 1e-14 * (6.0 * g1 * g1 * g3 + g2 * g3):
        raise DegenerateDenominator(f"c(beta) denominator vanishes at beta={b}")
    return num / den


def closed_form_poly(beta, n: int) -> DensePolynomial:
    """Printed closed forms of ``H_0`` .. ``H_4``."""
    b = as_beta(beta)
    g1, g2 = gamma(b + 1.0), gamma(2.0 * b + 1.0)
    if n == 0:
        return DensePolynomial([1.0], monic=True)
    if n == 1:
        return DensePolynomial([0.0, 1.0], monic=True)
    if n == 2:
        return DensePolynomial([-1.0 / g1, 0.0, 1.0], monic=True)
    if n == 3:
        return DensePolynomial([0.0, -6.0 * g1 / g2, 0.0, 1.0], monic=True)
    if n == 4:
        c = c_coeff(b)
        return DensePolynomial([c / g1 - 6.0 / g2, 0.0, -c, 0.0, 1.0], monic=True)
    raise DomainError("closed forms are printed for n <= 4 only")


def cross_42(beta) -> float:
    """``int H_4(x) H_2(y) dmu_beta^2(x, y)`` from its closed form; zero exactly at beta=1."""
    b = as_beta(beta)
    g1, g2, g3 = gamma(b + 1.0), gamma(2.0 * b + 1.0), gamma(3.0 * b + 1.0)
    den = g2 * g3 * (6.0 * g1 * g1 - g2)
    if den == 0.0:
        raise DegenerateDenominator(f"cross_42 prefactor undefined at beta={b}")
    A = 24.0 / den
    return A * (3.0 * g2 * g2 - 3.0 * g1 * g1 * g2 - g1 * g3)


def cross_42_expansion(beta) -> float:
    """Same quantity by multiplying out ``H_4(x) H_2(y)`` and integrating moment by moment."""
    b = as_beta(beta)
    h4 = orthogonal_poly(b, 4).as_multivariate(2, 0)
    h2 = orthogonal_poly(b, 2).as_multivariate(2, 1)
    return integrate_polynomial(b, h4 * h2)
