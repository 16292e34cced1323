"""Appell P-system, its dual Q-system and S/T-transforms along one direction.

Everything lives on the cylinder spanned by a single test function ``phi``:
``t = <z, phi>`` is the scalar variable and ``u = <phi, phi>`` its norm. The
pairing ``t`` is distributed as ``sqrt(u) X`` with ``X ~ mu_beta^1``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from ._mp import mp_work
from ._types import as_beta
from .errors import CauchySchwarzViolation, DomainError, IllConditioned
from .orthopoly import COND_LIMIT, DensePolynomial, _mp_moment
from .specfn import gamma, mittag_leffler

__all__ = [
    "AppellPoly",
    "DualSystem",
    "appell_poly",
    "dual_system",
    "biorthogonality_matrix",
    "generating_residual",
    "s_transform_coeff",
    "t_transform_exp",
    "t_from_s",
    "normalized_exponential",
]

MAX_APPELL = 20
MAX_DUAL = 10
_DPS = 50


@dataclass(frozen=True)
class AppellPoly:
    n: int
    u: float
    poly: DensePolynomial
    beta: float = 1.0

    def __call__(self, t):
        return self.poly(t)


def _denominator(beta, u, n):
    """Coefficients of ``E_beta(u eps**2 / 2)`` in powers of eps, up to eps**n."""
    d = [0.0] * (n + 1)
    for k in range(n // 2 + 1):
        d[2 * k] = (0.5 * u) ** k / gamma(beta * k + 1.0)
    return d


def _reciprocal(d, n):
    """Power-series inverse of ``d`` (``d[0] == 1``) up to order n."""
    r = [0.0] * (n + 1)
    r[0] = 1.0 / d[0]
    for j in range(1, n + 1):
        r[j] = -math.fsum(d[k] * r[j - k] for k in range(1, j + 1) if d[k] != 0.0) / d[0]
    return r


def appell_poly(beta, n: int, u) -> AppellPoly:
    """``p_n(t) = n! sum_{j+m=n} r_j t**m / m!`` with ``r`` the inverse series of ``E_beta(u eps**2/2)``.

    These are the coefficients of ``e**(eps t) / E_beta(u eps**2 / 2) = sum eps**n p_n(t) / n!``.
    """
    b = as_beta(beta)
    n = int(n)
    u = float(u)
    if u < 0:
        raise DomainError("u must be non-negative")
    if not 0 <= n <= MAX_APPELL:
        raise DomainError(f"order must lie in [0, {MAX_APPELL}]")
    r = _reciprocal(_denominator(b, u, n), n)
    fn = math.factorial(n)
    coeffs = [fn / math.factorial(m) * r[n - m] for m in range(n + 1)]
    # p_n has the parity of n
    coeffs = [c if (n - m) % 2 == 0 else 0.0 for m, c in enumerate(coeffs)]
    return AppellPoly(n, u, DensePolynomial(coeffs, monic=True), b)


def generating_residual(beta, u, t, N: int) -> list:
    """Coefficients of eps**0..eps**N in ``sum_n eps**n p_n(t)/n! * E_beta(u eps**2/2) - e**(eps t)``."""
    b = as_beta(beta)
    d = _denominator(b, u, N)
    p = [appell_poly(b, n, u)(t) / math.factorial(n) for n in range(N + 1)]
    return [
        math.fsum(p[n] * d[k - n] for n in range(k + 1)) - t**k / math.factorial(k)
        for k in range(N + 1)
    ]


@dataclass(frozen=True)
class DualSystem:
    """Finite-order dual system with ``int q_n p_m dmu = delta_nm n! u**n``."""

    beta: float
    N: int
    u: float
    p_polys: tuple
    q_polys: tuple
    gram: np.ndarray


def _pair(ctx, beta, p, q, su):
    # int p(t) q(t) dmu for t = sqrt(u) X, exact in the working precision
    acc = ctx.mpf(0)
    for a, ca in enumerate(p.coeffs):
        for c, cc in enumerate(q.coeffs):
            if ca != 0.0 and cc != 0.0 and (a + c) % 2 == 0:
                acc += ctx.mpf(ca) * ctx.mpf(cc) * _mp_moment(ctx, beta, a + c) * su ** ((a + c) // 2)
    return acc


def _mp_gram(ctx, beta, polys, u):
    n = len(polys)
    G = ctx.matrix(n, n)
    su = ctx.mpf(u)
    for i in range(n):
        for j in range(i, n):
            G[i, j] = G[j, i] = _pair(ctx, beta, polys[i], polys[j], su)
    return G


def dual_system(beta, N: int, u) -> DualSystem:
    """Build ``q_0..q_N`` from the exact Gram matrix of ``p_0..p_N``.

    ``G[n, m] = int p_n p_m dmu``; the q-coefficients in the p-basis are
    ``diag(n! u**n) G**-1``. The linear algebra runs in 50-digit arithmetic;
    :class:`IllConditioned` is raised when the condition number of the
    diagonally equilibrated ``G`` exceeds ``COND_LIMIT``.
    """
    b = as_beta(beta)
    N = int(N)
    u = float(u)
    if not 0 <= N <= MAX_DUAL:
        raise DomainError(f"order must lie in [0, {MAX_DUAL}]")
    if u <= 0:
        raise DomainError("u must be positive")
    p = [appell_poly(b, n, u).poly for n in range(N + 1)]
    with mp_work(_DPS) as ctx:
        G = _mp_gram(ctx, b, p, u)
        gram = np.array(G.tolist(), dtype=float)
        # the diagonal n! u**n scale is harmless; judge the equilibrated matrix
        dscale = 1.0 / np.sqrt(np.diag(gram))
        cond = np.linalg.cond(gram * np.outer(dscale, dscale))
        if not cond <= COND_LIMIT:
            raise IllConditioned(f"Gram matrix of order {N} has condition number {cond:.3g}")
        Ginv = ctx.inverse(G)
        q = []
        for n in range(N + 1):
            w = math.factorial(n) * ctx.mpf(u) ** n
            coeffs = [ctx.mpf(0)] * (N + 1)
            for k in range(N + 1):
                qk = w * Ginv[n, k]
                for m, c in enumerate(p[k].coeffs):
                    coeffs[m] += qk * c
            q.append(DensePolynomial([float(c) for c in coeffs]))
    return DualSystem(b, N, u, tuple(p), tuple(q), gram)


def biorthogonality_matrix(ds: DualSystem) -> np.ndarray:
    """``B[n, m] = int q_n p_m dmu``, evaluated exactly from the stored coefficients."""
    with mp_work(_DPS) as ctx:
        n = ds.N + 1
        out = np.empty((n, n))
        su = ctx.mpf(ds.u)
        for i, q in enumerate(ds.q_polys):
            for j, p in enumerate(ds.p_polys):
                out[i, j] = float(_pair(ctx, ds.beta, q, p, su))
    return out


def s_transform_coeff(Phi_coeffs, theta_pairing):
    """``sum_n Phi_coeffs[n] * theta**n`` (Horner; complex theta allowed)."""
    acc = 0.0
    for c in reversed(list(Phi_coeffs)):
        acc = acc * theta_pairing + c
    return acc


def _cs_check(eta_sq, eta_phi, phi_sq):
    if any(isinstance(v, complex) and v.imag != 0.0 for v in (eta_phi, phi_sq)):
        return
    eta_phi = complex(eta_phi).real
    phi_sq = complex(phi_sq).real
    if phi_sq < 0 or eta_phi * eta_phi > eta_sq * phi_sq * (1.0 + 1e-12) + 1e-300:
        raise CauchySchwarzViolation(
            f"<eta,phi>**2 = {eta_phi * eta_phi:.6g} exceeds <eta,eta><phi,phi> = {eta_sq * phi_sq:.6g}"
        )


def t_transform_exp(beta, x, eta_sq, eta_phi, phi_sq) -> complex:
    """T-transform of ``exp(i x <., eta>)`` at ``phi``: ``E_beta(-z) / (2 pi)``.

    ``z = x**2 <eta,eta>/2 + <phi,phi>/2 + x <eta,phi>``; complex pairings are accepted.
    """
    if not eta_sq > 0:
        raise DomainError("eta_sq must be positive")
    _cs_check(eta_sq, eta_phi, phi_sq)
    z = 0.5 * x * x * eta_sq + 0.5 * phi_sq + x * eta_phi
    return complex(mittag_leffler(beta, -z)) / (2.0 * math.pi)


def t_from_s(beta, s_value_at_i_phi, phi_sq) -> complex:
    """``T(phi) = E_beta(-<phi,phi>/2) S(i phi)``."""
    return complex(mittag_leffler(beta, -0.5 * phi_sq)) * complex(s_value_at_i_phi)


def normalized_exponential(beta, t, u, tiny=1e-300):
    """``e_mu(phi; z) = exp(t) / E_beta(u/2)`` with ``t = <z, phi>``, ``u = <phi, phi>``.

    Rejects ``phi`` where the normalizer vanishes (possible for complex ``u``).
    """
    den = mittag_leffler(beta, 0.5 * u)
    if abs(den) <= tiny:
        raise DomainError(f"E_beta(u/2) vanishes at u={u!r}")
    if isinstance(t, complex) or isinstance(den, complex):
        return cmath.exp(t) / den
    return math.exp(t) / den
