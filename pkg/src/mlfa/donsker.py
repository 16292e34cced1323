"""Donsker's delta for the Mittag-Leffler measure.

The T-transform at ``phi`` is ``(2 pi <eta,eta>)**-1/2 * L(z)`` with
``z = <phi,phi>/2 - <eta,phi>**2 / (2 <eta,eta>)`` and

    L(z) = sum_k (-z)**k Gamma(k + 1/2) / (k! Gamma(1 + beta (k - 1/2))),

the Laplace transform of ``M_beta(r) r**(-1/2)``. At ``beta == 1`` this is
``exp(-z)`` and the Gaussian Donsker delta is recovered.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from scipy.integrate import quad as _quad

from . import _backend
from ._types import QuadConfig, as_beta
from .appell import _cs_check
from .errors import DomainError, GammaPole, NoConvergence, QuadratureFailure, SeriesDivergence
from .specfn import gamma, laplace_m_wright, mittag_leffler

__all__ = [
    "DonskerSpec",
    "donsker_T",
    "donsker_T_quad",
    "donsker_expectation",
    "donsker_kernels",
    "donsker_S",
    "h_coefficients",
    "DONSKER_QUAD",
]

# the x-integrand decays only like 1/x**2 for beta < 1, so the default
# request is looser than the generic one
DONSKER_QUAD = QuadConfig(rel_tol=1e-10, abs_tol=1e-12, max_subdivisions=400)


@dataclass(frozen=True)
class DonskerSpec:
    """Donsker's delta ``delta(<., eta> - a)`` with ``eta_sq = <eta, eta>``."""

    beta: float
    eta_sq: float
    a: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "beta", as_beta(self.beta))
        if not (math.isfinite(self.eta_sq) and self.eta_sq > 0):
            raise DomainError("eta_sq must be positive")
        object.__setattr__(self, "eta_sq", float(self.eta_sq))
        object.__setattr__(self, "a", float(self.a))


def _z(spec, eta_phi, phi_sq):
    _cs_check(spec.eta_sq, eta_phi, phi_sq)
    z = 0.5 * phi_sq - eta_phi * eta_phi / (2.0 * spec.eta_sq)
    if isinstance(z, complex) and z.imag == 0.0:
        z = z.real
    if not isinstance(z, complex):
        # Cauchy-Schwarz makes z >= 0; clip rounding noise
        scale = 0.5 * abs(phi_sq) + 1e-300
        if z < -1e-12 * scale:
            raise DomainError(f"negative z={z} for real phi")
        z = max(z, 0.0)
    return z


def _prefactor(spec):
    return 1.0 / math.sqrt(2.0 * math.pi * spec.eta_sq)


def donsker_T(spec: DonskerSpec, eta_phi, phi_sq):
    """T-transform of Donsker's delta at ``phi`` (shift ``a`` must be 0)."""
    if spec.a != 0.0:
        raise DomainError("closed form only for a = 0; use donsker_T_quad for shifted deltas")
    z = _z(spec, eta_phi, phi_sq)
    try:
        L = laplace_m_wright(spec.beta, 0.5, z)
    except NoConvergence as exc:
        raise SeriesDivergence(f"donsker_T: series unusable at z={z!r}") from exc
    return _prefactor(spec) * L


def h_coefficients(beta, N: int) -> list:
    """``h_k = (-1)**k Gamma(k + 1/2) / (k! Gamma(1 + beta (k - 1/2)))`` for k < N."""
    b = as_beta(beta)
    out = []
    for k in range(N):
        lg = math.lgamma(k + 0.5) - math.lgamma(k + 1.0)
        out.append((-1.0) ** k * math.exp(lg) / gamma(1.0 + b * (k - 0.5)))
    return out


def donsker_T_quad(spec: DonskerSpec, eta_phi, phi_sq, quad: QuadConfig | None = None, *, full_output=False):
    """Oracle: ``(1/2 pi) int exp(-i x a) E_beta(-z(x)) dx`` over the real line.

    ``z(x) = x**2 <eta,eta>/2 + <phi,phi>/2 + x <eta,phi>``. After completing
    the square the integrand is even; the half line is integrated to infinity
    (QAGI, or the Fourier-cosine rule QAWF when ``a != 0``) because the
    integrand only decays like ``1/x**2`` for ``beta < 1``.
    """
    q = quad or DONSKER_QUAD
    b = spec.beta
    z0 = _z(spec, eta_phi, phi_sq)
    if isinstance(z0, complex):
        raise DomainError("donsker_T_quad needs real pairings")
    x0 = -eta_phi / spec.eta_sq
    half = 0.5 * spec.eta_sq
    f = _backend.integrand("donsker_x_integrand")
    kw = dict(args=(b, half, z0), limit=int(q.max_subdivisions))
    if spec.a == 0.0:
        v, e = _quad(f, 0.0, math.inf, epsabs=q.abs_tol, epsrel=q.rel_tol, **kw)
    else:
        # QAWF accepts only an absolute tolerance
        v, e = _quad(f, 0.0, math.inf, weight="cos", wvar=abs(spec.a), epsabs=q.abs_tol, **kw)
    val = v / math.pi
    err = e / math.pi
    if not (math.isfinite(val) and err <= max(q.abs_tol, q.rel_tol * abs(val))):
        raise QuadratureFailure(f"donsker_T_quad: error estimate {err:.3g} exceeds request")
    out = cmath.exp(-1j * x0 * spec.a) * val
    return (out, err) if full_output else out


def donsker_expectation(spec: DonskerSpec, reading: str = "series") -> float:
    """Generalized expectation ``1 / (sqrt(2 <eta,eta>) Gamma(1 - beta/2))``.

    ``reading="series"`` (default) uses ``Gamma(1 - beta/2)``, the k=0 term of
    the series. ``reading="alt"`` uses ``Gamma(1 - 1/(2 beta))``, the other
    way to parse the printed exponent; both agree at ``beta == 1``.
    """
    if spec.a != 0.0:
        raise DomainError("the expectation formula is for a = 0")
    b = spec.beta
    if reading == "series":
        arg = 1.0 - 0.5 * b
    elif reading == "alt":
        arg = 1.0 - 0.5 / b
        if arg <= 0 and arg == math.floor(arg):
            raise GammaPole(f"Gamma({arg}) is a pole at beta={b}")
    else:
        raise ValueError(f"unknown reading {reading!r}")
    return 1.0 / (math.sqrt(2.0 * spec.eta_sq) * gamma(arg))


def donsker_kernels(spec: DonskerSpec, N: int, psi_sq=1.0, eta_psi=0.0) -> list:
    """Chaos kernels ``c_n`` of Donsker's delta on the cylinder along ``psi``.

    ``S(lam psi) = sum_n c_n lam**n`` for real ``lam``; obtained by dividing
    the T-series at ``-i lam psi`` by ``E_beta(lam**2 <psi,psi>/2)`` as formal
    power series. Odd coefficients vanish. ``c_0`` is the generalized expectation.
    """
    if spec.a != 0.0:
        raise DomainError("kernels are computed for a = 0")
    N = int(N)
    if not 0 <= N <= 20:
        raise DomainError("order must lie in [0, 20]")
    _cs_check(spec.eta_sq, eta_psi, psi_sq)
    b = spec.beta
    u = float(psi_sq)
    w = eta_psi * eta_psi / (2.0 * spec.eta_sq) - 0.5 * u  # z(-i lam psi) = lam**2 w
    h = h_coefficients(b, N // 2 + 1)
    pref = _prefactor(spec)
    num = [0.0] * (N + 1)
    den = [0.0] * (N + 1)
    for k in range(N // 2 + 1):
        num[2 * k] = pref * h[k] * w**k
        den[2 * k] = (0.5 * u) ** k / gamma(b * k + 1.0)
    c = [0.0] * (N + 1)
    for n in range(N + 1):
        c[n] = (num[n] - math.fsum(den[k] * c[n - k] for k in range(1, n + 1) if den[k] != 0.0)) / den[0]
    return c


def donsker_S(spec: DonskerSpec, eta_theta, theta_sq):
    """S-transform ``T(-i theta) / E_beta(<theta,theta>/2)`` in closed form."""
    if spec.a != 0.0:
        raise DomainError("closed form only for a = 0")
    _cs_check(spec.eta_sq, eta_theta, theta_sq)
    z = -0.5 * theta_sq + eta_theta * eta_theta / (2.0 * spec.eta_sq)
    den = mittag_leffler(spec.beta, 0.5 * theta_sq)
    if abs(den) == 0.0:
        raise DomainError("E_beta(<theta,theta>/2) vanishes")
    return _prefactor(spec) * laplace_m_wright(spec.beta, 0.5, z) / den
