"""Special functions: Gamma, Mittag-Leffler, M-Wright and Fox-H series.

Real arguments are evaluated by a double-precision power series while its
cancellation is harmless, and by a non-oscillatory integral representation
beyond that:

* ``E_beta(-x) = sin(beta pi)/(beta pi) * int_0^inf exp(-w**(1/beta)) x / (w**2 + 2 w x cos(beta pi) + x**2) dw``
* ``M_beta(t) = t**(beta/(1-beta)) / (pi (1-beta)) * int_0^pi A(phi) exp(-A(phi) t**(1/(1-beta))) dphi``

Complex arguments with heavy cancellation are summed in extended precision
(mpmath). ``beta == 1`` is always handled in closed form.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Sequence

from scipy.integrate import quad as _quad

from . import _backend
from ._mp import mp_work
from ._types import DEFAULT_QUAD, DEFAULT_SERIES, BetaParam, QuadConfig, SeriesConfig, as_beta
from .errors import (
    DomainError,
    InvalidHParams,
    NoConvergence,
    PoleError,
    QuadratureFailure,
    UnsupportedBeta,
)

__all__ = [
    "BetaParam",
    "SeriesConfig",
    "QuadConfig",
    "HParams",
    "gamma",
    "mittag_leffler",
    "m_wright",
    "fox_h_series",
    "laplace_m_wright",
    "laplace_m_wright_quad",
    "mwright_tail_cutoff",
]

MP_MAX_DIGITS = 1200

# ------------------------------------------------------------------ Gamma

_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)


def _sinpi(x):
    if isinstance(x, complex):
        return cmath.sin(math.pi * x)
    return _backend.kernels().sinpi(x)


def _gamma_lanczos(x):
    # valid for Re(x) >= 0.5
    x = x - 1.0
    acc = _LANCZOS[0]
    for i in range(1, 9):
        acc += _LANCZOS[i] / (x + i)
    t = x + _LANCZOS_G + 0.5
    if isinstance(t, complex):
        return _SQRT_2PI * cmath.exp((x + 0.5) * cmath.log(t) - t) * acc
    # split the power so it does not overflow before exp(-t) is applied
    h = t ** ((x + 0.5) / 2.0)
    return _SQRT_2PI * h * (h * math.exp(-t)) * acc


def gamma(x):
    """Gamma function for real or complex ``x`` (Lanczos, g=7, with reflection).

    Positive integers up to 171 return the correctly rounded factorial.

    >>> gamma(5)
    24.0
    """
    if isinstance(x, complex):
        if x.imag == 0.0:
            x = x.real
        else:
            if x.real < 0.5:
                return math.pi / (cmath.sin(math.pi * x) * _gamma_lanczos(1.0 - x))
            return _gamma_lanczos(x)
    x = float(x)
    if x <= 0.0 and x == math.floor(x):
        raise PoleError(f"Gamma has a pole at {x}")
    if x == math.floor(x) and x <= 171.0:
        return float(math.factorial(int(x) - 1))
    if x < 0.5:
        return math.pi / (_sinpi(x) * _gamma_lanczos(1.0 - x))
    if x > 171.7:
        return math.inf
    if x > 20.0:
        # Lanczos loses ~1e-13 at large x through the rounding of x + g - 1/2;
        # shift down exactly and multiply back up with the recurrence
        n = int(x) - 10
        f = x - n
        acc = _gamma_lanczos(f)
        for k in range(n):
            acc *= f + k
        return acc
    return _gamma_lanczos(x)


def _lgamma_sign(x):
    """(log|Gamma(x)|, sign Gamma(x)) for real non-pole x."""
    if x <= 0.0 and x == math.floor(x):
        raise PoleError(f"Gamma has a pole at {x}")
    lg = math.lgamma(x)
    if x > 0.0:
        return lg, 1.0
    return lg, (-1.0 if math.floor(x) % 2 else 1.0)


# ------------------------------------------------------- series machinery


def _real_or_complex(z):
    if isinstance(z, complex) or (hasattr(z, "imag") and getattr(z, "imag", 0) != 0):
        z = complex(z)
        return (z.real if z.imag == 0.0 else z), z.imag != 0.0
    return float(z), False


def _wright_mp(z, s, a, A, c, C, digits, max_terms):
    """Extended-precision twin of the kernel ``wright_series``."""
    with mp_work(digits) as ctx:
        zz = ctx.mpc(z) * s
        a, A, c, C = (ctx.mpf(v) for v in (a, A, c, C))
        target = ctx.mpf(10) ** (-25)
        total = ctx.mpc(0)
        power = ctx.mpc(1)
        fact = ctx.mpf(1)
        small = 0
        prev = ctx.inf
        for k in range(int(max_terms)):
            if k:
                power *= zz
                fact *= k
            x = c + C * k
            num = ctx.gamma(a + A * k) / fact
            total += power * num * ctx.rgamma(x)
            rb = ctx.gamma(1 - x) / ctx.pi if x <= 0 else ctx.rgamma(x)
            bound = abs(power) * num * rb
            if bound <= target * max(1, abs(total)) and bound <= prev:
                small += 1
                if small >= 2:
                    return complex(total)
            else:
                small = 0
            prev = bound
    raise NoConvergence(f"extended-precision series did not converge in {max_terms} terms")


def _series(z, s, a, A, c, C, cfg, what):
    """Evaluate a Wright-type series; returns (value, info)."""
    K = _backend.kernels()
    zc = complex(z)
    re, im, abs_sum, rerr, n, status = K.wright_series(
        zc.real, zc.imag, s, a, A, c, C, cfg.abs_tol, cfg.max_terms
    )
    info = {"method": "series", "n_terms": n, "abs_sum": abs_sum, "error": rerr}
    if status == K.OVERFLOW:
        raise NoConvergence(f"{what}: series terms overflow double precision at z={z!r}")
    if status == K.MAX_TERMS:
        raise NoConvergence(f"{what}: max_terms={cfg.max_terms} reached before tolerance")
    if rerr <= cfg.cancel_tol:
        return complex(re, im), info
    digits = int(math.ceil(math.log10(max(abs_sum, 1.0)))) + 25
    if digits > MP_MAX_DIGITS:
        raise NoConvergence(
            f"{what}: cancellation needs {digits} digits at z={z!r} (cap {MP_MAX_DIGITS})"
        )
    val = _wright_mp(zc, s, a, A, c, C, digits, 50 * cfg.max_terms)
    info.update(method="series-mp", digits=digits, error=1e-17 * max(1.0, abs(val)))
    return val, info


def _out(val, is_complex):
    return complex(val) if is_complex else complex(val).real


# ------------------------------------------------------- Mittag-Leffler


def mittag_leffler(beta, z, cfg: SeriesConfig | None = None, *, method="auto", full_output=False):
    """Mittag-Leffler function ``E_beta(z) = sum_n z**n / Gamma(beta n + 1)``.

    ``method`` is ``"auto"``, ``"series"`` or ``"integral"``; the integral
    branch covers real ``z <= 0`` only. With ``full_output`` a dict with the
    chosen method and an error estimate is returned as well.
    """
    b = as_beta(beta)
    cfg = cfg or DEFAULT_SERIES
    z, cplx = _real_or_complex(z)
    if b == 1.0:
        val = cmath.exp(z) if cplx else math.exp(z)
        return (val, {"method": "closed-form", "error": 0.0}) if full_output else val
    if method not in ("auto", "series", "integral"):
        raise ValueError(f"unknown method {method!r}")
    K = _backend.kernels()
    real_neg = not cplx and z <= 0.0
    if method == "integral" or (
        method == "auto" and real_neg and (-z) ** (1.0 / b) > K.SWITCH_EXPONENT
    ):
        if not real_neg:
            raise DomainError("integral branch of E_beta needs real z <= 0")
        if z == 0.0:
            val, info = 1.0, {"method": "integral", "error": 0.0}
        else:
            v, e = K.ml_neg_integral(b, -z, 1e-15)
            val, info = v, {"method": "integral", "error": e}
    else:
        v, info = _series(z, 1.0, 1.0, 1.0, 1.0, b, cfg, "mittag_leffler")
        val = _out(v, cplx)
    return (val, info) if full_output else val


def m_wright(beta, z, cfg: SeriesConfig | None = None, *, method="auto", full_output=False):
    """M-Wright function ``M_beta(z) = sum_n (-z)**n / (n! Gamma(1 - beta - beta n))``.

    Defined for ``0 < beta < 1``; at ``beta == 1`` the mixing law is a point
    mass and :class:`UnsupportedBeta` is raised.
    """
    b = as_beta(beta)
    if b == 1.0:
        raise UnsupportedBeta("M_beta is a point mass at beta=1; special-case it")
    cfg = cfg or DEFAULT_SERIES
    if method not in ("auto", "series", "integral"):
        raise ValueError(f"unknown method {method!r}")
    z, cplx = _real_or_complex(z)
    K = _backend.kernels()
    real_pos = not cplx and z > 0.0
    if method == "integral" or (
        method == "auto"
        and real_pos
        and K.mwright_decay(b) * z ** (1.0 / (1.0 - b)) > K.SWITCH_EXPONENT
    ):
        if not real_pos:
            raise DomainError("integral branch of M_beta needs real z > 0")
        v, e = K.mwright_integral(b, z, 1e-15)
        val, info = v, {"method": "integral", "error": e}
    else:
        v, info = _series(z, -1.0, 1.0, 0.0, 1.0 - b, -b, cfg, "m_wright")
        val = _out(v, cplx)
    return (val, info) if full_output else val


# ------------------------------------------------------------------ Fox H


@dataclass(frozen=True)
class HParams:
    """Parameter block of ``H^{m n}_{p q}`` with ``upper=[(a_i, A_i)]``, ``lower=[(b_j, B_j)]``."""

    m: int
    n: int
    upper: Sequence[tuple] = field(default_factory=tuple)
    lower: Sequence[tuple] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple((float(a), float(A)) for a, A in self.upper))
        object.__setattr__(self, "lower", tuple((float(b), float(B)) for b, B in self.lower))
        p, q = self.p, self.q
        if not (0 <= self.n <= p and 1 <= self.m <= q):
            raise InvalidHParams(f"need 0 <= n <= p and 1 <= m <= q, got m={self.m} n={self.n} p={p} q={q}")
        if any(A <= 0 for _, A in self.upper) or any(B <= 0 for _, B in self.lower):
            raise InvalidHParams("all A_i and B_j must be positive")

    @property
    def p(self):
        return len(self.upper)

    @property
    def q(self):
        return len(self.lower)

    def check_series(self, n_terms=400):
        """Raise :class:`InvalidHParams` unless the residue series applies."""
        if sum(B for _, B in self.lower) - sum(A for _, A in self.upper) <= 0:
            raise InvalidHParams("series needs sum(B) - sum(A) > 0")
        lower = self.lower[: self.m]
        for j, (bj, Bj) in enumerate(lower):
            for k, (bk, Bk) in enumerate(lower):
                if j == k:
                    continue
                # B_k (b_j + l) == B_j (b_k + s) for some l, s >= 0 means colliding poles
                for l in range(n_terms):
                    s = (Bk * (bj + l) - Bj * bk) / Bj
                    if s > -1e-12 and abs(s - round(s)) < 1e-10:
                        raise InvalidHParams(f"poles of Gamma(b_{j+1}+sB) and Gamma(b_{k+1}+sB) collide")


def _gamma_factor(x, numerator):
    """(log|Gamma(x)^{+-1}|, sign, log bound) of one Gamma factor of the H series."""
    if numerator:
        if x <= 0.0 and x == math.floor(x):
            raise InvalidHParams(f"Gamma({x}) in the numerator is a pole; residue series invalid")
        lg, sg = _lgamma_sign(x)
        return lg, sg, lg
    return _backend.kernels().log_rgamma(x)


def fox_h_series(params: HParams, z, cfg: SeriesConfig | None = None, *, full_output=False):
    """Fox H-function from its residue series over the poles of ``Gamma(b_i + s B_i)``, i <= m."""
    cfg = cfg or DEFAULT_SERIES
    params.check_series()
    z, cplx = _real_or_complex(z)
    zc = complex(z)
    m, n = params.m, params.n
    lower, upper = params.lower, params.upper
    if zc == 0:
        if any(b / B < 0 for b, B in lower[:m]):
            raise DomainError("H series diverges at z=0 when some b_i/B_i < 0")
    logz = cmath.log(zc) if zc != 0 else None

    sr = er = si = ei = 0.0
    n_terms = 0
    for i in range(m):
        bi, Bi = lower[i]
        prev = math.inf
        small = 0
        for k in range(int(cfg.max_terms)):
            n_terms += 1
            e = (bi + k) / Bi
            logm = -math.lgamma(k + 1.0) - math.log(Bi)
            lbound = logm
            sign = -1.0 if k % 2 else 1.0
            for j in range(m):
                if j != i:
                    lg, sg, lb = _gamma_factor(lower[j][0] - e * lower[j][1], True)
                    logm += lg
                    lbound += lb
                    sign *= sg
            for j in range(m, params.q):
                lg, sg, lb = _gamma_factor(1.0 - lower[j][0] + e * lower[j][1], False)
                logm += lg
                lbound += lb
                sign *= sg
            for j in range(n):
                lg, sg, lb = _gamma_factor(1.0 - upper[j][0] + e * upper[j][1], True)
                logm += lg
                lbound += lb
                sign *= sg
            for j in range(n, params.p):
                lg, sg, lb = _gamma_factor(upper[j][0] - e * upper[j][1], False)
                logm += lg
                lbound += lb
                sign *= sg
            if logz is None:
                zpow = 1.0 if e == 0 else 0.0
                lzr = 0.0 if e == 0 else -math.inf
            else:
                w = e * logz
                lzr = w.real
                zpow = cmath.exp(1j * w.imag)
            if lzr + lbound > 709.0:
                raise NoConvergence("fox_h_series: terms overflow double precision")
            if sign != 0.0 and lzr != -math.inf:
                term = sign * math.exp(logm + lzr) * zpow
                for part in ("r", "i"):
                    x = term.real if part == "r" else term.imag
                    if part == "r":
                        t = sr + x
                        bp = t - sr
                        er += (sr - (t - bp)) + (x - bp)
                        sr = t
                    else:
                        t = si + x
                        bp = t - si
                        ei += (si - (t - bp)) + (x - bp)
                        si = t
            bound = math.exp(lzr + lbound) if lzr != -math.inf else 0.0
            total = abs(complex(sr + er, si + ei))
            if bound <= cfg.abs_tol * max(1.0, total) and bound <= prev:
                small += 1
                if small >= 2:
                    break
            else:
                small = 0
            prev = bound
        else:
            raise NoConvergence(f"fox_h_series: max_terms={cfg.max_terms} reached")
    val = complex(sr + er, si + ei)
    out = val if (cplx or (zc.real < 0 and abs(val.imag) > 0)) else val.real
    if isinstance(out, complex) and out.imag == 0.0 and not cplx:
        out = out.real
    return (out, {"n_terms": n_terms}) if full_output else out


# ------------------------------------------------ Laplace transform of M_beta


def laplace_m_wright(beta, rho, z, cfg: SeriesConfig | None = None, *, method="auto", full_output=False):
    """``int_0^inf M_beta(r) r**(rho-1) exp(-r z) dr`` from its Gamma-ratio power series.

    Series: ``sum_k (-z)**k Gamma(rho+k) / (k! Gamma(1 - beta + beta rho + beta k))``,
    which is ``H^{1 1}_{1 2}(z | (1-rho,1); (0,1), (beta-rho beta, beta))``.
    For real ``z > 0`` beyond the reach of double precision the ``auto``
    method falls back to the closed form (beta=1), the spectral integral of
    ``E_beta`` (rho=1) or extended precision.
    """
    b = as_beta(beta)
    rho = float(rho)
    if rho < 0.5:
        raise DomainError(f"rho must be >= 1/2, got {rho}")
    cfg = cfg or DEFAULT_SERIES
    z, cplx = _real_or_complex(z)
    K = _backend.kernels()
    zc = complex(z)
    re, im, abs_sum, rerr, n, status = K.wright_series(
        zc.real, zc.imag, -1.0, rho, 1.0, 1.0 - b + b * rho, b, cfg.abs_tol, cfg.max_terms
    )
    if status == K.OK and rerr <= cfg.cancel_tol:
        info = {"method": "series", "n_terms": n, "abs_sum": abs_sum, "error": rerr}
        val = _out(complex(re, im), cplx)
        return (val, info) if full_output else val
    if status == K.MAX_TERMS:
        raise NoConvergence(f"laplace_m_wright: max_terms={cfg.max_terms} reached")
    if method == "auto" and not cplx and z > 0:
        if b == 1.0:
            val, info = math.exp(-z), {"method": "closed-form", "error": 0.0}
            return (val, info) if full_output else val
        if rho == 1.0:
            return mittag_leffler(b, -z, cfg, full_output=full_output)
    if status == K.OVERFLOW:
        digits = MP_MAX_DIGITS + 1
    else:
        digits = int(math.ceil(math.log10(max(abs_sum, 1.0)))) + 25
    if digits <= MP_MAX_DIGITS:
        v = _wright_mp(zc, -1.0, rho, 1.0, 1.0 - b + b * rho, b, digits, 50 * cfg.max_terms)
        val = _out(v, cplx)
        info = {"method": "series-mp", "digits": digits, "error": 1e-17 * max(1.0, abs(v))}
        return (val, info) if full_output else val
    if method == "auto" and not cplx and z > 0:
        val, err = laplace_m_wright_quad(b, rho, z)
        return (val, {"method": "quadrature", "error": err}) if full_output else val
    raise NoConvergence(f"laplace_m_wright: series unusable at z={z!r}")


def _log_envelope(beta, x):
    # M_beta(r/beta) ~ a r**((beta-1/2)/(1-beta)) exp(-b r**(1/(1-beta)))
    a = (2.0 * math.pi * (1.0 - beta)) ** -0.5
    b = (1.0 - beta) / beta
    y = beta * x
    return math.log(a) + (beta - 0.5) / (1.0 - beta) * math.log(y) - b * y ** (1.0 / (1.0 - beta))


def mwright_tail_cutoff(beta, rho=1.0, re_z=0.0, tol=1e-18, weight=None):
    """Point beyond which ``M_beta(r) r**(rho-1) exp(-r re_z) |weight(r)|`` stays below ``tol``.

    Uses the stretched-exponential asymptotic envelope of ``M_beta``.
    """
    lt = math.log(tol)

    def g(x):
        v = _log_envelope(beta, x) + (rho - 1.0) * math.log(x) - x * re_z
        if weight is not None:
            w = abs(weight(x))
            v += math.log(w) if w > 0 else -math.inf
        return v

    x = 1.0
    while True:
        gx = g(x)
        if gx < lt and g(1.1 * x) < gx:
            return x
        x *= 1.1
        if x > 1e8:
            raise DomainError("no tail cutoff found; integrand grows too fast")


def _quad_panels(f, edges, args, q: QuadConfig, points=None):
    val = err = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        if hi <= lo:
            continue
        pts = [p for p in (points or ()) if lo < p < hi] or None
        v, e = _quad(
            f, lo, hi, args=args, epsabs=q.abs_tol, epsrel=q.rel_tol, limit=int(q.max_subdivisions), points=pts
        )
        val += v
        err += e
    return val, err


def _check_quad(val, err, q: QuadConfig, what):
    if not (math.isfinite(val) and err <= max(q.abs_tol, q.rel_tol * abs(val))):
        raise QuadratureFailure(f"{what}: error estimate {err:.3g} exceeds request")


def laplace_m_wright_quad(beta, rho, z, quad: QuadConfig | None = None):
    """Adaptive quadrature of ``int_0^inf M_beta(r) r**(rho-1) exp(-r z) dr``.

    Independent oracle for :func:`laplace_m_wright`. Returns ``(value, abserr)``.
    The range is cut where the asymptotic envelope of ``M_beta`` makes the
    integrand negligible; the first panel is integrated in ``v = sqrt(r)``.
    """
    b = as_beta(beta)
    if b == 1.0:
        raise UnsupportedBeta("laplace_m_wright_quad needs beta < 1")
    rho = float(rho)
    if rho < 0.5:
        raise DomainError(f"rho must be >= 1/2, got {rho}")
    q = quad or DEFAULT_QUAD
    zc = complex(z)
    zr, zi = zc.real, zc.imag
    r_cut = mwright_tail_cutoff(b, rho, zr)
    r1 = min(1.0, r_cut, 1.0 / zr if zr > 1.0 else 1.0)
    pts = [k / zr for k in (2.0, 5.0, 10.0, 20.0, 40.0)] if zr > 1.0 else None
    f_sq = _backend.integrand("lap_integrand_sq")
    f = _backend.integrand("lap_integrand")
    parts = (0.0, 1.0) if zi != 0.0 else (0.0,)
    out = []
    err = 0.0
    for part in parts:
        args = (b, rho, zr, zi, part)
        v0, e0 = _quad_panels(f_sq, [0.0, math.sqrt(r1)], args, q)
        v1, e1 = _quad_panels(f, [r1, r_cut], args, q, points=pts)
        out.append(v0 + v1)
        err += e0 + e1
    val = complex(out[0], out[1]) if zi != 0.0 else out[0]
    _check_quad(abs(val), err, q, "laplace_m_wright_quad")
    if isinstance(z, complex) and not isinstance(val, complex):
        val = complex(val)
    return val, err
