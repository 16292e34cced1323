"""Pure-Python kernels.

Reference implementation of everything in ``_kernels.pyx``; selected at
import time when the compiled extension is missing or ``MLFA_PURE_PYTHON``
is set. Signatures and return conventions match the compiled module
exactly, including the integrand functions handed to ``scipy.integrate.quad``
(first argument is the integration variable, the rest arrive via ``args``).
"""

import math

from scipy.integrate import quad

NAME = "python"

EPS = 2.220446049250313e-16
LOGPI = math.log(math.pi)

# status codes returned by wright_series
OK = 0
MAX_TERMS = 1
OVERFLOW = 2

# Series/integral switch for real arguments: the double-precision series is
# used while the exponent of its absolute-value growth stays below this.
SWITCH_EXPONENT = 3.0
# e**(-w**(1/beta)) < 1e-18 beyond w = SPECTRAL_CUT**beta
SPECTRAL_CUT = 42.0
_INNER_EPSABS = 1e-15
_INNER_EPSREL = 1e-13


def sinpi(x):
    """sin(pi*x) with exact zeros at the integers."""
    r = math.fmod(x, 2.0)
    if r == math.floor(r):
        return 0.0
    if r > 1.0:
        r -= 2.0
    elif r < -1.0:
        r += 2.0
    if r > 0.5:
        r = 1.0 - r
    elif r < -0.5:
        r = -1.0 - r
    return math.sin(math.pi * r)


def log_rgamma(x):
    """Return (log|1/Gamma(x)|, sign(1/Gamma(x)), log of the sin-free bound).

    At the poles the sign is 0 and the log is -inf; the bound stays finite.
    """
    if x > 0.0:
        lg = -math.lgamma(x)
        return lg, 1.0, lg
    bound = math.lgamma(1.0 - x) - LOGPI
    sp = sinpi(x)
    if sp == 0.0:
        return -math.inf, 0.0, bound
    return bound + math.log(abs(sp)), math.copysign(1.0, sp), bound


def wright_series(zr, zi, s, a, A, c, C, abs_tol, max_terms):
    """Sum_k (s z)^k Gamma(a + A k) / (k! Gamma(c + C k)) with compensated summation.

    Requires a > 0 and A >= 0. Returns
    ``(re, im, abs_sum, round_err, n_terms, status)``.
    """
    r = math.hypot(zr, zi)
    if r == 0.0:
        lr, sg, _ = log_rgamma(c)
        v = sg * math.exp(math.lgamma(a) + lr) if sg else 0.0
        return v, 0.0, abs(v), 4.0 * EPS * abs(v), 1, OK

    logr = math.log(r)
    real = zi == 0.0
    if real:
        step_sign = math.copysign(1.0, s * zr)
        theta = 0.0
    else:
        step_sign = 1.0
        theta = math.atan2(s * zi, s * zr)

    sr = er = si = ei = 0.0
    abs_sum = 0.0
    rerr = 0.0
    prev = math.inf
    small = 0
    ksign = 1.0
    status = MAX_TERMS
    n = 0
    for k in range(int(max_terms)):
        n = k + 1
        la = math.lgamma(a + A * k)
        lk = math.lgamma(k + 1.0)
        kl = k * logr
        lr, sg, lb = log_rgamma(c + C * k)
        base = kl + la - lk
        bound_log = base + lb
        if bound_log > 709.0:
            status = OVERFLOW
            break
        if sg != 0.0:
            L = base + lr
            mag = math.exp(L)
            cond = abs(kl) + abs(la) + abs(lk) + abs(lr) + 4.0
            rerr += mag * cond
            abs_sum += mag
            if real:
                tr = ksign * sg * mag
                ti = 0.0
            else:
                tr = sg * mag * math.cos(k * theta)
                ti = sg * mag * math.sin(k * theta)
            # TwoSum accumulation, real and imaginary parts separately
            t = sr + tr
            bp = t - sr
            er += (sr - (t - bp)) + (tr - bp)
            sr = t
            if not real:
                t = si + ti
                bp = t - si
                ei += (si - (t - bp)) + (ti - bp)
                si = t
        ksign *= step_sign
        bound = math.exp(bound_log)
        total = math.hypot(sr + er, si + ei)
        if bound <= abs_tol * max(1.0, total) and bound <= prev:
            small += 1
            if small >= 2:
                status = OK
                break
        else:
            small = 0
        prev = bound
    return sr + er, si + ei, abs_sum, EPS * rerr, n, status


# ---------------------------------------------------------------- M-Wright


def mwright_decay(beta):
    """Rate b in M_beta(t) ~ exp(-b t**(1/(1-beta)))."""
    return (1.0 - beta) * beta ** (beta / (1.0 - beta))


def mw_phi_integrand(phi, beta, s):
    # A(phi) exp(-A(phi) s), A the Zolotarev-Kanter function
    la = (
        beta * math.log(math.sin(beta * phi))
        + (1.0 - beta) * math.log(math.sin((1.0 - beta) * phi))
        - math.log(math.sin(phi))
    ) / (1.0 - beta)
    arg = la - math.exp(la) * s
    if arg < -745.0:
        return 0.0
    return math.exp(arg)


def mwright_integral(beta, t, abs_tol):
    """M_beta(t) for t > 0 from its non-oscillatory integral over [0, pi]."""
    s = t ** (1.0 / (1.0 - beta))
    pref = t ** (beta / (1.0 - beta)) / (math.pi * (1.0 - beta))
    v, e = quad(
        mw_phi_integrand,
        0.0,
        math.pi,
        args=(beta, s),
        epsabs=abs_tol / pref,
        epsrel=_INNER_EPSREL,
        limit=200,
    )
    return pref * v, pref * e


def mwright_real(beta, t):
    """M_beta(t), t >= 0, 0 < beta < 1. Returns (value, error estimate)."""
    if t < 0.0:
        v, _, _, rerr, _, _ = wright_series(
            t, 0.0, -1.0, 1.0, 0.0, 1.0 - beta, -beta, 1e-17, 20000
        )
        return v, rerr
    if mwright_decay(beta) * t ** (1.0 / (1.0 - beta)) <= SWITCH_EXPONENT:
        v, _, _, rerr, _, _ = wright_series(
            t, 0.0, -1.0, 1.0, 0.0, 1.0 - beta, -beta, 1e-17, 20000
        )
        return v, rerr
    return mwright_integral(beta, t, _INNER_EPSABS)


# ---------------------------------------------------------------- E_beta(-x)


def ml_spectral_integrand(w, beta, x, cosb):
    return math.exp(-(w ** (1.0 / beta))) * x / (w * w + 2.0 * w * x * cosb + x * x)


def ml_neg_integral(beta, x, abs_tol):
    """E_beta(-x) for x > 0 from its relaxation-spectrum integral."""
    cosb = math.cos(beta * math.pi)
    pref = math.sin(beta * math.pi) / (beta * math.pi)
    wmax = SPECTRAL_CUT**beta
    kw = dict(args=(beta, x, cosb), epsabs=abs_tol / pref, epsrel=_INNER_EPSREL, limit=200)
    if x < wmax:
        v, e = quad(ml_spectral_integrand, 0.0, wmax, points=[x], **kw)
    else:
        v, e = quad(ml_spectral_integrand, 0.0, wmax, **kw)
    return pref * v, pref * e


def ml_neg_real(beta, x):
    """E_beta(-x) for real x >= 0, 0 < beta <= 1. Returns (value, error estimate)."""
    if beta == 1.0:
        return math.exp(-x), 0.0
    if x ** (1.0 / beta) <= SWITCH_EXPONENT:
        v, _, _, rerr, _, _ = wright_series(-x, 0.0, 1.0, 1.0, 1.0, 1.0, beta, 1e-17, 20000)
        return v, rerr
    return ml_neg_integral(beta, x, _INNER_EPSABS)


# ---------------------------------------------------------------- integrands


def lap_integrand(r, beta, rho, zr, zi, part):
    """Re (part=0) or Im (part=1) of M_beta(r) r**(rho-1) exp(-r z)."""
    m = mwright_real(beta, r)[0]
    w = m * r ** (rho - 1.0) * math.exp(-r * zr)
    if zi == 0.0:
        return w if part == 0.0 else 0.0
    if part == 0.0:
        return w * math.cos(r * zi)
    return -w * math.sin(r * zi)


def lap_integrand_sq(v, beta, rho, zr, zi, part):
    """lap_integrand after r = v**2 (removes the r**(rho-1) endpoint singularity)."""
    r = v * v
    m = mwright_real(beta, r)[0]
    w = 2.0 * m * v ** (2.0 * rho - 1.0) * math.exp(-r * zr)
    if zi == 0.0:
        return w if part == 0.0 else 0.0
    if part == 0.0:
        return w * math.cos(r * zi)
    return -w * math.sin(r * zi)


def donsker_x_integrand(y, beta, half_eta_sq, z0):
    """E_beta(-(eta_sq y**2 / 2 + z0))."""
    return ml_neg_real(beta, half_eta_sq * y * y + z0)[0]
