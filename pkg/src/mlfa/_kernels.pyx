# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels.

Same functions and return conventions as ``mlfa._kernels_py``. The inner
integrals (M-Wright and E_beta(-x) representations) use a C adaptive
Gauss-Kronrod 10/21 rule instead of scipy's QUADPACK so the outer quadrature
can call the integrands below as plain C functions (``LowLevelCallable``).
"""

from libc.math cimport (
    atan2, copysign, cos, exp, fabs, floor, fmod, hypot, lgamma, log, sin, sqrt, pow, INFINITY, M_PI,
)

NAME = "compiled"

cdef double _EPS = 2.220446049250313e-16
cdef double _LOGPI = 1.1447298858494002
cdef double _SWITCH = 3.0
cdef double _SPECTRAL_CUT = 42.0
cdef double _INNER_EPSABS = 1e-15
cdef double _INNER_EPSREL = 1e-13
cdef int _LIMIT = 200

EPS = _EPS
LOGPI = _LOGPI
OK = 0
MAX_TERMS = 1
OVERFLOW = 2
SWITCH_EXPONENT = _SWITCH
SPECTRAL_CUT = _SPECTRAL_CUT


cdef double c_sinpi(double x) nogil:
    cdef double r = fmod(x, 2.0)
    if r == floor(r):
        return 0.0
    if r > 1.0:
        r -= 2.0
    elif r < -1.0:
        r += 2.0
    if r > 0.5:
        r = 1.0 - r
    elif r < -0.5:
        r = -1.0 - r
    return sin(M_PI * r)


def sinpi(double x):
    """sin(pi*x) with exact zeros at the integers."""
    return c_sinpi(x)


cdef void c_log_rgamma(double x, double* lr, double* sg, double* lb) nogil:
    cdef double sp
    if x > 0.0:
        lr[0] = -lgamma(x)
        sg[0] = 1.0
        lb[0] = lr[0]
        return
    lb[0] = lgamma(1.0 - x) - _LOGPI
    sp = c_sinpi(x)
    if sp == 0.0:
        lr[0] = -INFINITY
        sg[0] = 0.0
        return
    lr[0] = lb[0] + log(fabs(sp))
    sg[0] = 1.0 if sp > 0.0 else -1.0


def log_rgamma(double x):
    """Return (log|1/Gamma(x)|, sign(1/Gamma(x)), log of the sin-free bound)."""
    cdef double lr, sg, lb
    c_log_rgamma(x, &lr, &sg, &lb)
    return lr, sg, lb


cdef int c_wright_series(double zr, double zi, double s, double a, double A, double c, double C,
                         double abs_tol, long max_terms, double* out) nogil:
    # out = [re, im, abs_sum, round_err, n_terms]; returns status
    cdef double r = hypot(zr, zi)
    cdef double lr, sg, lb, v
    cdef double logr, theta, step_sign, ksign
    cdef double sr = 0.0, er = 0.0, si = 0.0, ei = 0.0
    cdef double abs_sum = 0.0, rerr = 0.0, prev = INFINITY
    cdef double la, lk, kl, base, bound_log, L, mag, cond, tr, ti, t, bp, bound, total
    cdef int small = 0, status = 1, real
    cdef long k, n = 0
    if r == 0.0:
        c_log_rgamma(c, &lr, &sg, &lb)
        v = sg * exp(lgamma(a) + lr) if sg != 0.0 else 0.0
        out[0] = v
        out[1] = 0.0
        out[2] = fabs(v)
        out[3] = 4.0 * _EPS * fabs(v)
        out[4] = 1
        return 0
    logr = log(r)
    real = zi == 0.0
    if real:
        step_sign = copysign(1.0, s * zr)
        theta = 0.0
    else:
        step_sign = 1.0
        theta = atan2(s * zi, s * zr)
    ksign = 1.0
    for k in range(max_terms):
        n = k + 1
        la = lgamma(a + A * k)
        lk = lgamma(k + 1.0)
        kl = k * logr
        c_log_rgamma(c + C * k, &lr, &sg, &lb)
        base = kl + la - lk
        bound_log = base + lb
        if bound_log > 709.0:
            status = 2
            break
        if sg != 0.0:
            L = base + lr
            mag = exp(L)
            cond = fabs(kl) + fabs(la) + fabs(lk) + fabs(lr) + 4.0
            rerr += mag * cond
            abs_sum += mag
            if real:
                tr = ksign * sg * mag
                ti = 0.0
            else:
                tr = sg * mag * cos(k * theta)
                ti = sg * mag * sin(k * theta)
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
        bound = exp(bound_log)
        total = hypot(sr + er, si + ei)
        if bound <= abs_tol * (total if total > 1.0 else 1.0) and bound <= prev:
            small += 1
            if small >= 2:
                status = 0
                break
        else:
            small = 0
        prev = bound
    out[0] = sr + er
    out[1] = si + ei
    out[2] = abs_sum
    out[3] = _EPS * rerr
    out[4] = n
    return status


def wright_series(double zr, double zi, double s, double a, double A, double c, double C,
                  double abs_tol, long max_terms):
    """Sum_k (s z)^k Gamma(a + A k) / (k! Gamma(c + C k)); returns
    ``(re, im, abs_sum, round_err, n_terms, status)``."""
    cdef double out[5]
    cdef int status = c_wright_series(zr, zi, s, a, A, c, C, abs_tol, max_terms, out)
    return out[0], out[1], out[2], out[3], int(out[4]), status


# ------------------------------------------------------ adaptive Gauss-Kronrod

cdef double XGK[11]
cdef double WGK[11]
cdef double WG[5]
XGK[:] = [0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
          0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
          0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
          0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
          0.294392862701460198131126603103866, 0.148874338981631210884826001129720, 0.0]
WGK[:] = [0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
          0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
          0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
          0.123491976262065851077208292357115, 0.134709217311473325928054001771707,
          0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
          0.149445554002916905664936468389821]
WG[:] = [0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
         0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
         0.295524224714752870173892994651338]

ctypedef double (*integrand_t)(double, double*) nogil


cdef void _qk21(integrand_t f, double* p, double a, double b, double* res, double* err) nogil:
    cdef double centr = 0.5 * (a + b), hlgth = 0.5 * (b - a), dhlgth = fabs(hlgth)
    cdef double fc = f(centr, p), resg = 0.0, resk = fc * WGK[10], resabs = fabs(resk)
    cdef double fv1[10]
    cdef double fv2[10]
    cdef double absc, f1, f2, reskh, resasc, e
    cdef int j
    for j in range(10):
        absc = hlgth * XGK[j]
        f1 = f(centr - absc, p)
        f2 = f(centr + absc, p)
        fv1[j] = f1
        fv2[j] = f2
        resk += WGK[j] * (f1 + f2)
        resabs += WGK[j] * (fabs(f1) + fabs(f2))
        if j % 2 == 1:
            resg += WG[j // 2] * (f1 + f2)
    reskh = resk * 0.5
    resasc = WGK[10] * fabs(fc - reskh)
    for j in range(10):
        resasc += WGK[j] * (fabs(fv1[j] - reskh) + fabs(fv2[j] - reskh))
    res[0] = resk * hlgth
    resabs *= dhlgth
    resasc *= dhlgth
    e = fabs((resk - resg) * hlgth)
    if resasc != 0.0 and e != 0.0:
        e = resasc * min(1.0, pow(200.0 * e / resasc, 1.5))
    if resabs > 2.2250738585072014e-308 / (50.0 * _EPS):
        e = max(_EPS * 50.0 * resabs, e)
    err[0] = e


cdef double _adapt(integrand_t f, double* p, double a, double b, double epsabs, double epsrel,
                   double* abserr) nogil:
    # globally adaptive bisection of the interval with the largest error
    cdef double lo[400]
    cdef double hi[400]
    cdef double rs[400]
    cdef double es[400]
    cdef int n = 1, i, worst
    cdef double result, err, m, r1, e1, r2, e2, tol
    _qk21(f, p, a, b, &rs[0], &es[0])
    lo[0] = a
    hi[0] = b
    result = rs[0]
    err = es[0]
    while n < _LIMIT:
        tol = max(epsabs, epsrel * fabs(result))
        if err <= tol:
            break
        worst = 0
        for i in range(1, n):
            if es[i] > es[worst]:
                worst = i
        m = 0.5 * (lo[worst] + hi[worst])
        if m <= lo[worst] or m >= hi[worst]:
            break
        _qk21(f, p, lo[worst], m, &r1, &e1)
        _qk21(f, p, m, hi[worst], &r2, &e2)
        result += r1 + r2 - rs[worst]
        err += e1 + e2 - es[worst]
        lo[n] = m
        hi[n] = hi[worst]
        rs[n] = r2
        es[n] = e2
        hi[worst] = m
        rs[worst] = r1
        es[worst] = e1
        n += 1
    # recompute the totals to shed accumulated update rounding
    result = 0.0
    err = 0.0
    for i in range(n):
        result += rs[i]
        err += es[i]
    abserr[0] = err
    return result


# ---------------------------------------------------------------- M-Wright

cdef double c_mwright_decay(double beta) nogil:
    return (1.0 - beta) * pow(beta, beta / (1.0 - beta))


def mwright_decay(double beta):
    """Rate b in M_beta(t) ~ exp(-b t**(1/(1-beta)))."""
    return c_mwright_decay(beta)


cdef double c_mw_phi(double phi, double* p) nogil:
    # p = [beta, s]
    cdef double beta = p[0], s = p[1]
    cdef double la = (beta * log(sin(beta * phi)) + (1.0 - beta) * log(sin((1.0 - beta) * phi))
                      - log(sin(phi))) / (1.0 - beta)
    cdef double arg = la - exp(la) * s
    if arg < -745.0:
        return 0.0
    return exp(arg)


def mw_phi_integrand(double phi, double beta, double s):
    cdef double p[2]
    p[0] = beta
    p[1] = s
    return c_mw_phi(phi, p)


cdef double c_mwright_integral(double beta, double t, double abs_tol, double* err) nogil:
    cdef double p[2]
    cdef double s = pow(t, 1.0 / (1.0 - beta))
    cdef double pref = pow(t, beta / (1.0 - beta)) / (M_PI * (1.0 - beta))
    cdef double v, e
    p[0] = beta
    p[1] = s
    v = _adapt(c_mw_phi, p, 0.0, M_PI, abs_tol / pref, _INNER_EPSREL, &e)
    err[0] = pref * e
    return pref * v


def mwright_integral(double beta, double t, double abs_tol):
    """M_beta(t) for t > 0 from its non-oscillatory integral over [0, pi]."""
    cdef double e
    cdef double v = c_mwright_integral(beta, t, abs_tol, &e)
    return v, e


cdef double c_mwright_real(double beta, double t, double* err) nogil:
    cdef double out[5]
    if t < 0.0 or c_mwright_decay(beta) * pow(t, 1.0 / (1.0 - beta)) <= _SWITCH:
        c_wright_series(t, 0.0, -1.0, 1.0, 0.0, 1.0 - beta, -beta, 1e-17, 20000, out)
        err[0] = out[3]
        return out[0]
    return c_mwright_integral(beta, t, _INNER_EPSABS, err)


def mwright_real(double beta, double t):
    """M_beta(t), 0 < beta < 1. Returns (value, error estimate)."""
    cdef double e
    cdef double v = c_mwright_real(beta, t, &e)
    return v, e


# ---------------------------------------------------------------- E_beta(-x)

cdef double c_ml_spectral(double w, double* p) nogil:
    # p = [beta, x, cos(beta pi)]
    cdef double beta = p[0], x = p[1], cosb = p[2]
    return exp(-pow(w, 1.0 / beta)) * x / (w * w + 2.0 * w * x * cosb + x * x)


def ml_spectral_integrand(double w, double beta, double x, double cosb):
    cdef double p[3]
    p[0] = beta
    p[1] = x
    p[2] = cosb
    return c_ml_spectral(w, p)


cdef double c_ml_neg_integral(double beta, double x, double abs_tol, double* err) nogil:
    cdef double p[3]
    cdef double cosb = cos(beta * M_PI)
    cdef double pref = sin(beta * M_PI) / (beta * M_PI)
    cdef double wmax = pow(_SPECTRAL_CUT, beta)
    cdef double v, e, v2, e2
    p[0] = beta
    p[1] = x
    p[2] = cosb
    if x < wmax:
        v = _adapt(c_ml_spectral, p, 0.0, x, abs_tol / pref, _INNER_EPSREL, &e)
        v2 = _adapt(c_ml_spectral, p, x, wmax, abs_tol / pref, _INNER_EPSREL, &e2)
        v += v2
        e += e2
    else:
        v = _adapt(c_ml_spectral, p, 0.0, wmax, abs_tol / pref, _INNER_EPSREL, &e)
    err[0] = pref * e
    return pref * v


def ml_neg_integral(double beta, double x, double abs_tol):
    """E_beta(-x) for x > 0 from its relaxation-spectrum integral."""
    cdef double e
    cdef double v = c_ml_neg_integral(beta, x, abs_tol, &e)
    return v, e


cdef double c_ml_neg_real(double beta, double x, double* err) nogil:
    cdef double out[5]
    if beta == 1.0:
        err[0] = 0.0
        return exp(-x)
    if pow(x, 1.0 / beta) <= _SWITCH:
        c_wright_series(-x, 0.0, 1.0, 1.0, 1.0, 1.0, beta, 1e-17, 20000, out)
        err[0] = out[3]
        return out[0]
    return c_ml_neg_integral(beta, x, _INNER_EPSABS, err)


def ml_neg_real(double beta, double x):
    """E_beta(-x) for real x >= 0. Returns (value, error estimate)."""
    cdef double e
    cdef double v = c_ml_neg_real(beta, x, &e)
    return v, e


# ------------------------------------------- integrands for scipy LowLevelCallable
# signature double f(int n, double* xx): xx[0] is the variable, xx[1:] the args

cdef api double lap_integrand(int n, double* xx) nogil:
    # args: beta, rho, zr, zi, part
    cdef double r = xx[0], e
    cdef double w = c_mwright_real(xx[1], r, &e) * pow(r, xx[2] - 1.0) * exp(-r * xx[3])
    if xx[4] == 0.0:
        return w if xx[5] == 0.0 else 0.0
    if xx[5] == 0.0:
        return w * cos(r * xx[4])
    return -w * sin(r * xx[4])


cdef api double lap_integrand_sq(int n, double* xx) nogil:
    cdef double v = xx[0], r = v * v, e
    cdef double w = 2.0 * c_mwright_real(xx[1], r, &e) * pow(v, 2.0 * xx[2] - 1.0) * exp(-r * xx[3])
    if xx[4] == 0.0:
        return w if xx[5] == 0.0 else 0.0
    if xx[5] == 0.0:
        return w * cos(r * xx[4])
    return -w * sin(r * xx[4])


cdef api double donsker_x_integrand(int n, double* xx) nogil:
    # args: beta, half_eta_sq, z0
    cdef double y = xx[0], e
    return c_ml_neg_real(xx[1], xx[2] * y * y + xx[3], &e)
