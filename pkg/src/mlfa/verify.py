"""Self-check suites run by ``mlfa verify``.

Each suite returns a list of checks ``{"name", "status", "detail"}``. Oracles
are independent of the code under test where possible (``math.gamma``,
``math.erfc``, extended-precision sums, quadrature).
"""

from __future__ import annotations

import concurrent.futures
import math
import os
import time

import numpy as np

from . import _backend
from .appell import (
    appell_poly,
    biorthogonality_matrix,
    dual_system,
    generating_residual,
    s_transform_coeff,
    t_from_s,
)
from .donsker import DonskerSpec, donsker_expectation, donsker_kernels, donsker_T, donsker_T_quad
from .errors import MLFAError
from .measure import MultivariatePolynomial, integrate_mixture, integrate_polynomial, moment
from .orthopoly import closed_form_poly, cross_42, cross_42_expansion, inner_product, orthogonal_poly
from .sampler import RngState, mc_verify_image_measure, sample_ggbm_path, sample_nu, path_to_csv
from .specfn import (
    HParams,
    fox_h_series,
    gamma,
    laplace_m_wright,
    laplace_m_wright_quad,
    m_wright,
    mittag_leffler,
)

SUITES = ("specfn", "measure", "orthopoly", "appell", "donsker", "sampler")
DEFAULT_BETAS = (0.25, 0.5, 0.75)


def _check(name, ok, detail=""):
    return {"name": name, "status": "pass" if ok else "fail", "detail": detail}


def _run(name, fn):
    try:
        ok, detail = fn()
        return _check(name, ok, detail)
    except (MLFAError, ArithmeticError, ValueError) as exc:
        return {"name": name, "status": "error", "detail": f"{type(exc).__name__}: {exc}"}


def _betas(beta, default=DEFAULT_BETAS):
    return (beta,) if beta is not None else default


def _dfact(n):
    return math.prod(range(n - 1, 0, -2)) if n > 0 else 1


# ------------------------------------------------------------------ suites


def suite_specfn(beta=None, rng=None, budget=None):
    checks = []

    def gamma_values():
        err = max(abs(gamma(x) / math.gamma(x) - 1.0) for x in np.linspace(0.05, 169.5, 400))
        return err < 1e-13, f"max rel err {err:.2e}"

    def ml_erfc():
        d = abs(mittag_leffler(0.5, -1.0) - math.e * math.erfc(1.0))
        return d < 1e-12, f"|E_1/2(-1) - e erfc(1)| = {d:.2e}"

    def mw_closed():
        d = abs(m_wright(0.5, 1.0) - math.exp(-0.25) / math.sqrt(math.pi))
        return d < 1e-12, f"|M_1/2(1) - exp(-1/4)/sqrt(pi)| = {d:.2e}"

    def laplace_identity():
        worst = 0.0
        for b in _betas(beta):
            if b == 1.0:
                continue
            for t in np.linspace(0.0, 50.0, 26):
                worst = max(worst, abs(mittag_leffler(b, -t) - laplace_m_wright_quad(b, 1.0, t)[0]))
        return worst < 1e-7, f"max |E_b(-t) - quad| = {worst:.2e}"

    def mwright_moments():
        worst = 0.0
        for b in _betas(beta):
            if b == 1.0:
                continue
            for a in range(4):
                ref = math.gamma(a + 1.0) / math.gamma(b * a + 1.0)
                worst = max(worst, abs(laplace_m_wright_quad(b, a + 1.0, 0.0)[0] - ref))
        return worst < 1e-7, f"max moment error {worst:.2e}"

    def fox_vs_mwright():
        worst = 0.0
        for b in _betas(beta):
            if b == 1.0:
                continue
            p = HParams(1, 0, [(1.0 - b, b)], [(0.0, 1.0)])
            for z in np.linspace(0.05, 3.0, 20):
                worst = max(worst, abs(fox_h_series(p, z) - m_wright(b, z)))
        return worst < 1e-10, f"max |H - M| = {worst:.2e}"

    def positivity():
        lo = min((m_wright(b, t) for b in _betas(beta) if b < 1 for t in np.linspace(0, 20, 81)), default=0.0)
        return lo >= -1e-12, f"min M_b on [0,20] = {lo:.2e}"

    def monotone():
        ok = all(
            np.all(np.diff([mittag_leffler(b, -t) for t in np.linspace(0, 10, 101)]) < 0) for b in _betas(beta)
        )
        return ok, "E_b(-t) strictly decreasing on [0,10]"

    def overlap():
        # integral branch against the series summed in extended precision
        worst = 0.0
        for b in (0.75, 0.9):
            for x in np.linspace(20.0, 40.0, 5):
                a = mittag_leffler(b, -x, method="integral")
                s = mittag_leffler(b, -x, method="series")
                worst = max(worst, abs(a - s))
        return worst < 1e-8, f"max branch gap on [20,40] = {worst:.2e}"

    def laplace_series():
        worst = 0.0
        for b in _betas(beta):
            if b == 1.0:
                continue
            for rho in (0.5, 1.0, 2.5):
                for z in (0.0, 0.7, 2.0, 5.0):
                    worst = max(worst, abs(laplace_m_wright(b, rho, z) - laplace_m_wright_quad(b, rho, z)[0]))
        return worst < 1e-7, f"max series vs quadrature = {worst:.2e}"

    for name, fn in [
        ("gamma-accuracy", gamma_values),
        ("mittag-leffler-erfc", ml_erfc),
        ("m-wright-closed-form", mw_closed),
        ("laplace-identity", laplace_identity),
        ("laplace-series-vs-quad", laplace_series),
        ("m-wright-moments", mwright_moments),
        ("fox-h-vs-m-wright", fox_vs_mwright),
        ("m-wright-positivity", positivity),
        ("complete-monotonicity", monotone),
        ("switch-overlap", overlap),
    ]:
        checks.append(_run(name, fn))
    return checks


def suite_measure(beta=None, rng=None, budget=None):
    betas = _betas(beta, (0.25, 0.5, 0.75, 1.0))

    def examples():
        d1 = abs(moment(0.5, (2,)) - 1.0 / math.gamma(1.5))
        d2 = abs(moment(0.5, (2, 2)) - 2.0)
        d3 = moment(0.5, (1,)) == 0.0 and moment(0.5, (2, 3)) == 0.0
        return d1 < 1e-14 and d2 < 1e-14 and d3, f"deviations {d1:.1e}, {d2:.1e}"

    def gaussian():
        worst = max(abs(moment(1.0, (2 * n,)) / (math.factorial(2 * n) / (2**n * math.factorial(n))) - 1) for n in range(16))
        return worst < 1e-13, f"max rel deviation from (2n-1)!! = {worst:.1e}"

    def product_failure():
        ok = True
        for b in betas:
            joint = moment(b, (2, 2))
            prod = moment(b, (2, 0)) * moment(b, (0, 2))
            ref = 2.0 / math.gamma(2 * b + 1)
            ok &= abs(joint - ref) < 1e-13
            ok &= (abs(joint - prod) < 1e-13) if b == 1.0 else (abs(joint - prod) > 1e-3)
        return ok, "E[x^2 y^2] factorizes only at beta=1"

    def mixture_vs_moments():
        worst = 0.0
        for b in betas:
            for a in range(9):
                for c in range(9 - a):
                    exact = integrate_polynomial(b, MultivariatePolynomial({(a, c): 1.0}, 2))
                    if a % 2 or c % 2:
                        mix = 0.0  # odd Gaussian moments vanish for every s
                    else:
                        k = _dfact(a) * _dfact(c)
                        mix = integrate_mixture(b, lambda s, e=(a + c) / 2, k=k: k * s**e)[0]
                    worst = max(worst, abs(mix - exact))
        return worst < 1e-6, f"max |mixture - moments| = {worst:.2e}"

    return [
        _run("moment-examples", examples),
        _run("gaussian-moments", gaussian),
        _run("product-measure-failure", product_failure),
        _run("mixture-vs-moments", mixture_vs_moments),
    ]


def suite_orthopoly(beta=None, rng=None, budget=None):
    betas = _betas(beta, (0.25, 0.5, 0.75, 1.0))
    gen = (rng or RngState(0)).generator

    def closed_forms():
        worst = 0.0
        for b in 1.0 - gen.random(20):
            for n in range(5):
                worst = max(
                    worst, max(abs(x - y) for x, y in zip(orthogonal_poly(b, n).coeffs, closed_form_poly(b, n).coeffs))
                )
        return worst < 1e-10, f"max coefficient gap {worst:.2e}"

    def orthogonality():
        worst, normmin = 0.0, math.inf
        for b in betas:
            H = [orthogonal_poly(b, n) for n in range(9)]
            for n in range(9):
                normmin = min(normmin, inner_product(b, H[n], H[n]))
                for m in range(n):
                    worst = max(worst, abs(inner_product(b, H[n], H[m])))
        return worst < 1e-8 and normmin > 0, f"max |<H_n,H_m>| = {worst:.2e}"

    def hermite():
        worst = 0.0
        for n in range(9):
            ref = np.polynomial.hermite_e.herme2poly([0] * n + [1])
            worst = max(worst, float(np.abs(np.array(orthogonal_poly(1.0, n).coeffs) - ref).max()))
        return worst < 1e-9, f"max gap to He_n {worst:.2e}"

    def cross():
        ok = abs(cross_42(1.0)) < 1e-10
        gap = 0.0
        for b in (0.25, 0.5, 0.75, 0.9):
            ok &= abs(cross_42(b)) > 1e-6
            gap = max(gap, abs(cross_42(b) - cross_42_expansion(b)))
        return ok and gap < 1e-9, f"closed form vs expansion {gap:.2e}, cross_42(1) = {cross_42(1.0):.1e}"

    return [
        _run("closed-forms", closed_forms),
        _run("orthogonality", orthogonality),
        _run("hermite-reduction", hermite),
        _run("cross-42", cross),
    ]


def suite_appell(beta=None, rng=None, budget=None):
    betas = _betas(beta, (0.5, 0.75, 1.0))

    def printed():
        worst = 0.0
        for b in (0.3, 0.5, 0.9):
            for u in (0.5, 2.0):
                g = math.gamma(b + 1)
                refs = [[1.0], [0.0, 1.0], [-u / g, 0.0, 1.0], [0.0, -3 * u / g, 0.0, 1.0]]
                for n, ref in enumerate(refs):
                    worst = max(worst, max(abs(x - y) for x, y in zip(appell_poly(b, n, u).poly.coeffs, ref)))
        return worst < 1e-12, f"max gap to printed P_0..P_3 {worst:.2e}"

    def generating():
        worst = 0.0
        for b in (0.3, 0.5, 1.0):
            for u, t in ((0.5, 0.3), (1.0, -1.2), (2.0, 0.8)):
                worst = max(worst, max(abs(r) for r in generating_residual(b, u, t, 10)))
        return worst < 1e-10, f"max coefficient residual {worst:.2e}"

    def biorth():
        worst = 0.0
        for b in betas:
            for u in (0.5, 1.0, 2.0):
                ds = dual_system(b, 8, u)
                w = np.array([math.factorial(n) * u**n for n in range(9)])
                B = biorthogonality_matrix(ds)
                worst = max(worst, float((np.abs(B - np.diag(w)) / w[:, None]).max()))
        return worst < 1e-7, f"max relative deviation {worst:.2e}"

    def not_orthogonal():
        p3 = appell_poly(0.5, 3, 1.0).poly.coeffs[1]
        h3 = closed_form_poly(0.5, 3).coeffs[1]
        return abs(p3 - h3) > 1e-3, f"t-coefficients {p3:.6f} vs {h3:.6f}"

    return [
        _run("printed-p0-p3", printed),
        _run("generating-function", generating),
        _run("biorthogonality", biorth),
        _run("appell-not-orthogonal", not_orthogonal),
    ]


def suite_donsker(beta=None, rng=None, budget=None):
    betas = _betas(beta)

    def grid():
        worst = wim = 0.0
        for b in betas:
            s = DonskerSpec(b, 1.0)
            for ep in np.linspace(-1.0, 1.0, 5):
                for ps in np.linspace(1.0, 5.0, 5):
                    q = donsker_T_quad(s, ep, ps)
                    worst = max(worst, abs(donsker_T(s, ep, ps) - q.real))
                    wim = max(wim, abs(q.imag))
        return worst < 1e-6 and wim < 1e-8, f"max series vs quadrature {worst:.2e}"

    def gaussian():
        worst = 0.0
        for eta_sq in (0.5, 1.0, 2.0):
            s = DonskerSpec(1.0, eta_sq)
            for ep in np.linspace(-1.0, 1.0, 5) * math.sqrt(eta_sq):
                for ps in np.linspace(1.0, 5.0, 5):
                    z = 0.5 * ps - ep * ep / (2 * eta_sq)
                    ref = math.exp(-z) / math.sqrt(2 * math.pi * eta_sq)
                    worst = max(worst, abs(donsker_T(s, ep, ps) - ref))
        return worst < 1e-10, f"max gap to Gaussian delta {worst:.2e}"

    def expectation():
        worst = 0.0
        for b in betas + (1.0,):
            for eta_sq in (0.5, 1.0, 4.0):
                s = DonskerSpec(b, eta_sq)
                worst = max(worst, abs(donsker_expectation(s) - donsker_T(s, 0.0, 0.0)))
        return worst < 1e-10, f"max |expectation - T(0)| {worst:.2e}"

    def round_trip():
        worst = 0.0
        for b in betas:
            s = DonskerSpec(b, 2.0)
            c = donsker_kernels(s, 20, 1.0, 0.4)
            for mu in (0.2, 0.5, 0.8):
                t = t_from_s(b, s_transform_coeff(c, 1j * mu), mu * mu)
                worst = max(worst, abs(t - donsker_T(s, 0.4 * mu, mu * mu)))
        return worst < 1e-8, f"max kernel round-trip gap {worst:.2e}"

    return [
        _run("series-vs-quadrature", grid),
        _run("gaussian-reduction", gaussian),
        _run("expectation-consistency", expectation),
        _run("kernel-round-trip", round_trip),
    ]


def suite_sampler(beta=None, rng=None, budget=None):
    rng = rng or RngState(0)
    betas = _betas(beta)
    # draw count from the wall-clock budget: pilot, then scale (capped at 1e6)
    t0 = time.perf_counter()
    sample_nu(0.5, RngState(rng.seed), 20000)
    per = (time.perf_counter() - t0) / 20000
    share = (budget or 60.0) / 8.0
    n = int(min(1_000_000, max(20000, share / max(per * 12, 1e-12))))
    children = rng.spawn(len(betas) + 3)

    def laplace():
        worst = 0.0
        for b, ch in zip(betas, children):
            s = sample_nu(b, ch, n)
            for t in (0.5, 1.0, 2.0, 4.0):
                v = np.exp(-t * s)
                worst = max(worst, abs(v.mean() - mittag_leffler(b, -t)) / (v.std(ddof=1) / math.sqrt(n)))
        return worst < 3.0, f"max |z| = {worst:.2f} at {n} draws"

    def image():
        worst = 0.0
        for b in (betas[0], 1.0):
            worst = max(worst, mc_verify_image_measure(b, 2, n, children[-3])["max_abs_z"])
        return worst < 4.0, f"max |z| = {worst:.2f} at {n} draws"

    def reproducible():
        grid = np.linspace(0.0, 1.0, 17)
        a = path_to_csv(sample_ggbm_path(1.2, betas[0], grid, RngState(rng.seed)))
        b = path_to_csv(sample_ggbm_path(1.2, betas[0], grid, RngState(rng.seed)))
        return a == b, "identical CSV bytes for identical seeds"

    return [
        _run("laplace-identity-mc", laplace),
        _run("image-measure-moments", image),
        _run("seed-reproducibility", reproducible),
    ]


_SUITE_FN = {
    "specfn": suite_specfn,
    "measure": suite_measure,
    "orthopoly": suite_orthopoly,
    "appell": suite_appell,
    "donsker": suite_donsker,
    "sampler": suite_sampler,
}


def max_workers():
    env = os.environ.get("MLFA_THREADS")
    cap = int(env) if env and env.isdigit() and int(env) > 0 else (os.cpu_count() or 1)
    return max(1, cap)


def run(suite="all", beta=None, seed=0, budget_seconds=120.0) -> dict:
    """Run one suite or all of them. Report order is fixed regardless of scheduling."""
    names = SUITES if suite == "all" else (suite,)
    for s in names:
        if s not in _SUITE_FN:
            raise ValueError(f"unknown suite {suite!r}")
    rngs = RngState(seed).spawn(len(SUITES))
    streams = {s: rngs[SUITES.index(s)] for s in names}
    budget = float(budget_seconds)
    t0 = time.perf_counter()
    with concurrent.futures.ThreadPoolExecutor(max_workers=min(max_workers(), len(names))) as ex:
        futures = {s: ex.submit(_SUITE_FN[s], beta, streams[s], budget) for s in names}
        results = {s: futures[s].result() for s in names}
    passed = all(c["status"] == "pass" for cs in results.values() for c in cs)
    return {
        "suite": suite,
        "beta": beta,
        "seed": seed,
        "backend": _backend.current(),
        "elapsed_seconds": round(time.perf_counter() - t0, 3),
        "passed": passed,
        "suites": {s: results[s] for s in names},
    }
