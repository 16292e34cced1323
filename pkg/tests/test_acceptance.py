"""Acceptance criteria 1-9, at their stated tolerances and runtime limits.

Each test records one line ``criterion N: PASS|FAIL ...``; the lines are
printed in the pytest terminal summary (see conftest.py) and when this file
is run as a script. All randomness derives from ``SEED``, fixed before any
criterion was run.
"""

import math
import time

import numpy as np
import pytest

from mlfa import (
    DonskerSpec,
    RngState,
    dual_system,
    donsker_expectation,
    donsker_T,
    donsker_T_quad,
    laplace_m_wright_quad,
    mittag_leffler,
    moment,
    orthogonal_poly,
    sample_ggbm_path,
    sample_grey_vector,
    sample_nu,
)
from mlfa.appell import appell_poly, biorthogonality_matrix, generating_residual
from mlfa.orthopoly import closed_form_poly, cross_42, cross_42_expansion
from mlfa.sampler import mc_verify_image_measure

SEED = 20261016
STREAMS = RngState(SEED).spawn(9)
RESULTS = {}


def record(n, ok, elapsed, limit, detail):
    in_time = limit is None or elapsed < limit
    passed = bool(ok and in_time)
    budget = f" (limit {limit:g} s)" if limit is not None else ""
    line = f"criterion {n}: {'PASS' if passed else 'FAIL'}  {detail}; {elapsed:.2f} s{budget}"
    RESULTS[n] = line
    print(line)
    return passed, line


def test_criterion_1_closed_form_polynomials():
    t0 = time.perf_counter()
    betas = 1.0 - STREAMS[0].generator.random(20)  # (0, 1]
    worst = 0.0
    for b in betas:
        for n in range(1, 5):
            got, ref = orthogonal_poly(b, n).coeffs, closed_form_poly(b, n).coeffs
            worst = max(worst, max(abs(x - y) for x, y in zip(got, ref)))
    ok, line = record(1, worst < 1e-10, time.perf_counter() - t0, 1.0, f"max |dcoeff| H_1..H_4 = {worst:.2e}")
    assert ok, line


def test_criterion_2_cross_42():
    t0 = time.perf_counter()
    at_one = abs(cross_42(1.0))
    mags = {b: abs(cross_42(b)) for b in (0.25, 0.5, 0.75)}
    gap = max(abs(cross_42(b) - cross_42_expansion(b)) for b in (0.25, 0.5, 0.75, 1.0))
    ok = at_one < 1e-10 and min(mags.values()) > 1e-6 and gap < 1e-9
    detail = f"|cross_42(1)| = {at_one:.1e}, min |cross_42| = {min(mags.values()):.3g}, closed vs expansion {gap:.1e}"
    ok, line = record(2, ok, time.perf_counter() - t0, 1.0, detail)
    assert ok, line


def test_criterion_3_laplace_identity():
    t0 = time.perf_counter()
    worst = 0.0
    for b in (0.25, 0.5, 0.75):
        for t in np.linspace(0.0, 50.0, 100):
            worst = max(worst, abs(mittag_leffler(b, -t) - laplace_m_wright_quad(b, 1.0, t)[0]))
    ok, line = record(3, worst < 1e-7, time.perf_counter() - t0, 30.0, f"max |series - quadrature| = {worst:.2e}")
    assert ok, line


def test_criterion_4_mwright_moments():
    t0 = time.perf_counter()
    worst = 0.0
    for b in (0.25, 0.5, 0.75):
        for a in range(4):
            ref = math.gamma(a + 1.0) / math.gamma(b * a + 1.0)
            worst = max(worst, abs(laplace_m_wright_quad(b, a + 1.0, 0.0)[0] - ref))
    ok, line = record(4, worst < 1e-7, time.perf_counter() - t0, 10.0, f"max moment error = {worst:.2e}")
    assert ok, line


def test_criterion_5_appell_generating_function():
    t0 = time.perf_counter()
    resid = 0.0
    for b in (0.25, 0.5, 0.75, 1.0):
        for u, t in ((0.5, 0.3), (1.0, -1.2), (2.0, 0.8)):
            resid = max(resid, max(abs(r) for r in generating_residual(b, u, t, 10)))
    printed = 0.0
    for b in (0.25, 0.5, 0.75, 1.0):
        for u in (0.5, 1.0, 2.0):
            g = math.gamma(b + 1.0)
            refs = [[1.0], [0.0, 1.0], [-u / g, 0.0, 1.0], [0.0, -3.0 * u / g, 0.0, 1.0]]
            for n, ref in enumerate(refs):
                got = appell_poly(b, n, u).poly.coeffs
                printed = max(printed, max(abs(x - y) for x, y in zip(got, ref)), abs(len(got) - len(ref)))
    ok = resid < 1e-10 and printed < 1e-12
    ok, line = record(5, ok, time.perf_counter() - t0, 1.0, f"residual {resid:.1e}, printed P_0..P_3 gap {printed:.1e}")
    assert ok, line


def test_criterion_6_biorthogonality():
    t0 = time.perf_counter()
    worst = 0.0
    for b in (0.5, 0.75, 1.0):
        for u in (0.5, 1.0, 2.0):
            B = biorthogonality_matrix(dual_system(b, 8, u))
            w = np.array([math.factorial(n) * u**n for n in range(9)])
            worst = max(worst, float((np.abs(B - np.diag(w)) / w[:, None]).max()))
    ok, line = record(6, worst < 1e-7, time.perf_counter() - t0, 5.0, f"max |B - diag(n! u^n)| / n! u^n = {worst:.2e}")
    assert ok, line


def test_criterion_7_donsker():
    t0 = time.perf_counter()
    eta_phis = np.linspace(-1.0, 1.0, 5)
    phi_sqs = np.linspace(1.0, 5.0, 5)
    gap = imag = 0.0
    for b in (0.25, 0.5, 0.75):
        s = DonskerSpec(b, 1.0)
        for ep in eta_phis:
            for ps in phi_sqs:
                q = donsker_T_quad(s, ep, ps)
                gap = max(gap, abs(donsker_T(s, ep, ps) - q.real))
                imag = max(imag, abs(q.imag))
    gauss = 0.0
    s1 = DonskerSpec(1.0, 1.0)
    for ep in eta_phis:
        for ps in phi_sqs:
            ref = math.exp(-(0.5 * ps - 0.5 * ep * ep)) / math.sqrt(2.0 * math.pi)
            gauss = max(gauss, abs(donsker_T(s1, ep, ps) - ref))
    expct = max(
        abs(donsker_expectation(DonskerSpec(b, e)) - donsker_T(DonskerSpec(b, e), 0.0, 0.0))
        for b in (0.25, 0.5, 0.75, 1.0)
        for e in (0.5, 1.0, 4.0)
    )
    ok = gap < 1e-6 and imag < 1e-8 and gauss < 1e-10 and expct < 1e-10
    detail = f"75-point gap {gap:.1e} (imag {imag:.1e}), beta=1 gap {gauss:.1e}, expectation gap {expct:.1e}"
    ok, line = record(7, ok, time.perf_counter() - t0, 60.0, detail)
    assert ok, line


def test_criterion_8_sampler():
    t0 = time.perf_counter()
    n = 1_000_000
    betas = (0.25, 0.5, 0.75)
    sub = STREAMS[7].spawn(2 * len(betas))
    zmax = 0.0
    for b, rng in zip(betas, sub[: len(betas)]):
        s = sample_nu(b, rng, n)
        for t in (0.5, 1.0, 2.0, 4.0):
            v = np.exp(-t * s)
            zmax = max(zmax, abs(v.mean() - mittag_leffler(b, -t)) / (v.std(ddof=1) / math.sqrt(n)))
    mom_z = 0.0
    for b, rng in zip(betas, sub[len(betas):]):
        mom_z = max(mom_z, mc_verify_image_measure(b, 2, n, rng, max_order=6)["max_abs_z"])
    grid = np.linspace(0.0, 1.0, 65)
    p1 = sample_ggbm_path(1.3, 0.5, grid, RngState(SEED))
    p2 = sample_ggbm_path(1.3, 0.5, grid, RngState(SEED))
    x1 = sample_grey_vector(0.5, np.eye(3), RngState(SEED), 1000)
    x2 = sample_grey_vector(0.5, np.eye(3), RngState(SEED), 1000)
    same = p1.S == p2.S and np.array_equal(p1.grey_path, p2.grey_path) and np.array_equal(x1, x2)
    ok = zmax < 3.0 and mom_z < 3.0 and same
    detail = f"Laplace max |z| = {zmax:.2f} over 12 pairs, moment max |z| = {mom_z:.2f}, bit-exact replay {same}"
    ok, line = record(8, ok, time.perf_counter() - t0, 120.0, detail)
    assert ok, line


def test_criterion_9_non_product_witness():
    t0 = time.perf_counter()
    n = 1_000_000
    out = {}
    for b, rng in zip((0.5, 1.0), STREAMS[8].spawn(2)):
        x = sample_grey_vector(b, np.eye(2), rng, n)
        v = x[:, 0] ** 2 * x[:, 1] ** 2
        se = v.std(ddof=1) / math.sqrt(n)
        exact = moment(b, (2, 2))
        prod = (1.0 / math.gamma(b + 1.0)) ** 2
        out[b] = (v.mean(), se, exact, prod)
    m, se, exact, prod = out[0.5]
    ok = (abs(m - prod) > 10 * se) and (abs(exact - prod) > 10 * se) and abs(exact - 2.0 / math.gamma(2.0)) < 1e-14
    m1, se1, exact1, prod1 = out[1.0]
    ok = ok and abs(m1 - prod1) < 3 * se1 and abs(exact1 - prod1) < 1e-14
    detail = (
        f"beta=0.5: empirical {m:.4f} +/- {se:.4f}, exact {exact:.4f}, product {prod:.4f} "
        f"({abs(m - prod) / se:.0f} sigma apart); beta=1: empirical {m1:.4f} vs {prod1:.4f} "
        f"({abs(m1 - prod1) / se1:.2f} sigma)"
    )
    ok, line = record(9, ok, time.perf_counter() - t0, None, detail)
    assert ok, line


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
