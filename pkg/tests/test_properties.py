"""Property-based checks of structural invariants."""

import math

import numpy as np
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from mlfa import (
    DonskerSpec,
    RngState,
    appell_poly,
    donsker_T,
    laplace_m_wright,
    m_wright,
    mittag_leffler,
    moment,
    orthogonal_poly,
    sample_ggbm_path,
)
from mlfa.orthopoly import DensePolynomial

betas = st.floats(0.05, 1.0, allow_nan=False)
open_betas = st.floats(0.05, 0.95, allow_nan=False)
fast = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@fast
@given(betas)
def test_ml_at_zero(beta):
    assert mittag_leffler(beta, 0.0) == 1.0


@fast
@given(st.floats(-20, 5))
def test_ml_beta_one_is_exp(z):
    assert math.isclose(mittag_leffler(1.0, z), math.exp(z), rel_tol=1e-13)


@fast
@given(open_betas, st.floats(0.0, 30.0), st.floats(0.01, 5.0))
def test_ml_completely_monotone_step(beta, x, h):
    a, b = mittag_leffler(beta, -x), mittag_leffler(beta, -(x + h))
    assert 0.0 < b < a <= 1.0


@fast
@given(open_betas, st.floats(0.0, 20.0))
def test_mwright_nonnegative(beta, t):
    assert m_wright(beta, t) >= -1e-12


@fast
@given(open_betas, st.floats(0.0, 15.0))
def test_laplace_rho_one_is_ml(beta, z):
    assert math.isclose(laplace_m_wright(beta, 1.0, z), mittag_leffler(beta, -z), rel_tol=1e-11, abs_tol=1e-15)


@fast
@given(betas, st.lists(st.integers(0, 6), min_size=1, max_size=4), st.randoms(use_true_random=False))
def test_moment_symmetric_and_parity(beta, orders, rnd):
    shuffled = list(orders)
    rnd.shuffle(shuffled)
    assert moment(beta, tuple(orders)) == moment(beta, tuple(shuffled))
    if any(n % 2 for n in orders):
        assert moment(beta, tuple(orders)) == 0.0
    else:
        assert moment(beta, tuple(orders)) > 0.0


@fast
@given(betas, st.integers(1, 10))
def test_moment_marginal_consistency(beta, n):
    # adding a zero order (extra coordinate) leaves the moment unchanged
    assert moment(beta, (2 * n,)) == moment(beta, (2 * n, 0))


@fast
@given(betas, st.integers(0, 8), st.floats(-3, 3))
def test_orthogonal_parity(beta, n, x):
    H = orthogonal_poly(beta, n)
    assert math.isclose(H(-x), (-1) ** n * H(x), rel_tol=1e-12, abs_tol=1e-9)


@fast
@given(betas, st.integers(1, 12), st.floats(0.0, 3.0))
def test_appell_derivative(beta, n, u):
    # Appell property: p_n' = n p_{n-1}
    p = appell_poly(beta, n, u).poly.coeffs
    q = appell_poly(beta, n - 1, u).poly.coeffs
    dp = [k * c for k, c in enumerate(p)][1:]
    assert np.allclose(dp, [n * c for c in q], rtol=1e-11, atol=1e-9 * math.factorial(n) * max(1, u) ** n)


@fast
@given(betas, st.floats(0.1, 4.0), st.floats(0.0, 1.0), st.floats(0.0, 6.0))
def test_donsker_T_positive(beta, eta_sq, frac, phi_sq):
    # Cauchy-Schwarz bounded pairing; z >= 0 so T is a Laplace transform of a positive function
    eta_phi = frac * math.sqrt(eta_sq * phi_sq)
    assert donsker_T(DonskerSpec(beta, eta_sq), eta_phi, phi_sq) > 0


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**64 - 1), open_betas, st.floats(0.2, 1.9))
def test_sampler_seed_determinism(seed, beta, alpha):
    grid = np.linspace(0.05, 1.0, 6)
    a = sample_ggbm_path(alpha, beta, grid, RngState(seed))
    b = sample_ggbm_path(alpha, beta, grid, RngState(seed))
    assert a.S == b.S and np.array_equal(a.grey_path, b.grey_path)
    assert a.S > 0
    assert np.allclose(a.grey_path, math.sqrt(a.S) * a.gaussian_path)


@fast
@given(st.lists(st.floats(-5, 5), min_size=1, max_size=6), st.lists(st.floats(-5, 5), min_size=1, max_size=6),
       st.floats(-2, 2))
def test_dense_polynomial_product(a, b, x):
    p, q = DensePolynomial(a), DensePolynomial(b)
    assert math.isclose((p * q)(x), p(x) * q(x), rel_tol=1e-9, abs_tol=1e-9)
