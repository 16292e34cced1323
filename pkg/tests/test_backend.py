"""Compiled and pure-Python kernels must agree."""

import math

import pytest
from scipy.integrate import quad

import mlfa
from mlfa import _backend, _kernels_py
from mlfa.donsker import DonskerSpec, donsker_T_quad
from mlfa.specfn import laplace_m_wright_quad, mittag_leffler

compiled = pytest.mark.skipif("compiled" not in _backend.available(), reason="extension not built")


def test_backend_name():
    assert mlfa.backend() in _backend.available()
    with _backend.use("python"):
        assert mlfa.backend() == "python"


@compiled
def test_series_parity():
    from mlfa import _kernels as C

    for beta in (0.1, 0.25, 0.5, 0.75, 0.99):
        for z in (-3.0, 0.5, 2 + 1j, -8 + 0.3j):
            z = complex(z)
            args = (z.real, z.imag, 1.0, 1.0, 1.0, 1.0, beta, 1e-17, 20000)
            p, c = _kernels_py.wright_series(*args), C.wright_series(*args)
            assert p[5] == c[5]
            tol = 2 * (p[3] + c[3]) + 1e-15 * abs(complex(p[0], p[1]))
            assert abs(complex(p[0], p[1]) - complex(c[0], c[1])) <= tol


@compiled
def test_real_kernel_parity():
    from mlfa import _kernels as C

    for beta in (0.1, 0.25, 0.5, 0.75, 0.9):
        for t in (0.0, 0.3, 1.0, 4.0, 10.0, 40.0):
            assert C.mwright_real(beta, t)[0] == pytest.approx(_kernels_py.mwright_real(beta, t)[0], rel=1e-12, abs=1e-15)
            assert C.ml_neg_real(beta, t)[0] == pytest.approx(_kernels_py.ml_neg_real(beta, t)[0], rel=1e-12, abs=1e-15)
        assert C.sinpi(beta) == _kernels_py.sinpi(beta)
    for name in ("OK", "MAX_TERMS", "OVERFLOW", "SWITCH_EXPONENT", "SPECTRAL_CUT"):
        assert getattr(C, name) == getattr(_kernels_py, name)


@compiled
@pytest.mark.parametrize("name,args,hi", [
    ("lap_integrand", (0.4, 1.5, 0.7, 0.9, 1.0), 30.0),
    ("lap_integrand_sq", (0.6, 0.5, 1.2, 0.0, 0.0), 5.0),
    ("donsker_x_integrand", (0.5, 0.5, 0.3), math.inf),
])
def test_integrand_parity(name, args, hi):
    vals = {}
    for b in ("python", "compiled"):
        with _backend.use(b):
            vals[b] = quad(_backend.integrand(name), 0.0, hi, args=args, limit=200)[0]
    assert vals["compiled"] == pytest.approx(vals["python"], rel=1e-12, abs=1e-15)


@compiled
def test_public_functions_parity():
    out = {}
    for b in ("python", "compiled"):
        with _backend.use(b):
            out[b] = (
                mittag_leffler(0.6, -25.0),
                laplace_m_wright_quad(0.5, 1.0, 3.0)[0],
                donsker_T_quad(DonskerSpec(0.5, 1.0, a=0.5), 0.2, 1.0),
            )
    for p, c in zip(out["python"], out["compiled"]):
        assert abs(p - c) < 1e-11
