import math

import mpmath as mp
import numpy as np
import pytest

from mlfa import DensePolynomial, c_coeff, cross_42, orthogonal_poly
from mlfa.errors import DomainError, IllConditioned
from mlfa.orthopoly import closed_form_poly, cross_42_expansion, inner_product


def gram_schmidt(beta, n, dps=60):
    """Monic H_0..H_n by Gram-Schmidt on monomials with mpmath moments."""
    with mp.workdps(dps):
        b = mp.mpf(beta)

        def mom(k):
            if k % 2:
                return mp.mpf(0)
            h = k // 2
            return mp.factorial(k) / (2**h * mp.gamma(b * h + 1))

        def ip(p, q):
            return mp.fsum(a * c * mom(i + j) for i, a in enumerate(p) for j, c in enumerate(q))

        basis = []
        for k in range(n + 1):
            v = [mp.mpf(0)] * k + [mp.mpf(1)]
            for h in basis:
                proj = ip(v, h) / ip(h, h)
                v = [vi - proj * (h[i] if i < len(h) else 0) for i, vi in enumerate(v)]
            basis.append(v)
        return [[float(c) for c in h] for h in basis]


@pytest.mark.parametrize("beta", [0.25, 0.5, 0.75, 1.0])
def test_against_gram_schmidt(beta):
    ref = gram_schmidt(beta, 8)
    for n in range(9):
        got = orthogonal_poly(beta, n).coeffs
        assert np.allclose(got, ref[n], rtol=1e-10, atol=1e-10)


def test_examples():
    assert orthogonal_poly(0.3, 0).coeffs == (1.0,)
    h2 = orthogonal_poly(0.4, 2).coeffs
    assert h2 == pytest.approx((-1 / math.gamma(1.4), 0.0, 1.0), abs=1e-14)
    assert orthogonal_poly(1.0, 3).coeffs == pytest.approx((0.0, -3.0, 0.0, 1.0), abs=1e-13)


def test_c_coeff():
    assert c_coeff(1.0) == pytest.approx(6.0, rel=1e-14)
    assert c_coeff(0.5) == pytest.approx(-orthogonal_poly(0.5, 4).coeffs[2], rel=1e-12)


def test_hermite_reduction():
    for n in range(10):
        ref = np.polynomial.hermite_e.herme2poly([0] * n + [1])
        assert np.allclose(orthogonal_poly(1.0, n).coeffs, ref, atol=1e-9)


def test_closed_forms_random_beta():
    rng = np.random.default_rng(7)
    for b in 1.0 - rng.random(20):
        for n in range(5):
            assert np.allclose(orthogonal_poly(b, n).coeffs, closed_form_poly(b, n).coeffs, rtol=0, atol=1e-10)


def test_cross_42():
    assert abs(cross_42(1.0)) < 1e-10
    signs = set()
    for b in (0.1, 0.25, 0.5, 0.75, 0.9, 0.99):
        v = cross_42(b)
        signs.add(v > 0)
        assert abs(v - cross_42_expansion(b)) < 1e-9
    for b in (0.25, 0.5, 0.75):
        assert abs(cross_42(b)) > 1e-6
    assert len(signs) == 1


def test_orthogonality_exact():
    for b in (0.25, 0.5, 0.75, 1.0):
        H = [orthogonal_poly(b, n) for n in range(9)]
        for n in range(9):
            assert inner_product(b, H[n], H[n]) > 0
            for m in range(n):
                assert abs(inner_product(b, H[n], H[m])) < 1e-8


def test_degree_cap_and_conditioning():
    with pytest.raises(DomainError):
        orthogonal_poly(0.5, 13)
    with pytest.raises(DomainError):
        orthogonal_poly(0.5, -1)
    with pytest.raises(IllConditioned):
        orthogonal_poly(0.25, 11)


def test_dense_polynomial_ops():
    p = DensePolynomial([1.0, 2.0])
    q = DensePolynomial([0.0, 0.0, 3.0])
    assert (p * q).coeffs == (0.0, 0.0, 3.0, 6.0)
    assert (p + q).coeffs == (1.0, 2.0, 3.0)
    assert (q - q).coeffs == (0.0,)
    assert p(2.0) == 5.0
    assert p.rescale(2.0)(1.0) == pytest.approx(p(2.0)) or p.rescale(2.0)(2.0) == pytest.approx(p(1.0))
