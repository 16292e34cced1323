import math

import mpmath as mp
import pytest

from mlfa import (
    MultiIndexMoment,
    MultivariatePolynomial,
    exp_moment,
    integrate_mixture,
    integrate_polynomial,
    mittag_leffler,
    m_wright,
    moment,
    nu_density,
)
from mlfa.errors import DomainError, OverflowGuard, UnsupportedBeta


def mp_moment(beta, orders):
    # mixture oracle: prod (n_i - 1)!! times int s**N M_beta(s) ds = Gamma(N+1)/Gamma(beta N+1)
    if any(n % 2 for n in orders):
        return 0.0
    N = sum(orders) // 2
    dfact = math.prod(math.prod(range(n - 1, 0, -2)) for n in orders)
    return float(dfact * mp.gamma(N + 1) / mp.gamma(mp.mpf(beta) * N + 1))


def test_moment_examples():
    assert moment(0.3, (1,)) == 0.0
    assert moment(0.5, (2,)) == pytest.approx(1.1283791671, abs=1e-10)
    assert moment(0.5, (2, 2)) == pytest.approx(2.0, rel=1e-15)
    assert MultiIndexMoment(0.5, (2, 2)).value == moment(0.5, (2, 2))
    assert moment(MultiIndexMoment(0.7, (0, 4))) == moment(0.7, (4,))


@pytest.mark.parametrize("beta", [0.1, 0.25, 0.5, 0.75, 1.0])
@pytest.mark.parametrize("orders", [(2,), (4,), (6,), (2, 2), (4, 2), (2, 2, 2), (8, 4), (3, 2), (20, 10)])
def test_moment_against_oracle(beta, orders):
    assert moment(beta, orders) == pytest.approx(mp_moment(beta, orders), rel=1e-13)


def test_moment_guards():
    with pytest.raises(DomainError):
        moment(0.5, (-2,))
    with pytest.raises(OverflowGuard):
        moment(0.5, (62,))
    with pytest.raises(DomainError):
        moment(1.2, (2,))


def test_integrate_polynomial_examples():
    one = MultivariatePolynomial({(0,): 1.0}, 1)
    assert integrate_polynomial(0.4, one) == 1.0
    h2 = MultivariatePolynomial({(2,): 1.0, (0,): -1 / math.gamma(1.5)}, 1)
    assert abs(integrate_polynomial(0.5, h2)) < 1e-15
    xy = MultivariatePolynomial({(2, 2): 1.0}, 2)
    assert integrate_polynomial(0.5, xy) == pytest.approx(2.0)


def test_polynomial_algebra():
    p = MultivariatePolynomial({(1, 0): 2.0, (0, 1): 1.0}, 2)
    q = p * p
    assert q.degree == 2
    assert q(1.5, -0.5) == pytest.approx(p(1.5, -0.5) ** 2)
    with pytest.raises(DomainError):
        p * MultivariatePolynomial({(1,): 1.0}, 1)
    with pytest.raises(DomainError):
        MultivariatePolynomial({(1, 2, 3): 1.0}, 2)


def test_exp_moment_examples():
    assert exp_moment(0.5, 0.0, 3.0) == 1.0
    assert exp_moment(1.0, 1.0, 1.0) == pytest.approx(math.exp(0.5), rel=1e-15)
    # E_1/2(x) = exp(x**2) erfc(-x)
    assert exp_moment(0.5, 1.0, 1.0) == pytest.approx(math.exp(0.25) * math.erfc(-0.5), rel=1e-13)
    with pytest.raises(DomainError):
        exp_moment(0.5, 1.0, -1.0)


def test_exp_moment_is_moment_series():
    # E exp(lam X) = sum lam**2k E[X**2k] / (2k)!
    b, lam = 0.6, 0.8
    series = math.fsum(lam ** (2 * k) * moment(b, (2 * k,)) / math.factorial(2 * k) for k in range(25))
    assert exp_moment(b, lam, 1.0) == pytest.approx(series, rel=1e-13)


def test_integrate_mixture_examples():
    v, _ = integrate_mixture(0.5, lambda s: s)
    assert abs(v - moment(0.5, (2,))) < 1e-7
    v, _ = integrate_mixture(0.5, lambda s: 1.0)
    assert abs(v - 1.0) < 1e-9
    v, _ = integrate_mixture(0.5, lambda s: math.exp(0.5 * s))
    assert abs(v - exp_moment(0.5, 1.0, 1.0)) < 1e-6
    assert integrate_mixture(1.0, lambda s: 3 * s * s)[0] == 3.0


def test_nu_density():
    assert nu_density(0.5, 1.0) == pytest.approx(0.4393912894, abs=1e-10)
    assert nu_density(0.5, 0.0) == pytest.approx(1 / math.sqrt(math.pi), rel=1e-14)
    for b in (0.3, 0.5, 0.8):
        for t in (0.1, 0.9, 2.5):
            assert nu_density(b, t, via="stable") == pytest.approx(nu_density(b, t), rel=1e-9)
    with pytest.raises(UnsupportedBeta):
        nu_density(1.0, 1.0)
    with pytest.raises(DomainError):
        nu_density(0.5, -1.0)


@pytest.mark.parametrize("beta", [0.25, 0.5, 0.75])
def test_nu_density_normalized(beta):
    total = float(mp.quad(lambda t: m_wright(beta, float(t)), [0, 1, 5, 20, 80]))
    assert abs(total - 1.0) < 1e-9


def test_mixing_identity():
    # int exp(-t s) nu(ds) = E_beta(-t)
    for b in (0.4, 0.7):
        v, _ = integrate_mixture(b, lambda s: math.exp(-1.3 * s))
        assert v == pytest.approx(mittag_leffler(b, -1.3), abs=1e-10)
