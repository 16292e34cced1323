import json
import math

import numpy as np
import pytest

from mlfa import (
    CovarianceSpec,
    RngState,
    mc_verify_image_measure,
    mittag_leffler,
    sample_ggbm_path,
    sample_grey_vector,
    sample_nu,
    sample_stable,
)
from mlfa.errors import DomainError, NotPositiveDefinite, UnsupportedBeta
from mlfa.sampler import path_to_csv, path_to_json, pivoted_cholesky, sample_ggbm_paths

N = 1_000_000


def within(values, exact, k=3.0):
    se = values.std(ddof=1) / math.sqrt(values.size)
    return abs(values.mean() - exact) < k * se


def test_stable_laplace():
    x = sample_stable(0.5, RngState(11), N)
    assert np.all(x > 0)
    assert within(np.exp(-x), math.exp(-1.0))
    assert within(np.exp(-4 * x), math.exp(-2.0))


def test_nu_laplace():
    s = sample_nu(0.5, RngState(12), N)
    assert within(np.exp(-s), mittag_leffler(0.5, -1.0))
    assert sample_nu(1.0, RngState(1)) == 1.0
    assert np.all(sample_nu(1.0, RngState(1), 5) == 1.0)
    with pytest.raises(UnsupportedBeta):
        sample_stable(1.0, RngState(1))


def test_grey_vector_moments():
    x = sample_grey_vector(0.5, np.eye(2), RngState(13), N)
    assert within(x[:, 0] ** 2, 1 / math.gamma(1.5))
    assert within(x[:, 0] ** 4, 6.0)
    joint = x[:, 0] ** 2 * x[:, 1] ** 2
    assert within(joint, 2.0)
    assert not within(joint, 1 / math.gamma(1.5) ** 2, k=10.0)


@pytest.mark.parametrize("beta", [1.0, 0.5])
def test_image_measure(beta):
    rep = mc_verify_image_measure(beta, 2, N, RngState(14))
    assert rep["max_abs_z"] < 4.0
    odd = [i for i in rep["items"] if any(o % 2 for o in i["orders"])]
    assert odd and all(i["exact"] == 0.0 for i in odd)


def test_path_variance_and_char_fn():
    grid = np.linspace(0.0, 1.0, 11)
    s, gauss, grey = sample_ggbm_paths(1.0, 0.5, grid, RngState(15), 200_000)
    assert within(grey[:, -1] ** 2, 1 / math.gamma(1.5))
    s, gauss, grey = sample_ggbm_paths(1.2, 0.5, grid, RngState(16), 200_000)
    assert within(np.cos(grey[:, -1]), mittag_leffler(0.5, -0.5))


def test_brownian_reduction():
    grid = np.array([0.25, 0.5, 1.0])
    s, gauss, grey = sample_ggbm_paths(1.0, 1.0, grid, RngState(17), 200_000)
    assert np.all(s == 1.0)
    for i in range(3):
        for j in range(3):
            assert within(grey[:, i] * grey[:, j], min(grid[i], grid[j]))


def test_shared_subordinator():
    p = sample_ggbm_path(0.8, 0.4, np.linspace(0.1, 1.0, 5), RngState(3))
    assert np.allclose(p.grey_path, math.sqrt(p.S) * p.gaussian_path, rtol=1e-15)


def test_seed_reproducibility():
    grid = np.linspace(0.0, 2.0, 33)
    a = path_to_csv(sample_ggbm_path(1.5, 0.3, grid, RngState(2**63 + 5)))
    b = path_to_csv(sample_ggbm_path(1.5, 0.3, grid, RngState(2**63 + 5)))
    c = path_to_csv(sample_ggbm_path(1.5, 0.3, grid, RngState(6)))
    assert a == b and a != c
    children = RngState(9).spawn(2)
    again = RngState(9).spawn(2)
    assert children[0].generator.random() == again[0].generator.random()
    assert children[0].generator.random() != children[1].generator.random()


def test_csv_and_json_format():
    p = sample_ggbm_path(1.0, 0.5, [0.0, 0.5, 1.0], RngState(4))
    lines = path_to_csv(p).splitlines()
    assert lines[0].startswith("# beta=0.5,alpha=1,S=") and "seed=4" in lines[0] and "rng=" in lines[0]
    assert lines[1] == "t,grey,gaussian"
    assert len(lines) == 5
    assert float(lines[3].split(",")[1]) == p.grey_path[1]
    meta = json.loads(path_to_json(p))["meta"]
    assert meta["seed"] == 4 and meta["S"] == p.S


def test_pivoted_cholesky():
    grid = np.linspace(0.0, 1.0, 9)  # t=0 makes the matrix singular
    C = CovarianceSpec("fractional", 1.3).matrix(grid)
    L = pivoted_cholesky(C)
    assert np.allclose(L @ L.T, C, atol=1e-12)
    with pytest.raises(NotPositiveDefinite):
        pivoted_cholesky(np.array([[1.0, 2.0], [2.0, 1.0]]))
    with pytest.raises(NotPositiveDefinite):
        pivoted_cholesky(np.array([[1.0, 0.5], [0.0, 1.0]]))


def test_covariance_spec():
    t = np.array([0.3, 0.7])
    assert np.allclose(CovarianceSpec().matrix(t), np.minimum.outer(t, t))
    assert np.allclose(CovarianceSpec("fractional", 1.0).matrix(t), np.minimum.outer(t, t))
    with pytest.raises(DomainError):
        CovarianceSpec("fractional", 2.0)


def test_domain_errors():
    with pytest.raises(DomainError):
        RngState(-1)
    with pytest.raises(DomainError):
        sample_ggbm_path(1.0, 0.5, [0.5, 0.2], RngState(0))
