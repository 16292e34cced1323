"""Monte Carlo sampling of grey noise by Gaussian subordination.

A draw from ``mu_beta`` is ``sqrt(S) G`` with ``S ~ nu_beta`` and ``G`` an
independent centred Gaussian. ``S`` comes from a one-sided stable variate by
``S = X**(-beta)``; ``X`` is produced by Kanter's exact transform of a uniform
angle and a standard exponential.
"""

from __future__ import annotations

import io
import itertools
import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import lapack

from ._types import as_beta
from .errors import DomainError, NotPositiveDefinite, UnsupportedBeta
from .measure import moment

__all__ = [
    "RngState",
    "PathSample",
    "CovarianceSpec",
    "sample_stable",
    "sample_nu",
    "sample_grey_vector",
    "sample_ggbm_path",
    "sample_ggbm_paths",
    "pivoted_cholesky",
    "mc_verify_image_measure",
    "path_to_csv",
    "path_to_json",
    "RNG_ALGORITHM",
]

RNG_ALGORITHM = f"numpy-{np.__version__}/PCG64/SeedSequence"
PIVOT_TOL = 1e-12


@dataclass
class RngState:
    """Seeded PCG64 stream. Same seed, same draws."""

    seed: int
    algorithm: str = RNG_ALGORITHM
    generator: np.random.Generator = field(init=False, repr=False)
    seed_seq: np.random.SeedSequence = field(init=False, repr=False)

    def __post_init__(self):
        self.seed = int(self.seed)
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must be a 64-bit unsigned integer")
        self.seed_seq = np.random.SeedSequence(self.seed)
        self.generator = np.random.Generator(np.random.PCG64(self.seed_seq))

    def spawn(self, n: int) -> list:
        """``n`` independent child streams; successive calls give fresh, reproducible children."""
        out = []
        for ss in self.seed_seq.spawn(n):
            child = RngState.__new__(RngState)
            child.seed = self.seed
            child.algorithm = f"{RNG_ALGORITHM}/spawn{'-'.join(map(str, ss.spawn_key))}"
            child.seed_seq = ss
            child.generator = np.random.Generator(np.random.PCG64(ss))
            out.append(child)
        return out


def _kanter_log_a(beta, phi):
    # log of A(phi) = [sin(b phi)**b sin((1-b) phi)**(1-b) / sin(phi)]**(1/(1-b))
    return (
        beta * np.log(np.sin(beta * phi))
        + (1.0 - beta) * np.log(np.sin((1.0 - beta) * phi))
        - np.log(np.sin(phi))
    ) / (1.0 - beta)


def _angle_exp(rng: RngState, size):
    g = rng.generator
    phi = math.pi * (1.0 - g.random(size))  # (0, pi]
    e = g.standard_exponential(size)
    return phi, e


def sample_stable(beta, rng: RngState, size=None):
    """One-sided stable variate with ``E exp(-t X) = exp(-t**beta)``, ``beta < 1``."""
    b = as_beta(beta)
    if b == 1.0:
        raise UnsupportedBeta("the stable law degenerates at beta=1; use sample_nu")
    phi, e = _angle_exp(rng, size)
    x = np.exp((1.0 - b) / b * (_kanter_log_a(b, phi) - np.log(e)))
    return float(x) if size is None else x


def sample_nu(beta, rng: RngState, size=None):
    """Draw from the mixing law ``nu_beta`` (``E exp(-t S) = E_beta(-t)``); constant 1 at beta=1."""
    b = as_beta(beta)
    if b == 1.0:
        return 1.0 if size is None else np.ones(size)
    phi, e = _angle_exp(rng, size)
    # S = X**(-beta) = (E / A)**(1 - beta)
    s = np.exp((1.0 - b) * (np.log(e) - _kanter_log_a(b, phi)))
    return float(s) if size is None else s


def pivoted_cholesky(cov, tol=PIVOT_TOL):
    """Factor ``L`` with ``L @ L.T == cov`` for symmetric positive semidefinite ``cov``.

    LAPACK ``dpstrf`` with full pivoting; rank-deficient (semidefinite) input
    is accepted. Raises :class:`NotPositiveDefinite` when the factor does not
    reproduce ``cov`` to ``tol`` relative accuracy.
    """
    a = np.array(cov, dtype=float, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError("covariance must be a square matrix")
    n = a.shape[0]
    scale = max(np.abs(a).max(), 1e-300)
    if not np.allclose(a, a.T, rtol=0.0, atol=tol * scale):
        raise NotPositiveDefinite("covariance is not symmetric")
    c, piv, rank, info = lapack.dpstrf(a, tol=-1.0, lower=1)
    if info < 0:
        raise DomainError(f"dpstrf argument error {info}")
    L = np.tril(c)
    L[:, rank:] = 0.0
    P = np.zeros((n, n))
    P[piv - 1, np.arange(n)] = 1.0
    L = P @ L
    if np.abs(L @ L.T - a).max() > tol * scale * max(n, 1):
        raise NotPositiveDefinite("covariance is not positive semidefinite")
    return L


def sample_grey_vector(beta, cov, rng: RngState, size=None):
    """Draw ``sqrt(S) L G`` with ``S ~ nu_beta``, ``G ~ N(0, I)`` and ``L L^T = cov``."""
    L = pivoted_cholesky(cov)
    d = L.shape[0]
    n = 1 if size is None else int(size)
    s = np.atleast_1d(sample_nu(beta, rng, n))
    g = rng.generator.standard_normal((n, d))
    x = np.sqrt(s)[:, None] * (g @ L.T)
    return x[0] if size is None else x


@dataclass(frozen=True)
class CovarianceSpec:
    """``min(t, s)`` (brownian) or ``(t**a + s**a - |t - s|**a) / 2`` (fractional)."""

    kind: str = "brownian"
    alpha: float = 1.0

    def __post_init__(self):
        if self.kind not in ("brownian", "fractional"):
            raise DomainError(f"unknown covariance kind {self.kind!r}")
        if self.kind == "fractional" and not 0.0 < self.alpha < 2.0:
            raise DomainError("alpha must lie in (0, 2)")

    def matrix(self, grid) -> np.ndarray:
        t = np.asarray(grid, dtype=float)
        if self.kind == "brownian":
            return np.minimum.outer(t, t)
        a = self.alpha
        ta = t**a
        return 0.5 * (ta[:, None] + ta[None, :] - np.abs(t[:, None] - t[None, :]) ** a)


@dataclass(frozen=True)
class PathSample:
    grid: np.ndarray
    S: float
    gaussian_path: np.ndarray
    grey_path: np.ndarray
    alpha: float
    beta: float
    seed: int | None = None
    rng: str = RNG_ALGORITHM


def _check_grid(grid):
    t = np.asarray(grid, dtype=float)
    if t.ndim != 1 or t.size == 0:
        raise DomainError("grid must be a non-empty 1-d sequence")
    if t[0] < 0 or np.any(np.diff(t) <= 0):
        raise DomainError("grid must be strictly increasing with t0 >= 0")
    return t


def sample_ggbm_paths(alpha, beta, grid, rng: RngState, n_paths: int):
    """``n_paths`` generalized grey Brownian motion paths; returns ``(S, gaussian, grey)``."""
    b = as_beta(beta)
    t = _check_grid(grid)
    L = pivoted_cholesky(CovarianceSpec("fractional", alpha).matrix(t))
    s = np.atleast_1d(sample_nu(b, rng, n_paths))
    gauss = rng.generator.standard_normal((n_paths, t.size)) @ L.T
    return s, gauss, np.sqrt(s)[:, None] * gauss


def sample_ggbm_path(alpha, beta, grid, rng: RngState) -> PathSample:
    """One path of ``B^{alpha, beta}``: ``sqrt(S)`` times a fractional Gaussian path, S shared."""
    b = as_beta(beta)
    t = _check_grid(grid)
    s, gauss, grey = sample_ggbm_paths(alpha, b, t, rng, 1)
    return PathSample(t, float(s[0]), gauss[0], grey[0], float(alpha), b, rng.seed, rng.algorithm)


def mc_verify_image_measure(beta, d: int, n_draws: int, rng: RngState, max_order: int = 6) -> dict:
    """Studentized deviations of empirical mixed moments (total order <= max_order) from the exact values."""
    b = as_beta(beta)
    x = sample_grey_vector(b, np.eye(d), rng, n_draws)
    items = []
    for total in range(1, max_order + 1):
        for orders in itertools.product(range(total + 1), repeat=d):
            if sum(orders) != total:
                continue
            vals = np.prod(x ** np.array(orders), axis=1)
            emp = float(vals.mean())
            se = float(vals.std(ddof=1) / math.sqrt(n_draws))
            exact = moment(b, orders)
            items.append(
                {"orders": list(orders), "empirical": emp, "exact": exact, "se": se, "z": (emp - exact) / se}
            )
    return {
        "beta": b,
        "d": d,
        "n_draws": n_draws,
        "max_abs_z": max(abs(i["z"]) for i in items),
        "items": items,
    }


def _fmt(x) -> str:
    return f"{float(x):.17g}"


def path_to_csv(p: PathSample) -> str:
    """CSV text: a ``#`` metadata line, then columns ``t,grey,gaussian`` at 17 significant digits."""
    buf = io.StringIO()
    buf.write(
        f"# beta={_fmt(p.beta)},alpha={_fmt(p.alpha)},S={_fmt(p.S)},seed={p.seed},rng={p.rng}\n"
    )
    buf.write("t,grey,gaussian\n")
    for t, g, z in zip(p.grid, p.grey_path, p.gaussian_path):
        buf.write(f"{_fmt(t)},{_fmt(g)},{_fmt(z)}\n")
    return buf.getvalue()


def path_to_json(p: PathSample) -> str:
    meta = {"beta": p.beta, "alpha": p.alpha, "S": p.S, "seed": p.seed, "rng": p.rng}
    return json.dumps(
        {
            "meta": meta,
            "t": [float(v) for v in p.grid],
            "grey": [float(v) for v in p.grey_path],
            "gaussian": [float(v) for v in p.gaussian_path],
        },
        indent=1,
    )
