"""Numerical Mittag-Leffler analysis.

Special functions (E_beta, M_beta, Fox-H series), exact moments of the
Mittag-Leffler measure, orthogonal and Appell polynomial systems, Donsker's
delta and Monte Carlo sampling of grey noise.
"""

__version__ = "0.1.0"

from . import _backend
from ._types import BetaParam, QuadConfig, SeriesConfig
from .appell import (
    AppellPoly,
    DualSystem,
    appell_poly,
    dual_system,
    s_transform_coeff,
    t_from_s,
    t_transform_exp,
)
from .donsker import (
    DonskerSpec,
    donsker_expectation,
    donsker_kernels,
    donsker_S,
    donsker_T,
    donsker_T_quad,
)
from .errors import *  # noqa: F401,F403
from .measure import (
    MultiIndexMoment,
    MultivariatePolynomial,
    exp_moment,
    integrate_mixture,
    integrate_polynomial,
    moment,
    nu_density,
)
from .orthopoly import DensePolynomial, c_coeff, cross_42, orthogonal_poly
from .sampler import (
    CovarianceSpec,
    PathSample,
    RngState,
    mc_verify_image_measure,
    sample_ggbm_path,
    sample_grey_vector,
    sample_nu,
    sample_stable,
)
from .specfn import (
    HParams,
    fox_h_series,
    gamma,
    laplace_m_wright,
    laplace_m_wright_quad,
    m_wright,
    mittag_leffler,
)


def backend() -> str:
    """Name of the active kernel backend (``"compiled"`` or ``"python"``)."""
    return _backend.current()
