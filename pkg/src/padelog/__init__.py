"""Principal matrix logarithm via Gauss-Legendre quadrature with a-priori (s, k) selection."""

from .engine import (
    LogmReport,
    ParamChoice,
    cost,
    error_functional,
    logm_auto,
    logm_fixed,
    matrix_error_bound_restricted,
    select_params,
)
from .errors import PadeLogError
from .gallery import GallerySpec, build, symbol_range
from .krylov import log_action, poles_from_rule, rational_arnoldi
from .linalg import cond2, expm_ref, hermitian_eig, lu_solve, norm2, sigma_min, sqrtm
from .quadrature import QuadratureRule, gauss_legendre
from .scalar import eval_R, scalar_error_bound
from .spectral import (
    SpectralSet,
    branch_cut_clearance,
    crouzeix_bound,
    fov_boundary,
    pseudo_contour,
    pseudo_prefactor,
    resolvent_grid,
)

__version__ = "0.1.0"
