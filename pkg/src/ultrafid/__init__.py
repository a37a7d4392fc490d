"""Closed-form Cauchy transforms of the ultraspherical (even power of
semicircle) family, branch-correct evaluation on the doubly slit plane,
global inversion on the lower half-plane, and free-infinite-divisibility
certificates with density-level corollaries.
"""

from .config import (
    ConvergenceError,
    DomainError,
    PrecisionWarning,
    Tolerances,
    DEFAULT,
)
from .exact import (
    RationalPolynomial,
    build_P,
    build_P_recurrence,
    build_Q,
    build_Q_binomial,
    catalan,
    scaled_norm_const,
)
from .transforms import (
    IdentityResidual,
    check_derivative_identity,
    check_eq3,
    classify,
    estimate_dn,
    g1_continued,
    g1_offcut,
    gn_closed,
    gn_derivative,
    gn_quadrature,
    gn_recurrence,
    sqrt_asym,
)
from .inversion import (
    Certificate,
    EtaSegment,
    GridSpec,
    InversionResult,
    fid_certificate,
    g_inverse,
    invert_on_axis,
    invert_targets,
    locate_segment,
    voiculescu,
    voiculescu_grid,
)
from .measures import (
    BetaParams,
    ConvergenceReport,
    DensityGrid,
    beta_density,
    check_beta_square,
    check_beta_symmetric,
    density_ultra,
    moment,
    poincare_report,
    stieltjes_invert,
)

__version__ = "1.0.0"

__all__ = [
    "BetaParams",
    "Certificate",
    "ConvergenceError",
    "ConvergenceReport",
    "DEFAULT",
    "DensityGrid",
    "DomainError",
    "EtaSegment",
    "GridSpec",
    "IdentityResidual",
    "InversionResult",
    "PrecisionWarning",
    "RationalPolynomial",
    "Tolerances",
    "beta_density",
    "build_P",
    "build_P_recurrence",
    "build_Q",
    "build_Q_binomial",
    "catalan",
    "check_beta_square",
    "check_beta_symmetric",
    "check_derivative_identity",
    "check_eq3",
    "classify",
    "density_ultra",
    "estimate_dn",
    "fid_certificate",
    "g1_continued",
    "g1_offcut",
    "g_inverse",
    "gn_closed",
    "gn_derivative",
    "gn_quadrature",
    "gn_recurrence",
    "invert_on_axis",
    "invert_targets",
    "locate_segment",
    "moment",
    "poincare_report",
    "scaled_norm_const",
    "sqrt_asym",
    "stieltjes_invert",
    "voiculescu",
    "voiculescu_grid",
]
