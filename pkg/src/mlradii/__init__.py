"""Radii of starlikeness and convexity for normalized three-parameter
Mittag-Leffler functions, with zero tables and geometric verification."""

from .errors import (
    ConvergenceFailure,
    DomainError,
    InsufficientZeroTable,
    InvalidBracket,
    InvalidParameters,
    MLRadiiError,
    NonConvergence,
    ParamsNotAdmitted,
    PrecisionLoss,
    TailNotConverged,
    ZeroRealityViolation,
)
from .ml_core import (
    EvalResult,
    MLParams,
    Normalization,
    eval_J,
    eval_phi,
    eval_phi_derivative,
    log_gamma,
    pochhammer,
    ratio_convex,
    ratio_starlike,
)
from .param_region import RegionPoint, WiStatus, WiVerdict, in_Wa, in_Wb, in_Wi, transform, wi_check
from .radii import (
    ProblemKind,
    ProblemSpec,
    RadiusResult,
    radius_alpha_convex,
    radius_convex,
    radius_parabolic_starlike,
    radius_starlike,
    radius_strong_starlike,
    radius_uniform_convex,
    solve,
)
from .verify import (
    VerificationReport,
    conic_membership,
    crosscheck_zero_sum,
    disk_in_sector_check,
    lemma_inequality_check,
    verify_radius_geometric,
)
from .zero_finder import ZeroTable, ZeroTarget, check_interlacing, refine_root, scan_brackets, zeros_of

__version__ = "0.1.0"
