"""mlfrac: numerics for the linear time-fractional reaction-diffusion problem.

High-accuracy Mittag-Leffler evaluation on the real line, L1 Caputo
derivatives with eigenrelation/Volterra consistency checks, the 1-D
fundamental solution by two independent routes (alternating half-period
series and direct cosine-transform quadrature), machine checks of the
function-level and coefficient-level inequalities, and divergence tracking
of u along x = c t^beta.
"""

__version__ = "0.1.0"

from .bounds import (
    DOTTIE,
    BoundReport,
    FrontConfig,
    FrontSample,
    a0_lower_bound,
    ak_upper_bound,
    check_ml_lower,
    check_ml_upper,
    dottie_number,
    front_lower_bound,
    front_track,
)
from .caputo import (
    CaputoResult,
    TimeGrid,
    caputo_derivative,
    caputo_l1_all,
    eigenrelation_residual,
    l1_convergence_order,
    volterra_residual,
    xi_check,
)
from .errors import DomainError, NotRescalable, PoleError, TruncationError
from .fundamental_solution import (
    DEFAULT_TOL,
    FracParams,
    SolutionValue,
    TermSequence,
    a_term,
    rescale,
    spectral_tail_ratio,
    term_sequence,
    u_gaussian,
    u_quadrature,
    u_series,
)
from .special_functions import (
    MLEval,
    MLParams,
    erf_series,
    erfc_oracle,
    erfcx_oracle,
    gamma_fn,
    ml_e,
    ml_e_alpha_alpha,
    ml_e_prime,
    ml_log_e,
)

__all__ = [
    "__version__",
    "BoundReport", "FrontConfig", "FrontSample", "DOTTIE",
    "a0_lower_bound", "ak_upper_bound", "check_ml_lower", "check_ml_upper",
    "dottie_number", "front_lower_bound", "front_track",
    "CaputoResult", "TimeGrid", "caputo_derivative", "caputo_l1_all",
    "eigenrelation_residual", "l1_convergence_order", "volterra_residual",
    "xi_check",
    "DomainError", "NotRescalable", "PoleError", "TruncationError",
    "DEFAULT_TOL", "FracParams", "SolutionValue", "TermSequence",
    "a_term", "rescale", "spectral_tail_ratio", "term_sequence",
    "u_gaussian", "u_quadrature", "u_series",
    "MLEval", "MLParams", "erf_series", "erfc_oracle", "erfcx_oracle",
    "gamma_fn", "ml_e", "ml_e_alpha_alpha", "ml_e_prime", "ml_log_e",
]
