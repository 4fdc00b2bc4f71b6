"""Numerical verification of trapezoid-type integral inequalities for
GA-convex functions under Hadamard fractional integrals.

The package evaluates both sides of each inequality with adaptive
Gauss-Kronrod quadrature (compiled or numpy backend), certifies the
hypotheses by dense sampling, and cross-checks every closed-form bound
constant against an independent numerical route.
"""

from ._kernels import active_backend, available_backends, set_backend
from .convexity import (
    ConvexityCertificate,
    SamplingPlan,
    Witness,
    check_ga_convex,
    check_geo_symmetric,
    check_s_ga_convex,
)
from .errors import (
    DomainFault,
    GafracError,
    ParseError,
    PreconditionError,
    QuadratureNonConvergence,
)
from .expr import differentiate, parse
from .fractional import FractionalOrder, hadamard_left, hadamard_right
from .funcspec import FunctionSpec
from .generators import (
    random_ga_convex,
    random_ga_convex_derivative,
    random_log_polynomial,
    random_symmetric_weight,
)
from .inequalities import (
    CConstants,
    HolderExponents,
    InequalityReport,
    ZetaConstants,
    c_constants_alpha,
    c_constants_alpha_q,
    corollary1_verify,
    corollary2_closed_forms,
    corollary2_variants,
    corollary3_verify,
    corollary4_verify,
    hh_ga_verify,
    lemma1_residual,
    sup_norm,
    theorem5_verify,
    theorem6_verify,
    zeta_constants,
    zhang_bounds,
)
from .interval import Interval
from .means import arithmetic_mean, gamma, geometric_mean, logarithmic_mean
from .quadrature import (
    QuadratureConfig,
    QuadratureResult,
    find_sign_changes,
    integrate,
    integrate_power_singular,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "active_backend", "available_backends", "set_backend",
    "ConvexityCertificate", "SamplingPlan", "Witness",
    "check_ga_convex", "check_geo_symmetric", "check_s_ga_convex",
    "DomainFault", "GafracError", "ParseError", "PreconditionError",
    "QuadratureNonConvergence",
    "differentiate", "parse",
    "FractionalOrder", "hadamard_left", "hadamard_right",
    "FunctionSpec",
    "random_ga_convex", "random_ga_convex_derivative",
    "random_log_polynomial", "random_symmetric_weight",
    "CConstants", "HolderExponents", "InequalityReport", "ZetaConstants",
    "c_constants_alpha", "c_constants_alpha_q", "corollary1_verify",
    "corollary2_closed_forms", "corollary2_variants", "corollary3_verify",
    "corollary4_verify", "hh_ga_verify", "lemma1_residual", "sup_norm",
    "theorem5_verify", "theorem6_verify", "zeta_constants", "zhang_bounds",
    "Interval",
    "arithmetic_mean", "gamma", "geometric_mean", "logarithmic_mean",
    "QuadratureConfig", "QuadratureResult", "find_sign_changes",
    "integrate", "integrate_power_singular",
]
