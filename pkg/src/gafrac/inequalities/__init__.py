"""Inequality verifiers, constants, and the underlying identity."""

from .bounds import (
    corollary1_verify,
    corollary2_variants,
    corollary3_verify,
    corollary4_verify,
    hh_ga_verify,
    theorem5_verify,
    theorem6_verify,
    zhang_bounds,
)
from .constants import (
    CConstants,
    ZetaConstants,
    c_constants_alpha,
    c_constants_alpha_q,
    corollary2_closed_forms,
    sup_norm,
    zeta_constants,
)
from .identity import geodesic_side, lemma1_residual, trapezoid_functional
from .reports import REPORT_FIELDS, HolderExponents, InequalityReport

__all__ = [
    "CConstants",
    "HolderExponents",
    "InequalityReport",
    "REPORT_FIELDS",
    "ZetaConstants",
    "c_constants_alpha",
    "c_constants_alpha_q",
    "corollary1_verify",
    "corollary2_closed_forms",
    "corollary2_variants",
    "corollary3_verify",
    "corollary4_verify",
    "geodesic_side",
    "hh_ga_verify",
    "lemma1_residual",
    "sup_norm",
    "theorem5_verify",
    "theorem6_verify",
    "trapezoid_functional",
    "zeta_constants",
    "zhang_bounds",
]
