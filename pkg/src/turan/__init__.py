"""Turan's extremal problem for periodic functions with support in [-p/q, p/q]."""
from .closed_forms import (ClosedFormResult, QuadratureWeights, dispatch_closed_form,
                           quadrature_weights, stechkin_value, theorem3_value, theorem4_value,
                           theorem5_value)
from .extremal import ExtremalFunction, build_extremal, fourier_alpha, phi_eval, validate_membership
from .problems import (DEFAULT_TOL, LinearProgram, ProblemInstance, b_from_s, make_instance,
                       make_lp1, make_lp2, s_from_b)
from .routes import compute_routes
from .simplex import LPSolution, Status, certificate_check, solve

__all__ = [
    "ClosedFormResult", "QuadratureWeights", "dispatch_closed_form", "quadrature_weights",
    "stechkin_value", "theorem3_value", "theorem4_value", "theorem5_value",
    "ExtremalFunction", "build_extremal", "fourier_alpha", "phi_eval", "validate_membership",
    "DEFAULT_TOL", "LinearProgram", "ProblemInstance", "b_from_s", "make_instance", "make_lp1",
    "make_lp2", "s_from_b", "compute_routes", "LPSolution", "Status", "certificate_check", "solve",
]
