"""Double-precision evaluation layer: series, quadrature, ODE transport, checks."""

from .covariance import covariance_check, master_derivative_check, projective_integral
from .cycles import (ALL_CYCLES, RELATIONS, CycleId, cycle_integral, euler_cycle_integral,
                     form_integral, match_relation, relation_check)
from .kummer import hyp2f1_continued, kummer_local
from .ode import PathPlan, integrate_path, ode_solve_path
from .quadrature import LinearFactor, QuadResult, QuadSpec, segment_integral, tanh_sinh
from .special import beta, gamma, gamma_ln, hyp2f1_series, hyp2f1_series_err, pochhammer

__all__ = [
    "ALL_CYCLES", "RELATIONS", "CycleId", "LinearFactor", "PathPlan", "QuadResult", "QuadSpec",
    "beta", "covariance_check", "cycle_integral", "euler_cycle_integral", "form_integral",
    "gamma", "gamma_ln", "hyp2f1_continued", "hyp2f1_series", "hyp2f1_series_err",
    "integrate_path", "kummer_local", "master_derivative_check", "match_relation",
    "ode_solve_path", "pochhammer", "projective_integral", "relation_check",
    "segment_integral", "tanh_sinh",
]
