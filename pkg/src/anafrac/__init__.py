"""anafrac: fractional integrals with general analytic kernels, plus a
numerical verification harness for the associated reverse-Minkowski-type
inequalities.

The hot numerical kernels (gamma, Mittag-Leffler series, Horner series
evaluation) run on a compiled extension when it is built, with a pure-Python
fallback selected automatically at import; see ``anafrac._backend``.
"""

from ._backend import BACKEND, available_backends, use_backend
from .errors import (
    AnafracError,
    ArityError,
    BoxViolation,
    ConstraintError,
    DivergenceError,
    DomainError,
    ExprSyntaxError,
    HypothesisViolation,
    ParseError,
    PhiRangeError,
    PoleError,
    QuadFailure,
    RadiusError,
    RangeError,
    ToleranceError,
    UnknownIdentifierError,
)
from .funclang import FunctionExpr, parse
from .inequalities import (
    CHECKERS,
    BoxBounds,
    InequalityReport,
    RatioBounds,
    Scenario,
    applicable_theorems,
    check_box,
    check_hypothesis,
    upsilon,
)
from .kernels import (
    AnalyticKernel,
    FractionalOrder,
    Interval,
    SignStatus,
    kernel_eval,
    kernel_transform_eval,
    make_constant_kernel,
    make_prabhakar_kernel,
    make_proportional_kernel,
    make_rl_kernel,
    make_series_kernel,
    validate_kernel,
)
from .operators import (
    OperatorValue,
    QuadratureSpec,
    frac_integral_direct,
    frac_integral_right,
    frac_integral_series,
    rl_integral,
    rl_monomial_closed_form,
)
from .special import MittagLefflerParams, gamma, ln_gamma, mittag_leffler3, pochhammer

__version__ = "0.1.0"

__all__ = [
    "AnafracError",
    "AnalyticKernel",
    "ArityError",
    "BACKEND",
    "BoxBounds",
    "BoxViolation",
    "CHECKERS",
    "ConstraintError",
    "DivergenceError",
    "DomainError",
    "ExprSyntaxError",
    "FractionalOrder",
    "FunctionExpr",
    "HypothesisViolation",
    "InequalityReport",
    "Interval",
    "MittagLefflerParams",
    "OperatorValue",
    "ParseError",
    "PhiRangeError",
    "PoleError",
    "QuadFailure",
    "QuadratureSpec",
    "RadiusError",
    "RangeError",
    "RatioBounds",
    "Scenario",
    "SignStatus",
    "ToleranceError",
    "UnknownIdentifierError",
    "applicable_theorems",
    "available_backends",
    "check_box",
    "check_hypothesis",
    "frac_integral_direct",
    "frac_integral_right",
    "frac_integral_series",
    "gamma",
    "kernel_eval",
    "kernel_transform_eval",
    "ln_gamma",
    "make_constant_kernel",
    "make_prabhakar_kernel",
    "make_proportional_kernel",
    "make_rl_kernel",
    "make_series_kernel",
    "mittag_leffler3",
    "parse",
    "pochhammer",
    "rl_integral",
    "rl_monomial_closed_form",
    "upsilon",
    "use_backend",
    "validate_kernel",
]
