"""Gauss quadrature rules exact for rational functions with prescribed poles."""

from .discrete import DiscreteMeasure, assemble_pf_measure, lanczos, stieltjes
from .eigenquad import QuadratureRule, apply_rule, base_rule, gauss_rule
from .errors import (ConvergenceFailure, EigensolverFailure, InvalidInput, NonFiniteValue,
                     NonPositiveBeta, PoleOnSupport, RationalQuadError, UnsupportedCase)
from .measures import BaseMeasure, RecurrenceCoefficients, eval_orthopoly, recurrence_coefficients
from .modify import (backward_cauchy_moments, cauchy_moments_from_start, divide_linear, divide_linear_twice, divide_quadratic,
                     modified_chebyshev, multiply_linear)
from .partfrac import Case, PoleSet, classify, omega_eval, partial_fractions
from .ratgauss import RationalRule, build_disc, build_pf, error_constant, integrate, transform_rule

__all__ = [
    "BaseMeasure", "Case", "ConvergenceFailure", "DiscreteMeasure", "EigensolverFailure",
    "InvalidInput", "NonFiniteValue", "NonPositiveBeta", "PoleOnSupport", "PoleSet",
    "QuadratureRule", "RationalQuadError", "RationalRule", "RecurrenceCoefficients",
    "UnsupportedCase", "apply_rule", "assemble_pf_measure", "backward_cauchy_moments",
    "base_rule", "build_disc", "cauchy_moments_from_start", "build_pf", "classify", "divide_linear", "divide_linear_twice",
    "divide_quadratic", "error_constant", "eval_orthopoly", "gauss_rule", "integrate", "lanczos",
    "modified_chebyshev", "multiply_linear", "omega_eval", "partial_fractions",
    "recurrence_coefficients", "stieltjes", "transform_rule",
]
