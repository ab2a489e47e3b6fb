"""Rational Gauss rules: n-point rules exact on polynomials of degree 2n-m-1
and on the rational functions whose poles are prescribed by a :class:`PoleSet`.

Both builders compute the n-point Gauss rule of the modified measure
``d lambda / omega_m`` and then multiply each weight by ``omega_m`` at its
node.  :func:`build_pf` assembles the modified measure exactly from partial
fractions; :func:`build_disc` approximates it by a large discrete measure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .discrete import DiscreteMeasure, assemble_pf_measure, lanczos, stieltjes
from .eigenquad import QuadratureRule, apply_rule, base_rule, gauss_rule
from .errors import ConvergenceFailure, InvalidInput, UnsupportedCase
from .measures import RecurrenceCoefficients
from .modify import DEFAULT_TOL
from .partfrac import Case, PoleSet, check_admissible, classify, omega_eval, partial_fractions

DISC_TOL = 1e-13
DISC_MAX_POINTS = 800


@dataclass(frozen=True)
class RationalRule:
    nodes: np.ndarray
    weights: np.ndarray
    n: int
    m: int
    method: str
    poles: PoleSet
    measure: object
    gamma_n: Optional[float] = None
    beta_hats: Optional[np.ndarray] = None
    case: Optional[Case] = None
    gauss: Optional[QuadratureRule] = field(default=None, repr=False)
    # number of discretization points used by build_disc
    points_used: Optional[int] = None

    def __len__(self):
        return len(self.nodes)


def _check_sizes(poles: PoleSet, n: int, m: Optional[int], allow_empty: bool) -> int:
    if int(n) != n or n < 1:
        raise InvalidInput(f"n must be a positive integer, got {n}")
    if m is None:
        m = poles.m
    if m != poles.m:
        raise InvalidInput(f"m={m} does not match the pole set total multiplicity {poles.m}")
    if m > 2 * n:
        raise InvalidInput(f"m={m} exceeds 2n={2 * n}")
    if m < 1 and not allow_empty:
        raise InvalidInput("m must be at least 1; use gauss_rule for the classical rule")
    return m


def _omega_sign(poles: PoleSet, support) -> int:
    lo, hi = support
    probe = 0.5 * (lo + hi) if math.isfinite(hi) else lo + 1.0
    value = float(omega_eval(poles, probe))
    return 1 if value > 0 else -1


def transform_rule(gauss: QuadratureRule, poles: PoleSet):
    """Nodes unchanged; weights multiplied by ``omega_m`` at the nodes."""
    nodes = np.array(gauss.nodes, dtype=float)
    return nodes, gauss.weights * omega_eval(poles, nodes)


def error_constant(beta_hats, n: int) -> float:
    """``prod(beta_hats[:n+1]) / (2n)!``, accumulated in log space."""
    b = np.asarray(beta_hats, dtype=float)
    if b.size < n + 1:
        raise InvalidInput(f"need {n + 1} beta values, got {b.size}")
    b = b[: n + 1]
    if not np.all(b > 0):
        raise InvalidInput("error constant needs positive beta values")
    return math.exp(math.fsum(np.log(b)) - math.lgamma(2 * n + 1))


def _finish(coeffs: RecurrenceCoefficients, measure, poles, n, m, method, want_gamma, case, points=None):
    gauss = gauss_rule(coeffs, n)
    nodes, weights = transform_rule(gauss, poles)
    gamma = beta_hats = None
    if want_gamma:
        beta_hats = np.array(coeffs.betas[: n + 1])
        gamma = coeffs.sign * error_constant(beta_hats, n)
        beta_hats[0] *= coeffs.sign
    return RationalRule(nodes, weights, n, m, method, poles, measure, gamma, beta_hats,
                        case, gauss, points)


def build_pf(measure, poles: PoleSet, n: int, m: Optional[int] = None, want_gamma: bool = False,
             strategy: str = "ratios", tol: float = DEFAULT_TOL) -> RationalRule:
    """n-point rational Gauss rule by the partial fraction method.

    Raises :class:`UnsupportedCase` for pole sets without a partial fraction
    decomposition here (complex pairs mixed with real poles beyond one
    simple real pole, or multiplicities above two); use :func:`build_disc`
    for those.  Instability shows up as :class:`NonPositiveBeta`.
    """
    m = _check_sizes(poles, n, m, allow_empty=False)
    support = measure.support
    case = classify(poles, support)
    if case in (Case.CASE4, Case.UNSUPPORTED, Case.EMPTY):
        raise UnsupportedCase(f"{case.value} has no partial fraction path; use disc")
    terms = partial_fractions(poles, case)
    count = n + 1 if want_gamma else n
    composite = assemble_pf_measure(measure, terms, count, strategy, tol)
    sign = _omega_sign(poles, support)
    composite = DiscreteMeasure(composite.points, sign * composite.weights)
    coeffs = stieltjes(composite, count)
    coeffs = RecurrenceCoefficients(coeffs.alphas, coeffs.betas, sign)
    return _finish(coeffs, measure, poles, n, m, "pf", want_gamma, case)


def _max_relative_change(new: RecurrenceCoefficients, old: RecurrenceCoefficients) -> float:
    scale_terms = [np.abs(new.alphas), np.sqrt(new.betas[1:])]
    alpha_scale = max(float(np.max(np.concatenate(scale_terms))), np.finfo(float).tiny)
    da = np.max(np.abs(new.alphas - old.alphas)) / alpha_scale
    db = np.max(np.abs(new.betas - old.betas) / new.betas)
    return float(max(da, db))


def build_disc(measure, poles: PoleSet, n: int, m: Optional[int] = None, tol: float = DISC_TOL,
               want_gamma: bool = False, max_points: int = DISC_MAX_POINTS,
               procedure: str = "stieltjes") -> RationalRule:
    """n-point rational Gauss rule by discretizing ``d lambda / omega_m``.

    The discretization is the N-point Gauss rule of ``measure`` with weights
    divided by ``omega_m`` at its nodes.  N starts at ``max(4n, n+m+10)``
    and grows by a factor 1.5 until every tracked coefficient changes by
    less than ``tol`` relative; :class:`ConvergenceFailure` once N would
    exceed ``max_points``.  An empty pole set is allowed and reproduces the
    classical Gauss rule.
    """
    m = _check_sizes(poles, n, m, allow_empty=True)
    if procedure not in ("stieltjes", "lanczos"):
        raise InvalidInput(f"unknown procedure {procedure!r}")
    extract = stieltjes if procedure == "stieltjes" else lanczos
    support = measure.support
    case = classify(poles, support) if m else Case.EMPTY
    sign = _omega_sign(poles, support) if m else 1
    count = n + 1 if want_gamma else n
    size = max(4 * n, n + m + 10)
    previous = None
    while True:
        rule = base_rule(measure, size)
        weights = rule.weights / np.abs(omega_eval(poles, rule.nodes)) if m else rule.weights
        coeffs = extract(DiscreteMeasure(rule.nodes, weights), count)
        if previous is not None and _max_relative_change(coeffs, previous) < tol:
            break
        previous = coeffs
        if size >= max_points:
            raise ConvergenceFailure(
                f"discretization did not reach tol={tol:g} with N <= {max_points}")
        size = min(math.ceil(1.5 * size), max_points)
    coeffs = RecurrenceCoefficients(coeffs.alphas, coeffs.betas, sign)
    return _finish(coeffs, measure, poles, n, m, "disc", want_gamma, case, size)


def integrate(rule: RationalRule, g) -> float:
    """Apply the rule to ``g`` with compensated summation."""
    return apply_rule(QuadratureRule(rule.nodes, rule.weights), g)
