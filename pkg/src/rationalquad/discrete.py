"""Discrete (possibly signed) measures and recurrence coefficients extracted from them."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .eigenquad import gauss_rule
from .errors import InvalidInput, NonPositiveBeta
from .measures import RecurrenceCoefficients
from .modify import DEFAULT_TOL, divide_linear, divide_linear_twice, divide_quadratic, multiply_linear
from .partfrac import PartialFractionTerms


@dataclass(frozen=True)
class DiscreteMeasure:
    """Point masses ``weights[k]`` at ``points[k]``; weights may be negative."""

    points: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        wts = np.array(self.weights, dtype=float)
        if pts.ndim != 1 or pts.shape != wts.shape:
            raise InvalidInput("points and weights must be 1-d arrays of equal length")
        if not np.all(np.isfinite(pts)):
            raise InvalidInput("points must be finite")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", wts)

    @property
    def size(self) -> int:
        return len(self.points)

    def integrate(self, values) -> float:
        return math.fsum(self.weights * np.asarray(values, dtype=float))

    @classmethod
    def concatenate(cls, parts) -> "DiscreteMeasure":
        parts = list(parts)
        if not parts:
            return cls(np.empty(0), np.empty(0))
        return cls(np.concatenate([p.points for p in parts]),
                   np.concatenate([p.weights for p in parts]))


def _raise_nonpositive(k, value):
    raise NonPositiveBeta(f"beta_{k} = {value!r} is not positive", k, float(value))


def stieltjes(d: DiscreteMeasure, n: int) -> RecurrenceCoefficients:
    """First n recurrence pairs of a discrete measure by Stieltjes' procedure.

    Inner products are summed with ``math.fsum``.  Signed measures are
    allowed; a non-positive squared norm raises :class:`NonPositiveBeta`.
    """
    if n < 1:
        raise InvalidInput("n must be positive")
    if n > d.size:
        raise InvalidInput(f"cannot extract {n} pairs from {d.size} points")
    t, w = d.points, d.weights
    alphas = np.empty(n)
    betas = np.empty(n)
    p_prev = np.zeros_like(t)
    p = np.ones_like(t)
    norm_prev = 1.0
    for k in range(n):
        wp2 = w * p * p
        norm = math.fsum(wp2)
        if not norm > 0:
            _raise_nonpositive(k, norm)
        alphas[k] = math.fsum(wp2 * t) / norm
        betas[k] = norm if k == 0 else norm / norm_prev
        norm_prev = norm
        p, p_prev = (t - alphas[k]) * p - betas[k] * p_prev, p
    return RecurrenceCoefficients(alphas, betas)


def lanczos(d: DiscreteMeasure, n: int) -> RecurrenceCoefficients:
    """Same contract as :func:`stieltjes` for positive measures, via Lanczos
    tridiagonalization of ``diag(points)`` with full reorthogonalization."""
    if n < 1:
        raise InvalidInput("n must be positive")
    if n > d.size:
        raise InvalidInput(f"cannot extract {n} pairs from {d.size} points")
    if np.any(d.weights < 0):
        raise InvalidInput("lanczos requires nonnegative weights; use stieltjes for signed measures")
    t = d.points
    mass = math.fsum(d.weights)
    if not mass > 0:
        _raise_nonpositive(0, mass)
    basis = np.zeros((n, d.size))
    basis[0] = np.sqrt(d.weights / mass)
    alphas = np.empty(n)
    betas = np.empty(n)
    betas[0] = mass
    for k in range(n):
        v = t * basis[k]
        alphas[k] = basis[k] @ v
        v -= alphas[k] * basis[k]
        if k:
            v -= math.sqrt(betas[k]) * basis[k - 1]
        for _ in range(2):
            v -= basis[: k + 1].T @ (basis[: k + 1] @ v)
        if k + 1 < n:
            b = np.linalg.norm(v)
            if not b > 0:
                _raise_nonpositive(k + 1, b * b)
            betas[k + 1] = b * b
            basis[k + 1] = v / b
    return RecurrenceCoefficients(alphas, betas)


def _linear_root_inside(c: float, d: float, support) -> bool:
    lo, hi = support
    root = -c / d
    return lo <= root <= hi


def _term_rules(measure, terms: PartialFractionTerms, n: int, strategy: str, tol: float):
    support = measure.support
    for x, c in terms.simple_real:
        rule = gauss_rule(divide_linear(measure, x, n, strategy, tol), n)
        yield DiscreteMeasure(rule.nodes, c * rule.weights)
    for x, c, dd in terms.double_real:
        rule = gauss_rule(divide_linear(measure, x, n, strategy, tol), n)
        yield DiscreteMeasure(rule.nodes, c * rule.weights)
        rule = gauss_rule(divide_linear_twice(measure, x, n, strategy, tol), n)
        yield DiscreteMeasure(rule.nodes, dd * rule.weights)
    for x, y, c, dd in terms.quadratic:
        if dd == 0:
            rule = gauss_rule(divide_quadratic(measure, x, y, n, tol), n)
            yield DiscreteMeasure(rule.nodes, c * rule.weights)
        elif not _linear_root_inside(c, dd, support):
            coeffs = divide_quadratic(measure, x, y, n + 1, tol)
            rule = gauss_rule(multiply_linear(coeffs, c, dd, n, support), n)
            yield DiscreteMeasure(rule.nodes, rule.weights)
        else:
            # (n+1)-point rule of the quadratic-divided measure stays exact to
            # degree 2n+1, enough for (c + d t) p(t) with p of degree 2n-1
            rule = gauss_rule(divide_quadratic(measure, x, y, n + 1, tol), n + 1)
            yield DiscreteMeasure(rule.nodes, rule.weights * (c + dd * rule.nodes))


def assemble_pf_measure(measure, terms: PartialFractionTerms, n: int,
                        strategy: str = "ratios", tol: float = DEFAULT_TOL) -> DiscreteMeasure:
    """Composite rule for ``d lambda / omega_m`` exact for polynomials of degree ``2n - 1``.

    One n-point Gauss rule per partial fraction term (two per double real
    pole), weights scaled by the term's coefficient, concatenated in term
    order.
    """
    if n < 1:
        raise InvalidInput("n must be positive")
    return DiscreteMeasure.concatenate(_term_rules(measure, terms, n, strategy, tol))
