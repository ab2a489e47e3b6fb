"""Base measures with closed-form recurrence coefficients.

A measure ``d lambda`` is described by the recurrence coefficients of its
monic orthogonal polynomials,

    pi_{k+1}(t) = (t - alpha_k) pi_k(t) - beta_k pi_{k-1}(t),
    pi_0 = 1, pi_{-1} = 0,

with ``beta_0`` the total mass.  Three classical families are built in
(Legendre, Laguerre, Jacobi), finite-interval ones optionally mapped to an
arbitrary interval ``[lo, hi]``.  For a mapped Jacobi measure the weight is
``(hi - t)^a (t - lo)^b``, so Jacobi(0, -1/2) on ``[0, 1]`` is ``t^{-1/2} dt``.

Every measure-like object in this package (base measures here, divided
measures in :mod:`rationalquad.modify`) exposes the same three members:
``support``, ``coefficients(count)`` and ``cauchy(z, order=1)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Tuple

import numpy as np

from .errors import ConvergenceFailure, InvalidInput, PoleOnSupport

EULER_GAMMA = 0.57721566490153286060651209008240243


@dataclass(frozen=True)
class RecurrenceCoefficients:
    """First ``count`` recurrence coefficient pairs of a measure.

    ``sign`` records that the coefficients describe the positive measure
    ``|d mu|`` of a target measure ``d mu`` of constant sign: the target
    equals ``sign * |d mu|``.  Gauss weights of the target are the Gauss
    weights of these coefficients multiplied by ``sign``.
    """

    alphas: np.ndarray
    betas: np.ndarray
    sign: int = 1

    def __post_init__(self):
        a = np.array(self.alphas, dtype=float)
        b = np.array(self.betas, dtype=float)
        if a.ndim != 1 or a.shape != b.shape:
            raise InvalidInput("alphas and betas must be 1-d sequences of equal length")
        a.flags.writeable = False
        b.flags.writeable = False
        object.__setattr__(self, "alphas", a)
        object.__setattr__(self, "betas", b)

    @property
    def count(self) -> int:
        return len(self.alphas)

    def truncate(self, count: int) -> "RecurrenceCoefficients":
        if count > self.count:
            raise InvalidInput(f"only {self.count} coefficient pairs available, {count} requested")
        return RecurrenceCoefficients(self.alphas[:count], self.betas[:count], self.sign)


@dataclass(frozen=True)
class BaseMeasure:
    """A classical measure, optionally affinely mapped to ``[lo, hi]``.

    Use the constructors :meth:`legendre`, :meth:`laguerre` and
    :meth:`jacobi` rather than building instances directly.
    """

    kind: str
    a: float = 0.0
    b: float = 0.0
    interval: Tuple[float, float] | None = field(default=None)

    def __post_init__(self):
        if self.kind not in ("legendre", "laguerre", "jacobi"):
            raise InvalidInput(f"unknown measure kind {self.kind!r}")
        if self.kind == "jacobi" and not (self.a > -1 and self.b > -1):
            raise InvalidInput(f"Jacobi parameters must exceed -1, got a={self.a}, b={self.b}")
        if self.kind == "legendre" and (self.a != 0 or self.b != 0):
            raise InvalidInput("Legendre measure takes no parameters")
        if self.interval is not None:
            if self.kind == "laguerre":
                raise InvalidInput("the Laguerre measure cannot be mapped to a finite interval")
            lo, hi = (float(v) for v in self.interval)
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                raise InvalidInput(f"invalid interval {self.interval}")
            object.__setattr__(self, "interval", (lo, hi))

    @classmethod
    def legendre(cls, interval=None) -> "BaseMeasure":
        return cls("legendre", interval=interval)

    @classmethod
    def laguerre(cls) -> "BaseMeasure":
        return cls("laguerre")

    @classmethod
    def jacobi(cls, a: float, b: float, interval=None) -> "BaseMeasure":
        return cls("jacobi", float(a), float(b), interval=interval)

    @property
    def support(self) -> Tuple[float, float]:
        if self.kind == "laguerre":
            return (0.0, math.inf)
        return self.interval if self.interval is not None else (-1.0, 1.0)

    @property
    def _affine(self) -> Tuple[float, float]:
        lo, hi = self.support
        return 0.5 * (hi - lo), 0.5 * (hi + lo)

    def coefficients(self, count: int) -> RecurrenceCoefficients:
        return recurrence_coefficients(self, count)

    def cauchy(self, z: complex, order: int = 1) -> complex:
        return cauchy_transform_zero(self, z, order=order)

    def describe(self) -> str:
        if self.kind == "laguerre":
            return "laguerre"
        text = self.kind if self.kind == "legendre" else f"jacobi({self.a:g},{self.b:g})"
        if self.interval is not None:
            text += f" on [{self.interval[0]:g},{self.interval[1]:g}]"
        return text


def _jacobi_coefficients(count: int, a: float, b: float):
    k = np.arange(count, dtype=float)
    alphas = np.empty(count)
    betas = np.empty(count)
    ab = a + b
    alphas[0] = (b - a) / (ab + 2.0)
    if count > 1:
        kk = k[1:]
        s = 2.0 * kk + ab
        alphas[1:] = (b * b - a * a) / (s * (s + 2.0))
    betas[0] = 2.0 ** (ab + 1.0) * math.exp(
        math.lgamma(a + 1.0) + math.lgamma(b + 1.0) - math.lgamma(ab + 2.0))
    if count > 1:
        betas[1] = 4.0 * (a + 1.0) * (b + 1.0) / ((ab + 2.0) ** 2 * (ab + 3.0))
    if count > 2:
        kk = k[2:]
        s = 2.0 * kk + ab
        betas[2:] = 4.0 * kk * (kk + a) * (kk + b) * (kk + ab) / (s * s * (s + 1.0) * (s - 1.0))
    return alphas, betas


@lru_cache(maxsize=256)
def _cached_coefficients(measure: BaseMeasure, count: int) -> RecurrenceCoefficients:
    if measure.kind == "laguerre":
        k = np.arange(count, dtype=float)
        alphas = 2.0 * k + 1.0
        betas = k * k
        betas[0] = 1.0
        return RecurrenceCoefficients(alphas, betas)
    if measure.kind == "legendre":
        k = np.arange(count, dtype=float)
        alphas = np.zeros(count)
        betas = np.empty(count)
        betas[0] = 2.0
        betas[1:] = k[1:] ** 2 / (4.0 * k[1:] ** 2 - 1.0)
        a = b = 0.0
    else:
        a, b = measure.a, measure.b
        alphas, betas = _jacobi_coefficients(count, a, b)
    if measure.interval is not None:
        sigma, tau = measure._affine
        alphas = sigma * alphas + tau
        betas = betas * sigma ** 2
        betas[0] *= sigma ** (a + b + 1.0) / sigma ** 2
    return RecurrenceCoefficients(alphas, betas)


def recurrence_coefficients(measure: BaseMeasure, count: int) -> RecurrenceCoefficients:
    """Return the first ``count`` pairs ``(alpha_k, beta_k)`` of ``measure``."""
    if int(count) != count or count < 1:
        raise InvalidInput(f"count must be a positive integer, got {count}")
    return _cached_coefficients(measure, int(count))


def eval_orthopoly(coeffs: RecurrenceCoefficients, k: int, t):
    """Evaluate the monic orthogonal polynomial ``pi_k`` at ``t`` (scalar or array).

    ``pi_k`` needs ``alpha_0..alpha_{k-1}`` and ``beta_1..beta_{k-1}``, so
    ``k`` may be as large as ``coeffs.count``.
    """
    if k < 0 or k > coeffs.count:
        raise InvalidInput(f"degree {k} needs more than the {coeffs.count} available coefficient pairs")
    t = np.asarray(t, dtype=float)
    p_prev = np.zeros_like(t)
    p = np.ones_like(t)
    for j in range(k):
        p, p_prev = (t - coeffs.alphas[j]) * p - (coeffs.betas[j] * p_prev if j else 0.0), p
    return p if p.ndim else float(p)


def support_distance(z: complex, support: Tuple[float, float]) -> float:
    """Euclidean distance from ``z`` to the closed support interval."""
    lo, hi = support
    x = min(max(z.real, lo), hi)
    return abs(complex(z) - x)


def _exp_e1_series(w: complex) -> complex:
    # e^w E1(w) = e^w (-gamma - log w - sum_{k>=1} (-w)^k / (k k!))
    total = 0j
    term = 1.0 + 0j
    k = 0
    while True:
        k += 1
        term *= -w / k
        contrib = term / k
        total += contrib
        if abs(contrib) <= 1e-17 * abs(total) or k > 500:
            break
    return cmath.exp(w) * (-EULER_GAMMA - cmath.log(w) - total)


def _exp_e1_cf(w: complex, max_terms: int = 20000) -> complex:
    # Modified Lentz on e^w E1(w) = 1/(w+1- 1/(w+3- 4/(w+5- ...)))
    tiny = 1e-300
    b = w + 1.0
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, max_terms):
        an = -float(i * i)
        b += 2.0
        d = an * d + b
        if d == 0:
            d = tiny
        d = 1.0 / d
        c = b + an / c
        if c == 0:
            c = tiny
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            return h
    raise ConvergenceFailure(f"continued fraction for E1({w}) did not converge")


def _exp_e1_asymptotic(w: complex) -> complex:
    # e^w E1(w) ~ sum (-1)^k k! / w^(k+1); the smallest term is below 1e-16 for |w| >= 40
    total = 0j
    term = 1.0 / w
    k = 0
    while abs(term) > 1e-17 * abs(total + term):
        total += term
        k += 1
        nxt = -term * k / w
        if abs(nxt) >= abs(term):
            break
        term = nxt
    return total


def exp_e1(w: complex) -> complex:
    """``e^w E_1(w)`` for complex ``w`` off the closed negative real axis."""
    w = complex(w)
    r = abs(w)
    if r >= 40.0:
        return _exp_e1_asymptotic(w)
    if w.real > 0 and r > 1.0:
        return _exp_e1_cf(w)
    if r <= 4.0 or abs(w.imag) <= 4.0:
        return _exp_e1_series(w)
    return _exp_e1_cf(w)


def _legendre_cauchy(lo: float, hi: float, z: complex, order: int) -> complex:
    if order == 1:
        # log((hi - z)/(lo - z)) written through atanh to keep accuracy for far z
        w = (hi - lo) / (hi + lo - 2.0 * z)
        if z.imag == 0.0:
            return complex(2.0 * math.atanh(w.real))
        return 2.0 * cmath.atanh(w)
    return 1.0 / (lo - z) - 1.0 / (hi - z)


def _fallback_cauchy(measure, z: complex, order: int, tol: float = 1e-13, cap: int = 4096) -> complex:
    from .eigenquad import base_rule

    previous = None
    n = 64
    while n <= cap:
        rule = base_rule(measure, n)
        value = complex(np.sum(rule.weights / (rule.nodes - z) ** order))
        if previous is not None and abs(value - previous) <= tol * abs(value):
            return value
        previous = value
        n *= 2
    raise ConvergenceFailure(f"Gauss fallback for the Cauchy transform at z={z} did not converge by N={cap}")


def cauchy_transform_zero(measure: BaseMeasure, z: complex, order: int = 1,
                          min_distance: float = 1e-12) -> complex:
    """Return ``rho_0(z) = int d lambda(t) / (t - z)`` (``order=2``: squared denominator).

    Raises :class:`PoleOnSupport` if ``z`` is within ``min_distance`` of the
    closed support.
    """
    z = complex(z)
    if support_distance(z, measure.support) < min_distance:
        raise PoleOnSupport(f"z={z} lies on the support {measure.support} of the measure")
    if order not in (1, 2):
        raise InvalidInput("order must be 1 or 2")
    if measure.kind == "legendre":
        lo, hi = measure.support
        return _legendre_cauchy(lo, hi, z, order)
    if measure.kind == "laguerre":
        rho = exp_e1(-z)
        if z.imag == 0.0:
            rho = complex(rho.real)
        return rho if order == 1 else -rho - 1.0 / z
    return _fallback_cauchy(measure, z, order)
