"""Gauss rules from recurrence coefficients (Golub-Welsch) and rule application."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numba
import numpy as np

from .errors import EigensolverFailure, InvalidInput, NonFiniteValue, NonPositiveBeta
from .measures import RecurrenceCoefficients

MAX_SWEEPS = 30


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        nodes = np.array(self.nodes, dtype=float)
        weights = np.array(self.weights, dtype=float)
        if nodes.shape != weights.shape or nodes.ndim != 1:
            raise InvalidInput("nodes and weights must be 1-d arrays of equal length")
        nodes.flags.writeable = False
        weights.flags.writeable = False
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    def __len__(self):
        return len(self.nodes)


@numba.njit(cache=True)
def _imtql(d, e, z, max_sweeps):
    """Implicit-shift QL on a symmetric tridiagonal matrix.

    ``d`` holds the diagonal, ``e[:-1]`` the off-diagonal (``e[-1]`` unused),
    ``z`` the first row of the accumulated eigenvector matrix.  Everything is
    overwritten in place.  Returns -1 on success, else the index of the
    eigenvalue that exhausted its sweep budget.
    """
    n = d.shape[0]
    eps = 2.220446049250313e-16
    e[n - 1] = 0.0
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= eps * dd:
                    break
                m += 1
            if m == l:
                break
            if it == max_sweeps:
                return l
            it += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + (r if g >= 0.0 else -r))
            s = 1.0
            c = 1.0
            p = 0.0
            underflow = False
            i = m - 1
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                f = z[i + 1]
                z[i + 1] = s * z[i] + c * f
                z[i] = c * z[i] - s * f
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return -1


def gauss_rule(coeffs: RecurrenceCoefficients, n: int) -> QuadratureRule:
    """n-point Gauss rule of the measure whose coefficients are ``coeffs``.

    The weights carry ``coeffs.sign``, so a rule built from the coefficients
    of ``|d mu|`` integrates against the signed target ``d mu``.
    """
    if n < 1:
        raise InvalidInput("n must be positive")
    if coeffs.count < n:
        raise InvalidInput(f"{n}-point rule needs {n} coefficient pairs, got {coeffs.count}")
    betas = coeffs.betas[:n]
    bad = np.flatnonzero(~(betas > 0))
    if bad.size:
        k = int(bad[0])
        raise NonPositiveBeta(f"beta_{k} = {betas[k]!r} is not positive", k, float(betas[k]))
    d = np.array(coeffs.alphas[:n], dtype=float)
    e = np.zeros(n)
    e[: n - 1] = np.sqrt(betas[1:n])
    z = np.zeros(n)
    z[0] = 1.0
    failed = _imtql(d, e, z, MAX_SWEEPS)
    if failed >= 0:
        raise EigensolverFailure(f"QL iteration exceeded {MAX_SWEEPS} sweeps for eigenvalue {failed}")
    order = np.argsort(d, kind="stable")
    weights = coeffs.sign * betas[0] * z[order] ** 2
    return QuadratureRule(d[order], weights)


@lru_cache(maxsize=128)
def base_rule(measure, n: int) -> QuadratureRule:
    """Cached n-point Gauss rule of a (hashable) base measure."""
    return gauss_rule(measure.coefficients(n), n)


def apply_rule(rule: QuadratureRule, f) -> float:
    """Return ``sum_k w_k f(t_k)`` with compensated summation.

    ``f`` is called once per node with a float argument.
    """
    values = np.array([f(float(t)) for t in rule.nodes], dtype=float)
    if not np.all(np.isfinite(values)):
        bad = int(np.flatnonzero(~np.isfinite(values))[0])
        raise NonFiniteValue(f"integrand is not finite at node {rule.nodes[bad]!r}")
    return math.fsum(rule.weights * values)
