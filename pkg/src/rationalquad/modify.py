"""Modification of recurrence coefficients.

Given the coefficients of a measure ``d lambda`` this module produces the
coefficients of

* ``d lambda / (t - x)``                (:func:`divide_linear`, x real off support),
* ``d lambda / ((t - x)^2 + y^2)``      (:func:`divide_quadratic`),
* ``(c + d t) d lambda``                (:func:`multiply_linear`).

Division is driven by the Cauchy moments ``rho_k(z) = int pi_k(t) d lambda(t)/(t - z)``,
the minimal solution of the three-term recurrence of ``d lambda``, computed
by backward recurrence and fed to the modified Chebyshev algorithm.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numba
import numpy as np

from .errors import ConvergenceFailure, InvalidInput, NonPositiveBeta, PoleOnSupport
from .measures import RecurrenceCoefficients, support_distance

DEFAULT_TOL = 1e-13
MAX_START_INDEX = 2 ** 20
MIN_POLE_DISTANCE = 1e-12


@dataclass(frozen=True)
class CauchyMoments:
    """Moments ``rho_0..rho_{count-1}`` at ``z``; ``ratios[k] = rho_{k+1}/rho_k``.

    ``start_index_used`` is the smallest start index found to reproduce the
    moments to the requested tolerance; the stored values come from the
    verification run started at ``start_index_run``.
    """

    z: complex
    rhos: np.ndarray
    ratios: np.ndarray
    start_index_used: int
    start_index_run: int


@numba.njit(cache=True)
def _backward_ratios(alphas, betas, z, k0, count):
    # r_k = rho_k / rho_{k-1} = beta_k / (z - alpha_k - r_{k+1}),  r_{k0+1} = 0
    out = np.empty(count, dtype=np.complex128)
    r = 0j
    for k in range(k0, 0, -1):
        r = betas[k] / (z - alphas[k] - r)
        if k <= count:
            out[k - 1] = r
    return out


def _ratios_from_start(measure, z: complex, count: int, k0: int) -> np.ndarray:
    coeffs = measure.coefficients(k0 + 1)
    return _backward_ratios(coeffs.alphas, coeffs.betas, complex(z), k0, count)


def _ratio_change(trial: np.ndarray, reference: np.ndarray) -> float:
    # cumulative relative change of the ratios bounds the relative change of every moment
    rel = np.abs(trial - reference) / np.maximum(np.abs(reference), np.finfo(float).tiny)
    return float(np.sum(rel))


def backward_cauchy_moments(measure, z: complex, count: int, tol: float = DEFAULT_TOL,
                            start: int | None = None) -> CauchyMoments:
    """Cauchy moments ``rho_k(z)``, ``k < count``, by backward recurrence.

    The recurrence ``rho_{k+1} = (z - alpha_k) rho_k - beta_k rho_{k-1}`` is
    run downward in ratio form from a trial index ``k0`` and normalized by
    ``measure.cauchy(z)``.  ``k0`` is doubled until the requested moments
    change by less than ``tol`` (relative).  The moments of the final
    (larger) run are returned.  The accepted ``k0`` is lowered by bisection
    to the smallest start index whose moments agree with those to ``tol``;
    that index is reported as ``start_index_used``.

    Moments too large for binary64 come back as ``inf``; the ratios stay
    finite.
    """
    z = complex(z)
    if count < 1:
        raise InvalidInput("count must be positive")
    if tol <= 0:
        raise InvalidInput("tol must be positive")
    if support_distance(z, measure.support) < MIN_POLE_DISTANCE:
        raise PoleOnSupport(f"z={z} lies on the support {measure.support}")
    rho0 = complex(measure.cauchy(z))
    # one extra ratio so ratios[count-1] (needed by the ratio strategy) is converged too
    k0 = start if start is not None else max(2 * count, count + 20)
    ratios = _ratios_from_start(measure, z, count + 1, k0)
    while True:
        if 2 * k0 > MAX_START_INDEX:
            raise ConvergenceFailure(
                f"backward recurrence at z={z} did not settle before k0={MAX_START_INDEX}")
        ratios2 = _ratios_from_start(measure, z, count + 1, 2 * k0)
        change = _ratio_change(ratios, ratios2)
        if not np.isfinite(change):
            raise ConvergenceFailure(f"backward recurrence at z={z} produced non-finite values")
        if change < tol:
            break
        k0 *= 2
        ratios = ratios2
    lo, hi = count, k0
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _ratio_change(_ratios_from_start(measure, z, count + 1, mid), ratios2) < tol:
            hi = mid
        else:
            lo = mid
    return CauchyMoments(z, _moments_from_ratios(rho0, ratios2, count), ratios2[:count], hi, 2 * k0)


def _moments_from_ratios(rho0: complex, ratios: np.ndarray, count: int) -> np.ndarray:
    rhos = np.empty(count, dtype=complex)
    rhos[0] = rho0
    with np.errstate(over="ignore", invalid="ignore"):
        rhos[1:] = rho0 * np.cumprod(ratios[: count - 1])
    return rhos


def cauchy_moments_from_start(measure, z: complex, count: int, start: int) -> np.ndarray:
    """Cauchy moments ``rho_k(z)``, ``k < count``, from one backward run started at ``start``.

    No convergence check; :func:`backward_cauchy_moments` chooses ``start``.
    """
    z = complex(z)
    if count < 1 or start < count:
        raise InvalidInput("need 1 <= count <= start")
    if support_distance(z, measure.support) < MIN_POLE_DISTANCE:
        raise PoleOnSupport(f"z={z} lies on the support {measure.support}")
    ratios = _ratios_from_start(measure, z, count, start)
    return _moments_from_ratios(complex(measure.cauchy(z)), ratios, count)


def _real_moments(moments) -> np.ndarray:
    m = np.asarray(moments)
    if np.iscomplexobj(m):
        if np.any(np.abs(m.imag) > 1e-12 * np.maximum(np.abs(m.real), 1e-300)):
            raise InvalidInput("modified moments must be real")
        m = m.real
    return np.asarray(m, dtype=float)


def modified_chebyshev(aux: RecurrenceCoefficients, modified_moments, n: int,
                       sign: int = 1) -> RecurrenceCoefficients:
    """Recurrence coefficients of a measure from its modified moments.

    ``modified_moments[l] = int p_l(t) d mu(t)`` where ``p_l`` are the monic
    polynomials of ``aux``.  Uses the mixed-moment (sigma) recursion; the
    first ``2n`` moments and ``2n - 1`` auxiliary pairs are needed.
    """
    mom = _real_moments(modified_moments)
    if n < 1:
        raise InvalidInput("n must be positive")
    if len(mom) < 2 * n:
        raise InvalidInput(f"{n} coefficient pairs need {2 * n} modified moments, got {len(mom)}")
    if aux.count < 2 * n - 1:
        raise InvalidInput(f"{n} coefficient pairs need {2 * n - 1} auxiliary pairs, got {aux.count}")
    if mom[0] == 0:
        raise InvalidInput("the zeroth modified moment must be nonzero")
    a = aux.alphas
    b = aux.betas
    size = 2 * n
    alpha = np.empty(n)
    beta = np.empty(n)
    beta[0] = mom[0]
    if not beta[0] > 0:
        raise NonPositiveBeta(f"beta_0 = {beta[0]!r} is not positive", 0, float(beta[0]))
    alpha[0] = a[0] + mom[1] / mom[0]
    sig_older = np.zeros(size)
    sig_old = mom[:size].copy()
    for k in range(1, n):
        ll = np.arange(k, size - k)
        sig = np.zeros(size)
        sig[ll] = (sig_old[ll + 1] - (alpha[k - 1] - a[ll]) * sig_old[ll]
                   - beta[k - 1] * sig_older[ll] + b[ll] * sig_old[ll - 1])
        alpha[k] = a[k] + sig[k + 1] / sig[k] - sig_old[k] / sig_old[k - 1]
        beta[k] = sig[k] / sig_old[k - 1]
        if not beta[k] > 0:
            raise NonPositiveBeta(f"beta_{k} = {beta[k]!r} is not positive", k, float(beta[k]))
        sig_older, sig_old = sig_old, sig
    return RecurrenceCoefficients(alpha, beta, sign)


def _side_of_support(x: float, support: Tuple[float, float]) -> int:
    """+1 if ``t - x > 0`` on the support, -1 if negative; raises when x is inside."""
    lo, hi = support
    if support_distance(complex(x), support) < MIN_POLE_DISTANCE or lo <= x <= hi:
        raise PoleOnSupport(f"x={x} lies on the support {support}")
    return 1 if x < lo else -1


def _ratio_division(measure, z: complex, n: int, tol: float):
    """Coefficients of ``d lambda / (t - z)`` from the ratios ``rho_k/rho_{k-1}``.

    Works for real or complex ``z`` and real or complex parent coefficients;
    returns complex arrays with ``beta_0 = rho_0`` (no sign normalization).
    """
    cm = backward_cauchy_moments(measure, z, n, tol)
    base = measure.coefficients(n)
    rho0 = cm.rhos[0]
    r = np.concatenate(([-rho0], cm.ratios))  # r[k] = rho_k / rho_{k-1}, r[0] = -rho_0
    alphas = base.alphas[:n] + r[1:n + 1] - np.concatenate(([0.0], r[1:n]))
    betas = np.empty(n, dtype=complex)
    betas[0] = rho0
    betas[1:] = base.betas[:n - 1] * r[1:n] / r[:n - 1]
    return alphas, betas


def _checked_real(alphas, betas, sign: int = 1) -> RecurrenceCoefficients:
    betas = np.real(betas)
    bad = np.flatnonzero(~(betas > 0))
    if bad.size:
        k = int(bad[0])
        raise NonPositiveBeta(f"beta_{k} = {betas[k]!r} is not positive", k, float(betas[k]))
    return RecurrenceCoefficients(np.real(alphas), betas, sign)


def divide_linear(measure, x: float, n: int, strategy: str = "ratios",
                  tol: float = DEFAULT_TOL) -> RecurrenceCoefficients:
    """n pairs for ``d lambda / (t - x)``, x real and off the support.

    The coefficients describe the positive measure ``|d lambda/(t - x)|``;
    the returned ``sign`` is -1 when ``x`` lies to the right of the support.

    ``strategy="ratios"`` (default) builds the coefficients directly from the
    ratios ``rho_k/rho_{k-1}`` of the Cauchy moments; this stays accurate
    for all n.  ``strategy="moments"`` runs the modified Chebyshev algorithm
    on the moments themselves, which loses accuracy as n grows (markedly so
    for unbounded supports).
    """
    x = float(x)
    sign = _side_of_support(x, measure.support)
    if strategy == "moments":
        cm = backward_cauchy_moments(measure, x, 2 * n, tol)
        base = measure.coefficients(2 * n)
        return modified_chebyshev(base, sign * cm.rhos.real, n, sign)
    if strategy == "ratios":
        alphas, betas = _ratio_division(measure, x, n, tol)
        betas[0] *= sign
        return _checked_real(alphas, betas, sign)
    raise InvalidInput(f"unknown strategy {strategy!r}")


@dataclass(frozen=True)
class _ComplexCoefficients:
    alphas: np.ndarray
    betas: np.ndarray

    @property
    def count(self) -> int:
        return len(self.alphas)


class _ComplexDivision:
    """The complex measure ``d lambda / (t - z)`` as a measure-like object."""

    def __init__(self, parent, z: complex, tol: float):
        self.parent = parent
        self.z = complex(z)
        self.tol = tol
        self._coeffs = None
        self._rho_z = complex(parent.cauchy(self.z))

    @property
    def support(self):
        return self.parent.support

    def coefficients(self, count: int) -> _ComplexCoefficients:
        if self._coeffs is None or self._coeffs.count < count:
            size = count if self._coeffs is None else max(count, 2 * self._coeffs.count)
            self._coeffs = _ComplexCoefficients(*_ratio_division(self.parent, self.z, size, self.tol))
        return _ComplexCoefficients(self._coeffs.alphas[:count], self._coeffs.betas[:count])

    def cauchy(self, w: complex, order: int = 1) -> complex:
        if order != 1:
            raise InvalidInput("divided measures support order=1 only")
        w = complex(w)
        return (complex(self.parent.cauchy(w)) - self._rho_z) / (w - self.z)


def divide_quadratic(measure, x: float, y: float, n: int, tol: float = DEFAULT_TOL,
                     strategy: str = "ratios") -> RecurrenceCoefficients:
    """n pairs for the positive measure ``d lambda / ((t - x)^2 + y^2)``, y != 0.

    ``strategy="ratios"`` divides by ``t - z`` and then by ``t - conj(z)``
    (``z = x + iy``), each step in ratio form; ``strategy="moments"`` feeds
    ``Im rho_k(z) / y`` to the modified Chebyshev algorithm.
    """
    y = abs(float(y))
    if y == 0:
        raise InvalidInput("y must be nonzero; use divide_linear_twice for a real double pole")
    z = complex(x, y)
    if strategy == "moments":
        cm = backward_cauchy_moments(measure, z, 2 * n, tol)
        base = measure.coefficients(2 * n)
        return modified_chebyshev(base, cm.rhos.imag / y, n)
    if strategy == "ratios":
        if support_distance(z, measure.support) < MIN_POLE_DISTANCE:
            raise PoleOnSupport(f"z={z} lies on the support {measure.support}")
        alphas, betas = _ratio_division(_ComplexDivision(measure, z, tol), z.conjugate(), n, tol)
        return _checked_real(alphas, betas)
    raise InvalidInput(f"unknown strategy {strategy!r}")


def multiply_linear(base: RecurrenceCoefficients, c: float, d: float, n: int,
                    support: Tuple[float, float] | None = None) -> RecurrenceCoefficients:
    """n pairs for ``(c + d t) d lambda`` (Christoffel modification).

    The root ``-c/d`` must lie off the support; when ``support`` is given
    this is checked, otherwise it is the caller's responsibility.  The
    returned coefficients describe ``|c + d t| d lambda`` with ``sign``
    the sign of ``c + d t`` on the support.
    """
    if d == 0:
        raise InvalidInput("d must be nonzero")
    if base.count < n + 1:
        raise InvalidInput(f"{n} pairs need {n + 1} base pairs, got {base.count}")
    x = -c / d
    a, b = base.alphas, base.betas
    if support is not None:
        lo, hi = support
        if lo <= x <= hi:
            raise InvalidInput(f"root {x} of c + d t lies inside the support {support}")
        side = 1 if x < lo else -1
    else:
        side = 1 if x < a[0] else -1
    # q_k = pi_{k+1}(x) / pi_k(x): dominant solution, forward recurrence is stable
    q = np.empty(n + 1)
    q[0] = x - a[0]
    for k in range(n):
        q[k + 1] = x - a[k + 1] - b[k + 1] / q[k]
    alphas = a[1:n + 1] + q[1:n + 1] - q[:n]
    betas = np.empty(n)
    betas[0] = side * (-q[0]) * b[0] * abs(d)
    betas[1:] = b[1:n] * q[1:n] / q[:n - 1]
    sign = side * (1 if d > 0 else -1)
    bad = np.flatnonzero(~(betas > 0))
    if bad.size:
        k = int(bad[0])
        raise NonPositiveBeta(f"beta_{k} = {betas[k]!r} is not positive", k, float(betas[k]))
    return RecurrenceCoefficients(alphas, betas, sign)


class DividedMeasure:
    """The positive measure ``|d lambda(t) / (t - x)|`` as a measure-like object.

    Coefficients are produced on demand by :func:`divide_linear` on the
    parent, which lets the division be applied a second time (double real
    poles): dividing this measure by ``|t - x|`` gives ``d lambda/(t - x)^2``.
    """

    def __init__(self, parent, x: float, strategy: str = "ratios", tol: float = DEFAULT_TOL):
        self.parent = parent
        self.x = float(x)
        self.strategy = strategy
        self.tol = tol
        self.sign = _side_of_support(self.x, parent.support)
        self._coeffs = None

    @property
    def support(self):
        return self.parent.support

    def coefficients(self, count: int) -> RecurrenceCoefficients:
        if self._coeffs is None or self._coeffs.count < count:
            # grow geometrically so repeated requests stay cheap
            size = count if self._coeffs is None else max(count, 2 * self._coeffs.count)
            self._coeffs = divide_linear(self.parent, self.x, size, self.strategy, self.tol)
        return self._coeffs.truncate(count)

    def cauchy(self, z: complex, order: int = 1) -> complex:
        if order != 1:
            raise InvalidInput("divided measures support order=1 only")
        z = complex(z)
        if z == self.x:
            return self.sign * complex(self.parent.cauchy(z, order=2))
        return self.sign * (complex(self.parent.cauchy(z)) - complex(self.parent.cauchy(self.x))) / (z - self.x)


def divide_linear_twice(measure, x: float, n: int, strategy: str = "ratios",
                        tol: float = DEFAULT_TOL) -> RecurrenceCoefficients:
    """n pairs for the positive measure ``d lambda / (t - x)^2``."""
    coeffs = divide_linear(DividedMeasure(measure, x, strategy, tol), x, n, strategy, tol)
    # the side-of-support sign enters twice and cancels
    return RecurrenceCoefficients(coeffs.alphas, coeffs.betas, 1)
