"""Pole sets, their classification, and partial fractions of ``1/omega_m``.

A pole set is a list of parameters ``zeta`` with multiplicities ``s``;
the rule built from it integrates ``(1 + zeta t)^{-j}``, ``j <= s``, exactly,
i.e. it matches poles at ``-1/zeta``.  Complex parameters come in conjugate
pairs so that

    omega_m(t) = prod (1 + zeta t)^s

is a real polynomial of degree ``m = sum s``.

The partial fraction terms are stored in pole-location form: a simple real
term ``c/(t - x)``, a double real term ``c/(t - x) + d/(t - x)^2`` and a
quadratic term ``(c + d t)/((t - x)^2 + y^2)``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Sequence, Tuple

import numpy as np

from .errors import InvalidInput, PoleOnSupport

HARD_DISTANCE = 1e-10
SOFT_DISTANCE = 1e-2
_CONJ_TOL = 1e-14


class Case(str, Enum):
    CASE1 = "Case1"      # simple real poles
    CASE2 = "Case2"      # simple conjugate complex pairs
    CASE2P = "Case2p"    # complex pairs plus one simple real pole
    CASE3 = "Case3"      # real double poles
    CASE3P = "Case3p"    # real double poles plus one simple real pole
    CASE4 = "Case4"      # double conjugate complex pairs
    UNSUPPORTED = "Unsupported"
    EMPTY = "Empty"


@dataclass(frozen=True)
class PoleSet:
    """Parameters ``zeta`` with multiplicities, validated for conjugate closure."""

    entries: Tuple[Tuple[complex, int], ...]

    def __init__(self, entries: Sequence[Tuple[complex, int]] = ()):
        cleaned = []
        for zeta, s in entries:
            zeta = complex(zeta)
            if int(s) != s or s < 1:
                raise InvalidInput(f"multiplicity must be a positive integer, got {s}")
            if zeta == 0:
                raise InvalidInput("zeta = 0 is not allowed (no pole)")
            if abs(zeta.imag) <= _CONJ_TOL * abs(zeta):
                zeta = complex(zeta.real, 0.0)
            cleaned.append((zeta, int(s)))
        for i, (zi, _) in enumerate(cleaned):
            for zj, _ in cleaned[i + 1:]:
                if abs(zi - zj) <= 1e-14 * max(abs(zi), abs(zj)):
                    raise InvalidInput(f"duplicate pole parameter {zi}")
        for zeta, s in cleaned:
            if zeta.imag != 0.0:
                mate = [sj for zj, sj in cleaned
                        if abs(zj - zeta.conjugate()) <= 1e-12 * abs(zeta)]
                if not mate:
                    raise InvalidInput(f"complex parameter {zeta} has no conjugate partner")
                if mate[0] != s:
                    raise InvalidInput(f"conjugate pair {zeta} has unequal multiplicities")
        object.__setattr__(self, "entries", tuple(cleaned))

    @classmethod
    def from_records(cls, records, complete_conjugates: bool = False) -> "PoleSet":
        """Build from ``{"zeta_re", "zeta_im", "multiplicity"}`` records.

        With ``complete_conjugates`` a missing conjugate partner is added.
        """
        entries = []
        for rec in records:
            zeta = complex(float(rec["zeta_re"]), float(rec.get("zeta_im", 0.0)))
            entries.append((zeta, int(rec.get("multiplicity", 1))))
        if complete_conjugates:
            extra = []
            for zeta, s in entries:
                if zeta.imag != 0 and not any(abs(z - zeta.conjugate()) <= 1e-12 * abs(zeta)
                                              for z, _ in entries + extra):
                    extra.append((zeta.conjugate(), s))
            entries += extra
        return cls(entries)

    def to_records(self) -> List[dict]:
        return [{"zeta_re": z.real, "zeta_im": z.imag, "multiplicity": s} for z, s in self.entries]

    @property
    def m(self) -> int:
        return sum(s for _, s in self.entries)

    @property
    def zetas(self) -> List[complex]:
        return [z for z, _ in self.entries]

    def __len__(self):
        return len(self.entries)

    def poles(self) -> List[complex]:
        return [-1.0 / z for z, _ in self.entries]

    def upper_pairs(self) -> List[Tuple[complex, int]]:
        """Complex entries with positive imaginary part (one per conjugate pair)."""
        return [(z, s) for z, s in self.entries if z.imag > 0]

    def real_entries(self) -> List[Tuple[float, int]]:
        return [(z.real, s) for z, s in self.entries if z.imag == 0]


def _distance_to_support(p: complex, support) -> float:
    lo, hi = support
    x = min(max(p.real, lo), hi)
    return abs(p - x)


def check_admissible(poles: PoleSet, support, hard: float = HARD_DISTANCE,
                     soft: float = SOFT_DISTANCE) -> None:
    """Raise :class:`PoleOnSupport` when ``1 + zeta t`` vanishes on (or next to) the support."""
    for zeta, _ in poles.entries:
        dist = _distance_to_support(-1.0 / zeta, support)
        if dist <= hard:
            raise PoleOnSupport(f"pole {-1.0 / zeta} (zeta={zeta}) lies on the support {support}")
        if dist < soft:
            warnings.warn(f"pole {-1.0 / zeta} is within {dist:.3g} of the support; "
                          "rule generation may be slow or ill-conditioned", RuntimeWarning,
                          stacklevel=3)


def classify(poles: PoleSet, support) -> Case:
    """Return the pole case, validating admissibility against ``support``."""
    if len(poles) == 0:
        return Case.EMPTY
    check_admissible(poles, support)
    reals = poles.real_entries()
    pairs = poles.upper_pairs()
    mults = {s for _, s in poles.entries}
    if any(s > 2 for s in mults):
        return Case.UNSUPPORTED
    real_simple = [x for x, s in reals if s == 1]
    real_double = [x for x, s in reals if s == 2]
    pair_mults = {s for _, s in pairs}
    if not pairs:
        if not real_double:
            return Case.CASE1
        if not real_simple:
            return Case.CASE3
        if len(real_simple) == 1:
            return Case.CASE3P
        return Case.UNSUPPORTED
    if real_double:
        return Case.UNSUPPORTED
    if pair_mults == {1}:
        if not real_simple:
            return Case.CASE2
        if len(real_simple) == 1:
            return Case.CASE2P
        return Case.UNSUPPORTED
    if pair_mults == {2} and not real_simple:
        return Case.CASE4
    return Case.UNSUPPORTED


def omega_eval(poles: PoleSet, t):
    """``omega_m(t) = prod (1 + zeta t)^s`` (real; scalar or array ``t``)."""
    t = np.asarray(t, dtype=float)
    value = np.ones_like(t, dtype=complex)
    for zeta, s in poles.entries:
        value = value * (1.0 + zeta * t) ** s
    out = value.real
    return out if out.ndim else float(out)


@dataclass
class PartialFractionTerms:
    simple_real: List[Tuple[float, float]] = field(default_factory=list)
    double_real: List[Tuple[float, float, float]] = field(default_factory=list)
    quadratic: List[Tuple[float, float, float, float]] = field(default_factory=list)

    def evaluate(self, t):
        """Sum of all terms at ``t`` (reconstructs ``1/omega_m``)."""
        t = np.asarray(t, dtype=float)
        total = np.zeros_like(t)
        for x, c in self.simple_real:
            total = total + c / (t - x)
        for x, c, d in self.double_real:
            total = total + c / (t - x) + d / (t - x) ** 2
        for x, y, c, d in self.quadratic:
            total = total + (c + d * t) / ((t - x) ** 2 + y * y)
        return total if total.ndim else float(total)

    def __len__(self):
        return len(self.simple_real) + len(self.double_real) + len(self.quadratic)


def _require_distinct(values, what="xi"):
    values = list(values)
    for i, v in enumerate(values):
        if v == 0:
            raise InvalidInput(f"{what} values must be nonzero")
        for w in values[i + 1:]:
            if v == w:
                raise InvalidInput(f"duplicate {what} value {v}")


def pf_case1(xis: Sequence[float]) -> PartialFractionTerms:
    """``1/prod(1 + xi t) = sum c/(t - x)``, ``x = -1/xi``."""
    xis = [float(v) for v in xis]
    _require_distinct(xis)
    m = len(xis)
    terms = PartialFractionTerms()
    for nu, xv in enumerate(xis):
        denom = math.prod(xv - xm for mu, xm in enumerate(xis) if mu != nu)
        terms.simple_real.append((-1.0 / xv, xv ** (m - 2) / denom))
    return terms


def _pair_products(xis, etas) -> List[complex]:
    # p_nu = prod_{mu != nu} (xi_nu + i eta_nu)^2 / ((xi_nu - xi_mu)^2 - (eta_nu^2 - eta_mu^2) + 2i eta_nu (xi_nu - xi_mu))
    out = []
    for nu, (xv, ev) in enumerate(zip(xis, etas)):
        zeta = complex(xv, ev)
        p = 1 + 0j
        for mu, (xm, em) in enumerate(zip(xis, etas)):
            if mu == nu:
                continue
            dx = xv - xm
            p *= zeta * zeta / complex(dx * dx - (ev * ev - em * em), 2.0 * ev * dx)
        out.append(p)
    return out


def _quadratic_term(xv: float, ev: float, p: complex) -> Tuple[float, float, float, float]:
    r = xv * xv + ev * ev
    c = (xv / r * p.imag + ev / r * p.real) / ev
    d = p.imag / ev
    # pole at -1/zeta = (-xi + i eta)/r
    return (-xv / r, ev / r, c, d)


def _check_pairs(xis, etas):
    if len(xis) != len(etas):
        raise InvalidInput("xis and etas must have equal length")
    if any(e <= 0 for e in etas):
        raise InvalidInput("eta values must be positive")
    seen = set()
    for pair in zip(xis, etas):
        if pair in seen:
            raise InvalidInput(f"duplicate conjugate pair {pair}")
        seen.add(pair)


def pf_case2(xis: Sequence[float], etas: Sequence[float]) -> PartialFractionTerms:
    """Simple conjugate pairs ``zeta = xi +- i eta``."""
    xis = [float(v) for v in xis]
    etas = [float(v) for v in etas]
    _check_pairs(xis, etas)
    ps = _pair_products(xis, etas)
    return PartialFractionTerms(quadratic=[_quadratic_term(x, e, p) for x, e, p in zip(xis, etas, ps)])


def pf_case2p(xi0: float, xis: Sequence[float], etas: Sequence[float]) -> PartialFractionTerms:
    """Simple conjugate pairs plus the simple real parameter ``xi0``."""
    xi0 = float(xi0)
    if xi0 == 0:
        raise InvalidInput("xi0 must be nonzero")
    xis = [float(v) for v in xis]
    etas = [float(v) for v in etas]
    _check_pairs(xis, etas)
    m = 2 * len(xis) + 1
    c0 = xi0 ** (m - 2) / math.prod((xi0 - x) ** 2 + e * e for x, e in zip(xis, etas))
    terms = PartialFractionTerms(simple_real=[(-1.0 / xi0, c0)])
    for x, e, p in zip(xis, etas, _pair_products(xis, etas)):
        pp = complex(x, e) / complex(x - xi0, e) * p
        terms.quadratic.append(_quadratic_term(x, e, pp))
    return terms


def pf_case3(xis: Sequence[float]) -> PartialFractionTerms:
    """Double real poles: ``1/prod(1 + xi t)^2``."""
    xis = [float(v) for v in xis]
    _require_distinct(xis)
    m = 2 * len(xis)
    terms = PartialFractionTerms()
    for nu, xv in enumerate(xis):
        others = [xm for mu, xm in enumerate(xis) if mu != nu]
        prod_sq = math.prod((xv - xm) ** 2 for xm in others)
        ssum = math.fsum(xm / (xv - xm) for xm in others)
        c = -2.0 * xv ** (m - 3) * ssum / prod_sq
        d = xv ** (m - 4) / prod_sq
        terms.double_real.append((-1.0 / xv, c, d))
    return terms


def pf_case3p(xis: Sequence[float], xi_m: float) -> PartialFractionTerms:
    """Double real poles plus the simple real parameter ``xi_m``."""
    xis = [float(v) for v in xis]
    xi_m = float(xi_m)
    _require_distinct(xis + [xi_m])
    m = 2 * len(xis) + 1
    c_m = xi_m ** (m - 2) / math.prod((xi_m - xv) ** 2 for xv in xis)
    terms = PartialFractionTerms(simple_real=[(-1.0 / xi_m, c_m)])
    for nu, xv in enumerate(xis):
        others = [xm for mu, xm in enumerate(xis) if mu != nu]
        prod_sq = math.prod((xv - xm) ** 2 for xm in others)
        ssum = math.fsum(xm / (xv - xm) for xm in others)
        c = -xv ** (m - 3) * (xi_m + 2.0 * (xv - xi_m) * ssum) / ((xv - xi_m) ** 2 * prod_sq)
        d = xv ** (m - 4) / ((xv - xi_m) * prod_sq)
        terms.double_real.append((-1.0 / xv, c, d))
    return terms


def partial_fractions(poles: PoleSet, case: Case) -> PartialFractionTerms:
    """Dispatch a classified pole set to the matching ``pf_case*`` routine."""
    reals = poles.real_entries()
    pairs = poles.upper_pairs()
    if case == Case.CASE1:
        return pf_case1([x for x, _ in reals])
    if case == Case.CASE2:
        return pf_case2([z.real for z, _ in pairs], [z.imag for z, _ in pairs])
    if case == Case.CASE2P:
        return pf_case2p(reals[0][0], [z.real for z, _ in pairs], [z.imag for z, _ in pairs])
    if case == Case.CASE3:
        return pf_case3([x for x, _ in reals])
    if case == Case.CASE3P:
        simple = [x for x, s in reals if s == 1][0]
        return pf_case3p([x for x, s in reals if s == 2], simple)
    raise InvalidInput(f"no partial fraction decomposition for {case.value}")
