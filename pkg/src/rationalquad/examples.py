"""Worked example integrals: pole presets, guarded integrands, reference values.

===== =============================================== ================ ==========
name  integral                                        measure          parameter
===== =============================================== ================ ==========
i1    int_{-1}^{1} (pi t/w) / sin(pi t/w) dt          Legendre         w > 1
i2    int_0^1 (1-t)^{-1/2} Gamma(1+t) / (t+w) dt      Jacobi on [0,1]  0 < w < 1
i3    int_{-1}^{1} ((pi t/w) / sin(pi t/w))^2 dt      Legendre         w > 1
i4    int_0^inf t/(e^t-1) e^{-t} dt                   Laguerre         none
i5    int_0^inf t/(e^{t-eta}-1) e^{-t} dt             Laguerre         eta < 0
i6    int_0^inf (t/(e^t-1))^2 e^{-t} dt               Laguerre         none
===== =============================================== ================ ==========

The integrand ``g`` returned by :func:`integrand` excludes the measure's
weight function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import InvalidInput, NonFiniteValue
from .measures import BaseMeasure
from .partfrac import Case, PoleSet


@dataclass(frozen=True)
class ExampleSpec:
    name: str
    measure: BaseMeasure
    case: Case
    param_name: Optional[str]
    default_param: Optional[float]
    description: str


EXAMPLES = {
    "i1": ExampleSpec("i1", BaseMeasure.legendre(), Case.CASE1, "omega", 2.0,
                      "(pi t/w)/sin(pi t/w) on [-1,1]"),
    "i2": ExampleSpec("i2", BaseMeasure.jacobi(-0.5, 0.0, (0.0, 1.0)), Case.CASE1, "omega", 0.5,
                      "Gamma(1+t)/(t+w) against (1-t)^(-1/2) on [0,1]"),
    "i3": ExampleSpec("i3", BaseMeasure.legendre(), Case.CASE3, "omega", 2.0,
                      "((pi t/w)/sin(pi t/w))^2 on [-1,1]"),
    "i4": ExampleSpec("i4", BaseMeasure.laguerre(), Case.CASE2, None, None,
                      "t/(e^t-1) against e^-t"),
    "i5": ExampleSpec("i5", BaseMeasure.laguerre(), Case.CASE2P, "eta", -1.0,
                      "t/(e^(t-eta)-1) against e^-t"),
    "i6": ExampleSpec("i6", BaseMeasure.laguerre(), Case.CASE4, None, None,
                      "(t/(e^t-1))^2 against e^-t"),
}


def get_example(name: str) -> ExampleSpec:
    try:
        return EXAMPLES[name]
    except KeyError:
        raise InvalidInput(f"unknown example {name!r}; choose from {sorted(EXAMPLES)}") from None


def _resolve_param(spec: ExampleSpec, param):
    if spec.param_name is None:
        if param is not None:
            raise InvalidInput(f"{spec.name} takes no parameter")
        return None
    value = spec.default_param if param is None else float(param)
    if spec.name in ("i1", "i3") and not value > 1:
        raise InvalidInput(f"{spec.name} needs omega > 1, got {value}")
    if spec.name == "i2" and not 0 < value < 1:
        raise InvalidInput(f"i2 needs 0 < omega < 1, got {value}")
    if spec.name == "i5" and not value < 0:
        raise InvalidInput(f"i5 needs eta < 0, got {value}")
    return value


def _alternating_xis(omega: float, count: int):
    # poles of pi t/sin(pi t/w) nearest the origin: -w, w, -2w, 2w, ...
    return [(-1) ** nu / (omega * ((nu + 1) // 2)) for nu in range(1, count + 1)]


def _imaginary_pairs(count: int, multiplicity: int):
    # poles of t/(e^t - 1) at +-2 nu pi i
    entries = []
    for nu in range(1, count + 1):
        eta = 1.0 / (2.0 * nu * math.pi)
        entries += [(complex(0.0, eta), multiplicity), (complex(0.0, -eta), multiplicity)]
    return entries


def pole_preset(name: str, param=None, m: int = 2) -> PoleSet:
    """Pole set of total multiplicity ``m`` matching the poles of example ``name``
    closest to the support."""
    spec = get_example(name)
    value = _resolve_param(spec, param)
    if int(m) != m or m < 1:
        raise InvalidInput(f"m must be a positive integer, got {m}")
    m = int(m)
    if name == "i1":
        if m % 2:
            raise InvalidInput("i1 needs even m")
        return PoleSet([(xi, 1) for xi in _alternating_xis(value, m)])
    if name == "i2":
        xis = [1.0 / value] + [1.0 / (nu - 1) for nu in range(2, m + 1)]
        return PoleSet([(xi, 1) for xi in xis])
    if name == "i3":
        if m % 2:
            raise InvalidInput("i3 needs even m (double poles)")
        return PoleSet([(xi, 2) for xi in _alternating_xis(value, m // 2)])
    if name == "i4":
        if m % 2:
            raise InvalidInput("i4 needs even m (conjugate pairs)")
        return PoleSet(_imaginary_pairs(m // 2, 1))
    if name == "i5":
        if m % 2 == 0:
            raise InvalidInput("i5 needs odd m (one real pole plus conjugate pairs)")
        entries = [(-1.0 / value, 1)]
        for nu in range(1, (m - 1) // 2 + 1):
            r = value * value + 4.0 * nu * nu * math.pi ** 2
            xi, eta = -value / r, 2.0 * nu * math.pi / r
            entries += [(complex(xi, eta), 1), (complex(xi, -eta), 1)]
        return PoleSet(entries)
    if m % 4:
        raise InvalidInput("i6 needs m divisible by 4 (double conjugate pairs)")
    return PoleSet(_imaginary_pairs(m // 4, 2))


def _x_over_sin(x: float) -> float:
    if abs(x) < 1e-8:
        return 1.0 + x * x / 6.0
    return x / math.sin(x)


def _t_over_expm1(t: float) -> float:
    if abs(t) < 1e-8:
        return 1.0 - 0.5 * t
    if t > 700.0:
        return t * math.exp(-t)
    return t / math.expm1(t)


def integrand(name: str, t: float, param=None) -> float:
    """Value of example ``name``'s integrand (without the measure weight) at ``t``."""
    spec = get_example(name)
    value = _resolve_param(spec, param)
    lo, hi = spec.measure.support
    t = float(t)
    if not lo <= t <= hi:
        raise NonFiniteValue(f"t={t} lies outside the support [{lo}, {hi}] of {name}")
    if name == "i1":
        return _x_over_sin(math.pi * t / value)
    if name == "i2":
        return math.gamma(1.0 + t) / (t + value)
    if name == "i3":
        return _x_over_sin(math.pi * t / value) ** 2
    if name == "i4":
        return _t_over_expm1(t)
    if name == "i5":
        s = t - value
        return t * math.exp(-s) if s > 700.0 else t / math.expm1(s)
    return _t_over_expm1(t) ** 2


def integrand_function(name: str, param=None):
    """``integrand`` bound to one example and parameter, as ``g(t)``."""
    spec = get_example(name)
    value = _resolve_param(spec, param)
    return lambda t: integrand(name, t, value)


# (name, parameter) -> (decimal string, trusted significant digits)
_REFERENCES = {
    ("i1", 2.0): ("2.332487232246550241107076", 25),
    ("i1", 1.1): ("4.467773646387765789236123", 25),
    ("i1", 1.01): ("8.430184580470842058971264", 25),
    ("i2", 0.5): ("1.750120591261335415394610", 25),
    ("i3", 2.0): ("2.772588722239781237668928", 25),
    ("i3", 1.1): ("16.53281773846041830155898", 25),
    ("i3", 1.01): ("188.6747842249941742708325", 25),
    ("i4", None): ("0.6449340668482264364724152", 25),
    ("i5", -0.1): ("0.45019361444134784096", 20),
    ("i5", -1.0): ("0.1111093516052317320105065", 25),
    ("i5", -10.0): ("1.135021146353905701870968e-5", 25),
    ("i6", None): ("0.4816405210580757313458777", 25),
}


def _lookup(name, param):
    spec = get_example(name)
    value = _resolve_param(spec, param)
    try:
        return _REFERENCES[(name, value)]
    except KeyError:
        raise InvalidInput(f"no reference value for {name} with {spec.param_name}={value}") from None


def reference(name: str, param=None):
    """Return ``(value, digits)``: best known value as a float and its trusted digit count."""
    text, digits = _lookup(name, param)
    return float(text), digits


def reference_text(name: str, param=None) -> str:
    """Reference value as its full decimal string."""
    return _lookup(name, param)[0]


def cataloged():
    """All (name, parameter) pairs with a reference value."""
    return list(_REFERENCES)
