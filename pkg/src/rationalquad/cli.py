"""Command-line front end: generate rule files, run the worked examples, print tables.

Exit codes: 0 success, 2 invalid input, 3 numerical failure.  On failure a
JSON object ``{"error": ..., "message": ..., "hint": ...}`` goes to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

import numpy as np

from .eigenquad import apply_rule, gauss_rule
from .errors import InvalidInput, RationalQuadError, UnsupportedCase, NonPositiveBeta
from .examples import get_example, integrand_function, pole_preset, reference
from .measures import BaseMeasure
from .partfrac import PoleSet
from .ratgauss import RationalRule, build_disc, build_pf, integrate

EXIT_OK, EXIT_INVALID, EXIT_NUMERICAL = 0, 2, 3

# table id -> (example, [(parameter, [n, ...]), ...], method, m as a function of n, gamma)
TABLES = {
    "3.2": ("i1", [(2.0, [1, 4, 7, 10]), (1.1, [2, 5, 8, 11]), (1.01, [3, 6, 9, 12])],
            "pf", lambda n: 2 * n, True),
    "3.7": ("i3", [(2.0, [2, 5, 8, 11]), (1.1, [2, 6, 10, 14]), (1.01, [2, 6, 10, 14])],
            "pf", lambda n: 2 * n, True),
    "3.8": ("i4", [(None, [1, 5, 10, 15])], "disc", lambda n: 2 * n, False),
    "3.9": ("i5", [(-0.1, [3, 6, 9, 12]), (-1.0, [2, 6, 11, 16]), (-10.0, [2, 6, 11, 16])],
            "auto", lambda n: 2 * n - 1, False),
    "3.10": ("i6", [(None, [2, 8, 14, 20])], "disc", lambda n: 2 * n, False),
}


# ---------------------------------------------------------------- serialization

def measure_to_dict(measure: BaseMeasure) -> dict:
    return {"kind": measure.kind, "a": measure.a, "b": measure.b,
            "interval": list(measure.interval) if measure.interval is not None else None}


def measure_from_dict(data: dict) -> BaseMeasure:
    interval = data.get("interval")
    return BaseMeasure(data["kind"], float(data.get("a", 0.0)), float(data.get("b", 0.0)),
                       tuple(interval) if interval is not None else None)


def rule_to_dict(rule: RationalRule) -> dict:
    doc = {
        "n": rule.n,
        "m": rule.m,
        "measure": measure_to_dict(rule.measure),
        "method": rule.method,
        "poles": rule.poles.to_records(),
        "nodes": [float(v) for v in rule.nodes],
        "weights": [float(v) for v in rule.weights],
    }
    if rule.gamma_n is not None:
        doc["gamma_n"] = float(rule.gamma_n)
        doc["beta_hats"] = [float(v) for v in rule.beta_hats]
    return doc


def rule_from_dict(doc: dict) -> RationalRule:
    beta_hats = doc.get("beta_hats")
    return RationalRule(
        nodes=np.array(doc["nodes"], dtype=float),
        weights=np.array(doc["weights"], dtype=float),
        n=int(doc["n"]),
        m=int(doc["m"]),
        method=doc["method"],
        poles=PoleSet.from_records(doc["poles"]),
        measure=measure_from_dict(doc["measure"]),
        gamma_n=doc.get("gamma_n"),
        beta_hats=np.array(beta_hats, dtype=float) if beta_hats is not None else None,
    )


def load_rule(path: str) -> RationalRule:
    with open(path) as fh:
        return rule_from_dict(json.load(fh))


def load_poles(path: str) -> PoleSet:
    """Read a pole file: a list of ``{"zeta_re", "zeta_im", "multiplicity"}``
    records, or an object holding that list under ``"poles"``."""
    with open(path) as fh:
        data = json.load(fh)
    if isinstance(data, dict):
        data = data.get("poles")
    if not isinstance(data, list):
        raise InvalidInput(f"{path}: expected a list of pole records")
    return PoleSet.from_records(data)


# ---------------------------------------------------------------- building

def build_rule(measure, poles: PoleSet, n: int, m: Optional[int], method: str,
               want_gamma: bool, tol: Optional[float] = None) -> RationalRule:
    """Dispatch to the requested builder; ``auto`` tries pf then disc."""
    disc_kwargs = {} if tol is None else {"tol": tol}
    if method == "pf":
        return build_pf(measure, poles, n, m, want_gamma)
    if method == "disc":
        return build_disc(measure, poles, n, m, want_gamma=want_gamma, **disc_kwargs)
    if method == "auto":
        try:
            return build_pf(measure, poles, n, m, want_gamma)
        except (NonPositiveBeta, UnsupportedCase):
            return build_disc(measure, poles, n, m, want_gamma=want_gamma, **disc_kwargs)
    raise InvalidInput(f"unknown method {method!r}")


def _example_param(args):
    if args.omega is not None and args.eta is not None:
        raise InvalidInput("give at most one of --omega and --eta")
    return args.omega if args.omega is not None else args.eta


def _measure_from_args(args) -> Optional[BaseMeasure]:
    if args.measure is None:
        return None
    interval = tuple(args.interval) if args.interval else None
    if args.measure == "legendre":
        return BaseMeasure.legendre(interval)
    if args.measure == "laguerre":
        return BaseMeasure.laguerre()
    return BaseMeasure.jacobi(args.a, args.b, interval)


def _hint(exc: Exception) -> Optional[str]:
    if isinstance(exc, UnsupportedCase):
        return "use disc"
    if isinstance(exc, NonPositiveBeta):
        return "lower m or use disc"
    return None


# ---------------------------------------------------------------- commands

def run_generate(args) -> int:
    measure = _measure_from_args(args)
    if args.preset:
        if args.poles:
            raise InvalidInput("give either --preset or --poles, not both")
        if args.m is None:
            raise InvalidInput("--preset needs --m")
        poles = pole_preset(args.preset, _example_param(args), args.m)
        if measure is None:
            measure = get_example(args.preset).measure
    elif args.poles:
        poles = load_poles(args.poles)
    else:
        raise InvalidInput("give --preset or --poles")
    if measure is None:
        raise InvalidInput("--measure is required with --poles")
    rule = build_rule(measure, poles, args.n, args.m, args.method, args.gamma, args.tol)
    text = json.dumps(rule_to_dict(rule), indent=1)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


def example_report(name: str, param, n: int, m: int, method: str, want_gamma: bool) -> dict:
    spec = get_example(name)
    poles = pole_preset(name, param, m)
    g = integrand_function(name, param)
    rule = build_rule(spec.measure, poles, n, m, method, want_gamma)
    value = integrate(rule, g)
    gauss_value = apply_rule(gauss_rule(spec.measure.coefficients(n), n), g)
    report = {"name": name, "param": param if spec.param_name else None, "n": n, "m": m,
              "method": rule.method, "value": value, "gauss_value": gauss_value,
              "gamma_n": rule.gamma_n}
    try:
        ref, digits = reference(name, param)
    except InvalidInput:
        ref = digits = None
    report["reference"] = ref
    report["reference_digits"] = digits
    report["error"] = abs(value - ref) / abs(ref) if ref is not None else None
    report["gauss_error"] = abs(gauss_value - ref) / abs(ref) if ref is not None else None
    return report


def _fmt(value, spec="%.3e"):
    return "-" if value is None else spec % value


def run_example(args) -> int:
    spec = get_example(args.name)
    m = args.m if args.m is not None else _default_m(args.name, args.n)
    param = _example_param(args) if spec.param_name else None
    if param is None and spec.param_name:
        param = spec.default_param
    report = example_report(args.name, param, args.n, m, args.method, args.gamma)
    if args.json:
        print(json.dumps(report, indent=1))
        return EXIT_OK
    label = report["name"] if param is None else f"{report['name']}  {spec.param_name}={param:g}"
    print(f"example      {label}")
    print(f"n, m         {report['n']}, {report['m']}  (method {report['method']})")
    print(f"rational     {report['value']!r}")
    print(f"reference    {_fmt(report['reference'], '%.17g')}")
    print(f"rel. error   {_fmt(report['error'])}")
    print(f"gauss        {report['gauss_value']!r}")
    print(f"gauss error  {_fmt(report['gauss_error'])}")
    if report["gamma_n"] is not None:
        print(f"gamma_n      {report['gamma_n']:.3e}")
    return EXIT_OK


def _default_m(name: str, n: int) -> int:
    if name == "i5":
        return 2 * n - 1
    if name == "i6":
        return 2 * n if n % 2 == 0 else 2 * n - 2
    return 2 * n


def table_rows(table_id: str):
    if table_id not in TABLES:
        raise InvalidInput(f"unknown table {table_id!r}; choose from {sorted(TABLES)}")
    name, blocks, method, m_of, want_gamma = TABLES[table_id]
    rows = []
    for param, ns in blocks:
        for n in ns:
            rows.append(example_report(name, param, n, m_of(n), method, want_gamma))
    return rows


def run_table(args) -> int:
    rows = table_rows(args.id)
    if args.json:
        print(json.dumps(rows, indent=1))
        return EXIT_OK
    print(f"{'param':>7} {'n':>3} {'m':>3} {'method':>6} {'rational':>24} {'rel.err':>10} "
          f"{'gamma_n':>10} {'gauss err':>10}")
    for r in rows:
        param = "-" if r["param"] is None else f"{r['param']:g}"
        print(f"{param:>7} {r['n']:>3} {r['m']:>3} {r['method']:>6} {r['value']:>24.17g} "
              f"{_fmt(r['error']):>10} {_fmt(r['gamma_n']):>10} {_fmt(r['gauss_error']):>10}")
    return EXIT_OK


# ---------------------------------------------------------------- entry point

def _add_param_flags(p):
    p.add_argument("--omega", type=float, help="example parameter omega (i1, i2, i3)")
    p.add_argument("--eta", type=float, help="example parameter eta (i5)")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rationalquad",
                                     description="Gauss quadrature rules exact for prescribed poles.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="build a rule and write it as JSON")
    gen.add_argument("--measure", choices=["legendre", "laguerre", "jacobi"])
    gen.add_argument("--a", type=float, default=0.0, help="Jacobi exponent at the right end")
    gen.add_argument("--b", type=float, default=0.0, help="Jacobi exponent at the left end")
    gen.add_argument("--interval", type=float, nargs=2, metavar=("LO", "HI"))
    gen.add_argument("--preset", choices=["i1", "i2", "i3", "i4", "i5", "i6"])
    gen.add_argument("--poles", help="JSON pole file")
    _add_param_flags(gen)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--m", type=int)
    gen.add_argument("--method", choices=["pf", "disc", "auto"], default="auto")
    gen.add_argument("--gamma", action="store_true", help="also compute the error constant")
    gen.add_argument("--tol", type=float, help="discretization tolerance")
    gen.add_argument("--output", "-o", help="output file (default stdout)")
    gen.set_defaults(func=run_generate)

    ex = sub.add_parser("example", help="run a worked example against classical Gauss")
    ex.add_argument("--name", required=True, choices=["i1", "i2", "i3", "i4", "i5", "i6"])
    _add_param_flags(ex)
    ex.add_argument("--n", type=int, required=True)
    ex.add_argument("--m", type=int)
    ex.add_argument("--method", choices=["pf", "disc", "auto"], default="auto")
    ex.add_argument("--gamma", action="store_true")
    ex.add_argument("--json", action="store_true")
    ex.set_defaults(func=run_example)

    tab = sub.add_parser("table", help="regenerate a results table")
    tab.add_argument("--id", required=True, choices=sorted(TABLES))
    tab.add_argument("--json", action="store_true")
    tab.set_defaults(func=run_table)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except RationalQuadError as exc:
        code = EXIT_INVALID if isinstance(exc, InvalidInput) else EXIT_NUMERICAL
        payload = {"error": type(exc).__name__, "message": str(exc), "hint": _hint(exc)}
        print(json.dumps(payload), file=sys.stderr)
        return code
    except OSError as exc:
        print(json.dumps({"error": "OSError", "message": str(exc), "hint": None}), file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
