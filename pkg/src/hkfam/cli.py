"""``hk``: figure data, verification suites and point evaluations.

::

    hk figure fig1 --out fig1.csv
    hk check all --out report.json
    hk eval psi p=0 omega=0.8 --provider flat
    hk eval green --d 3 --m2 1 --sigma 0.5
"""
import argparse
import json
import math
import os
import sys

from . import coeffs, green as gr, hankel, psiphi, qfuncs, specfun, transforms as tr
from ._series import ConvergenceError, ParameterError, PoleError, SeriesValue
from .checks import SUITES, run_suite
from .figures import FIGURES, figure_data

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


class ConfigError(Exception):
    pass


def _fmt(x):
    return "nan" if math.isnan(x) else "%.17g" % x


def _jsonable(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None
    return x


# -- eval registry -----------------------------------------------------------
# name -> (required keys, optional keys with defaults, function(args, provider))

def _green_exp(a, prov):
    return gr.GreenExpansion(int(a["d"]), float(a["m2"]), prov)


def _green(a, prov):
    exp = _green_exp(a, prov)
    if a["cutoff"] is None:
        return gr.green(exp, a["sigma"])
    return gr.green_regularized(exp, a["sigma"], gr.CutoffParameter(a["cutoff"]))


def _gn(a, prov):
    if a["parity"] == "odd":
        return tr.g_n_odd(int(a["n"]), a["s"], a["m2"])
    if a["parity"] == "even":
        return tr.g_n_even(int(a["n"]), a["s"], a["m2"])
    raise ConfigError("parity must be odd or even")


def _limits(a, prov):
    f, g = tr.m_to_zero_limits(int(a["n"]), a["s"], a["parity"])
    return {"f": f, "g": g}


REGISTRY = {
    "gamma": (("x",), {}, lambda a, p: specfun.gamma(a["x"])),
    "rgamma": (("x",), {}, lambda a, p: specfun.recip_gamma(a["x"])),
    "harmonic": (("z",), {}, lambda a, p: specfun.harmonic(a["z"])),
    "besselj": (("order", "x"), {}, lambda a, p: specfun.bessel_j(int(a["order"]), a["x"])),
    "k0": (("x",), {}, lambda a, p: specfun.bessel_k0(a["x"])),
    "hyp1f1": (("a", "b", "x"), {}, lambda a, p: specfun.hyp1f1_report(a["a"], a["b"], a["x"])),
    "hyp0f2": (("b1", "b2", "z"), {}, lambda a, p: specfun.hyp0f2_report(a["b1"], a["b2"], a["z"])),
    "epsd": (("n", "x"), {}, lambda a, p: specfun.hyp1f1_eps_derivative(int(a["n"]), a["x"])),
    "gint": (("p", "k"), {}, lambda a, p: coeffs.g_int(int(a["p"]), int(a["k"]))),
    "ghalf": (("p", "k"), {}, lambda a, p: coeffs.g_half(a["p"], int(a["k"]))),
    "gtilde": (("k", "n"), {}, lambda a, p: coeffs.g_tilde(int(a["k"]), int(a["n"]))),
    "a": (("k",), {}, lambda a, p: coeffs.seeley_dewitt(p, int(a["k"]))),
    "psi": (("p", "omega"), {},
            lambda a, p: psiphi.psi(p, coeffs.FamilyIndex.of(a["p"]), a["omega"])),
    "phi": (("k", "omega"), {}, lambda a, p: psiphi.phi(p, int(a["k"]), a["omega"])),
    "kwave": (("d", "omega", "tau"), {},
              lambda a, p: psiphi.kwave_sum(p, int(a["d"]), a["omega"], a["tau"])),
    "omega": (("d", "omega", "tau"), {},
              lambda a, p: psiphi.omega_series(p, int(a["d"]), a["omega"], a["tau"])),
    "heat": (("d", "m2", "sigma", "tau"), {},
             lambda a, p: psiphi.heat_kernel_series(p, int(a["d"]), a["m2"], a["sigma"], a["tau"])),
    "g19": (("lam", "tau"), {}, lambda a, p: hankel.verify_g19(a["lam"], a["tau"])),
    "fn": (("n", "s", "m2"), {}, lambda a, p: tr.f_n(int(a["n"]), a["s"], a["m2"])),
    "gn": (("n", "s", "m2"), {"parity": "odd"}, _gn),
    "gneg": (("n", "s", "m2"), {}, lambda a, p: tr.g_neg_n_even(int(a["n"]), a["s"], a["m2"])),
    "limits": (("n", "s"), {"parity": "odd"}, _limits),
    "q1": (("s", "sigma"), {}, lambda a, p: qfuncs.q1(a["s"], a["sigma"])),
    "q2": (("s", "sigma"), {}, lambda a, p: qfuncs.q2(a["s"], a["sigma"])),
    "qsum": (("s", "sigma"), {}, lambda a, p: qfuncs.q_sum_oracle(a["s"], a["sigma"])),
    "qd": (("d", "s", "sigma"), {}, lambda a, p: qfuncs.q_d(int(a["d"]), a["s"], a["sigma"])),
    "t": (("omega", "s"), {}, lambda a, p: qfuncs.t_appendix(a["omega"], a["s"])),
    "tquad": (("omega", "s"), {}, lambda a, p: qfuncs.t_quadrature(a["omega"], a["s"])),
    "green": (("d", "m2", "sigma"), {"cutoff": None}, _green),
    "greencf": (("d", "m2", "sigma"), {},
                lambda a, p: gr.green_closed_form(int(a["d"]), a["m2"], a["sigma"])),
    "taylor": (("d", "m2", "sigma", "c"), {},
               lambda a, p: gr.taylor_kernel_transform(_green_exp(a, p), a["c"], a["sigma"])),
    "dimshift": (("d", "k", "m2", "sigma"), {},
                 lambda a, p: gr.dimension_shift_check(int(a["d"]), int(a["k"]), a["m2"], a["sigma"])),
    "theorem-odd": (("d", "m2", "tau", "omega"), {},
                    lambda a, p: tr.verify_theorem_odd(p, int(a["d"]), a["m2"], a["tau"], a["omega"])),
    "theorem-even": (("d", "m2", "tau", "omega"), {},
                     lambda a, p: tr.verify_theorem_even(p, int(a["d"]), a["m2"], a["tau"],
                                                         a["omega"])._asdict()),
    "late-time": (("d", "omega", "n"), {},
                  lambda a, p: tr.verify_late_time_split(p, int(a["d"]), a["omega"], int(a["n"]))),
}

_TEXT_KEYS = {"parity", "provider"}


def _parse_value(key, raw):
    if key in _TEXT_KEYS:
        return raw
    if key == "c":
        return [float(x) for x in raw.split(",")]
    if raw.lower() in ("none", "null"):
        return None
    try:
        return int(raw)
    except ValueError:
        pass
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"{key}={raw!r} is not a number") from None


def _collect_pairs(tokens):
    """``key=value`` and ``--key value`` tokens into a dict."""
    out = {}
    it = iter(tokens)
    for tok in it:
        if tok.startswith("--"):
            key = tok[2:]
            if "=" in key:
                key, val = key.split("=", 1)
            else:
                try:
                    val = next(it)
                except StopIteration:
                    raise ConfigError(f"missing value for --{key}") from None
        elif "=" in tok:
            key, val = tok.split("=", 1)
        else:
            raise ConfigError(f"cannot parse argument {tok!r}")
        key = key.replace("-", "_")
        if key in out:
            raise ConfigError(f"{key} given twice")
        out[key] = val
    return out


def _normalize(result):
    if isinstance(result, dict):
        return {"value": {k: _jsonable(float(v)) for k, v in result.items()},
                "terms_used": None, "converged": True}
    if isinstance(result, (SeriesValue, qfuncs.QEvaluation)):
        return {"value": _jsonable(float(result.value)), "terms_used": result.terms_used,
                "converged": bool(result.converged)}
    if isinstance(result, hankel.QuadratureReport):
        return {"value": _jsonable(result.value), "terms_used": result.panels_used,
                "converged": True}
    return {"value": _jsonable(float(result)), "terms_used": None, "converged": True}


def evaluate(name, raw_args, provider="flat"):
    """Evaluate a registry function; returns the JSON-ready dict."""
    if name not in REGISTRY:
        raise ConfigError(f"unknown function {name!r}; choose from {', '.join(sorted(REGISTRY))}")
    required, optional, fn = REGISTRY[name]
    raw_args = dict(raw_args)
    provider = raw_args.pop("provider", provider)
    unknown = set(raw_args) - set(required) - set(optional)
    if unknown:
        raise ConfigError(f"unknown argument(s) for {name}: {', '.join(sorted(unknown))}")
    missing = [k for k in required if k not in raw_args]
    if missing:
        raise ConfigError(f"missing argument(s) for {name}: {', '.join(missing)}")
    args = dict(optional)
    args.update({k: _parse_value(k, v) for k, v in raw_args.items()})
    prov = coeffs.parse_provider(provider)
    return _normalize(fn(args, prov))


# -- commands ----------------------------------------------------------------

def _write(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def cmd_figure(ns, extra):
    if extra:
        raise ConfigError(f"figure takes no parameters, got {', '.join(extra)}")
    prov, cols, rows = figure_data(ns.name)
    nan_count = sum(1 for r in rows for x in r if math.isnan(x))
    if ns.format == "json":
        doc = {"provenance": prov, "columns": cols,
               "rows": [[_jsonable(x) for x in r] for r in rows]}
        text = json.dumps(doc, indent=1) + "\n"
    else:
        lines = ["# " + prov, ",".join(cols)]
        lines += [",".join(_fmt(x) for x in r) for r in rows]
        text = "\n".join(lines) + "\n"
    _write(text, ns.out)
    if nan_count:
        print(f"warning: {nan_count} non-converged entries written as NaN", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


_CHECK_OVERRIDES = {"max_terms"}


def cmd_check(ns, extra):
    if ns.suite != "all" and ns.suite not in SUITES:
        raise ConfigError(f"unknown suite {ns.suite!r}")
    overrides = _collect_pairs(extra)
    unknown = set(overrides) - _CHECK_OVERRIDES
    if unknown:
        raise ConfigError(f"unknown override(s): {', '.join(sorted(unknown))}")
    if "max_terms" in overrides:
        os.environ["HK_MAX_TERMS"] = str(int(overrides["max_terms"]))
    reports = run_suite(ns.suite)
    passed = all(r.passed for r in reports)
    doc = {"suite": ns.suite, "passed": passed,
           "failed": [r.check_name for r in reports if not r.passed],
           "reports": [r.to_dict() for r in reports]}
    _write(json.dumps(doc, indent=1) + "\n", ns.out)
    return EXIT_OK if passed else EXIT_FAIL


def cmd_eval(ns, extra):
    pairs = _collect_pairs(ns.args + extra)
    doc = evaluate(ns.function, pairs, ns.provider)
    _write(json.dumps(doc) + "\n", ns.out)
    return EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(prog="hk", description=__doc__.split("\n")[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output path (default stdout)")
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--provider", default="flat",
                        help="flat | constpot:v | table:PATH")
    sub = ap.add_subparsers(dest="command", required=True)
    f = sub.add_parser("figure", parents=[common], help="write figure data")
    f.add_argument("name", choices=FIGURES)
    c = sub.add_parser("check", parents=[common], help="run a verification suite")
    c.add_argument("suite", help=" | ".join(list(SUITES) + ["all"]))
    e = sub.add_parser("eval", parents=[common], help="evaluate one function")
    e.add_argument("function")
    e.add_argument("args", nargs="*", help="key=value pairs")
    return ap


_GLOBAL_OPTIONS = {"out", "format", "provider", "help"}


def _fold_pairs(argv):
    """Rewrite ``--key value`` parameter pairs as ``key=value`` so negative
    values and interleaving survive argparse."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok.startswith("--") and len(tok) > 2:
            key = tok[2:].split("=", 1)[0]
            if key not in _GLOBAL_OPTIONS:
                if "=" in tok:
                    out.append(tok[2:])
                elif i + 1 < len(argv):
                    out.append(f"{key}={argv[i + 1]}")
                    i += 1
                else:
                    out.append(tok)
                i += 1
                continue
        out.append(tok)
        i += 1
    return out


def main(argv=None):
    ap = build_parser()
    argv = _fold_pairs(list(sys.argv[1:] if argv is None else argv))
    try:
        ns, extra = ap.parse_known_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    if ns.format is None:
        ns.format = "csv" if ns.command == "figure" else "json"
    handler = {"figure": cmd_figure, "check": cmd_check, "eval": cmd_eval}[ns.command]
    try:
        return handler(ns, extra)
    except (ConfigError, ParameterError, PoleError, KeyError, OSError) as exc:
        print(f"hk: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ConvergenceError as exc:
        print(f"hk: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
