"""Command-line front end for the spreading measures.

Subcommands:

  measure    one exact measure value as a CSV record
  asymptote  one first-order law value as a CSV record
  sweep      a grid sweep as CSV, one row per evaluated point
  verify     convergence report as JSON, followed by the exact series CSV
  selftest   quick invariant checks across the modules

Exit codes: 0 success, 1 usage error (bad flags, unknown names, out-of-range
parameters), 2 numerical failure.  Diagnostics go to stderr, one line each.

All numeric output uses 15 significant digits; infinities print as the
literal "inf", which only divergent Fisher regimes produce.  A config file
of key=value lines (--config) can predefine any flag; explicit flags win.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys

import numpy as np

from . import asymptotics as asym
from . import measures as ms
from . import ortho_core as oc
from . import quadrature as quad
from . import special_functions as sf
from . import verify as vf
from .errors import DomainError, NumericalError

CSV_COLUMNS = ("family", "n", "param", "param2", "quantity", "method",
               "value", "error_estimate", "regime")

_FAMILIES = (oc.HERMITE, oc.LAGUERRE, oc.JACOBI, oc.GEGENBAUER)

_QUANTITY_TO_MEASURE = {
    "fisher": ms.FISHER,
    "variance": ms.VARIANCE,
    "entropy-poly": ms.SHANNON_E,
    "entropy-weight": ms.INTEGRAL_I,
    "entropy": ms.SHANNON_S,
    "entropy-power": ms.SHANNON_POWER,
    "renyi": ms.RENYI_Q,
    "entropic-moment": ms.ENTROPIC_MOMENT_WQ,
    "cramer-rao": ms.CRAMER_RAO,
    "fisher-shannon": ms.FISHER_SHANNON,
    "lmc": ms.LMC,
}

# quantities with a first-order law, per sweep regime; the large-degree
# entropy law describes the density entropy, the large-parameter one the
# polynomial part, hence the asymmetric entropy names
_ASYM_QUANTITY = {
    ("degree", "fisher"): asym.FISHER,
    ("degree", "entropy"): asym.SHANNON_E,
    ("degree", "entropy-power"): asym.SHANNON_POWER,
    ("degree", "entropic-moment"): asym.W2,
    ("degree", "fisher-shannon"): asym.CFS,
    ("degree", "lmc"): asym.CLMC,
    ("param", "fisher"): asym.FISHER,
    ("param", "entropy-poly"): asym.SHANNON_E,
    ("param", "entropy-power"): asym.SHANNON_POWER,
    ("param", "entropic-moment"): asym.W2,
    ("param", "fisher-shannon"): asym.CFS,
    ("param", "lmc"): asym.CLMC,
}

# divergent Fisher ranges, spelled out for the CSV regime column
_DIVERGENT_FISHER = {
    oc.LAGUERRE: "alpha in (−1,1], alpha≠0",
    oc.GEGENBAUER: "lambda in (−1/2,3/2], lambda≠1/2",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# argument plumbing


def _build_parser():
    p = _Parser(prog="polyspread", description=__doc__.splitlines()[0],
                add_help=True)
    sub = p.add_subparsers(dest="command")

    def common(sp, grid=False, regime=False, report=False):
        sp.add_argument("--family")
        sp.add_argument("--n", type=int)
        sp.add_argument("--alpha", type=float)
        sp.add_argument("--beta", type=float)
        sp.add_argument("--lambda", dest="lam", type=float)
        sp.add_argument("--quantity")
        sp.add_argument("--q", type=float)
        sp.add_argument("--tol", type=float)
        sp.add_argument("--quad-order", dest="quad_order", type=int)
        sp.add_argument("--config")
        sp.add_argument("--out")
        if regime:
            sp.add_argument("--regime", choices=("degree", "param"))
        if grid:
            sp.add_argument("--grid")
        if report:
            sp.add_argument("--predicted-exponent", dest="predicted_exponent",
                            type=float)
            sp.add_argument("--verdict-tol", dest="verdict_tol", type=float)

    common(sub.add_parser("measure"))
    common(sub.add_parser("asymptote"), regime=True)
    common(sub.add_parser("sweep"), grid=True, regime=True)
    common(sub.add_parser("verify"), grid=True, regime=True, report=True)
    sub.add_parser("selftest")
    return p


_CONFIG_KEYS = {
    "family": ("family", str),
    "n": ("n", int),
    "alpha": ("alpha", float),
    "beta": ("beta", float),
    "lambda": ("lam", float),
    "quantity": ("quantity", str),
    "regime": ("regime", str),
    "q": ("q", float),
    "tol": ("tol", float),
    "quad-order": ("quad_order", int),
    "grid": ("grid", str),
    "out": ("out", str),
    "predicted-exponent": ("predicted_exponent", float),
    "verdict-tol": ("verdict_tol", float),
}


def _load_config(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path!r}: {exc}")
    out = {}
    for i, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{i}: expected key=value, got {line!r}")
        key, _, val = line.partition("=")
        key, val = key.strip(), val.strip()
        if key not in _CONFIG_KEYS:
            raise UsageError(f"{path}:{i}: unknown config key {key!r}")
        attr, conv = _CONFIG_KEYS[key]
        try:
            out[attr] = conv(val)
        except ValueError:
            raise UsageError(f"{path}:{i}: bad value {val!r} for {key}")
    return out


def _merge_config(args):
    """Fill unset flags from the config file, then apply defaults."""
    cfg = _load_config(args.config) if getattr(args, "config", None) else {}
    for attr, val in cfg.items():
        if getattr(args, attr, None) is None and hasattr(args, attr):
            setattr(args, attr, val)
    if getattr(args, "tol", None) is None and hasattr(args, "tol"):
        args.tol = 1e-10
    if getattr(args, "q", None) is None and hasattr(args, "q"):
        args.q = 2.0
    if (getattr(args, "verdict_tol", None) is None
            and hasattr(args, "verdict_tol")):
        args.verdict_tol = 1e-3
    return args


def _require(args, attr, flag):
    val = getattr(args, attr, None)
    if val is None:
        raise UsageError(f"{flag} is required")
    return val


def _family(args):
    kind = _require(args, "family", "--family")
    if kind == oc.HERMITE:
        if args.alpha is not None or args.beta is not None or args.lam is not None:
            raise UsageError("hermite takes no family parameters")
        return oc.hermite()
    if kind == oc.LAGUERRE:
        if args.lam is not None or args.beta is not None:
            raise UsageError("laguerre takes only --alpha")
        return oc.laguerre(_require(args, "alpha", "--alpha"))
    if kind == oc.JACOBI:
        if args.lam is not None:
            raise UsageError("jacobi takes --alpha and --beta")
        return oc.jacobi(_require(args, "alpha", "--alpha"),
                         _require(args, "beta", "--beta"))
    if kind == oc.GEGENBAUER:
        if args.alpha is not None or args.beta is not None:
            raise UsageError("gegenbauer takes only --lambda")
        return oc.gegenbauer(_require(args, "lam", "--lambda"))
    raise UsageError(f"unknown family {kind!r}")


def _parse_grid(text):
    if text.startswith("geom:"):
        parts = text.split(":")
        if len(parts) != 4:
            raise UsageError("geometric grid syntax is geom:start:stop:factor")
        try:
            start, stop, factor = (float(s) for s in parts[1:])
        except ValueError:
            raise UsageError(f"bad geometric grid {text!r}")
        return vf.geometric_grid(start, stop, factor)
    try:
        pts = tuple(float(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise UsageError(f"bad grid value in {text!r}")
    if not pts:
        raise UsageError("empty grid")
    return pts


# ---------------------------------------------------------------------------
# CSV records


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, str):
        return v
    if isinstance(v, int):
        return str(v)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return f"{v:.15g}"


def _emit_csv(records, out):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow([_fmt(r[c]) for c in CSV_COLUMNS])
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())


def _record(family_kind, n, param, param2, qname, mv):
    regime = mv.regime
    if mv.diverged and qname == "fisher":
        regime = _DIVERGENT_FISHER.get(family_kind, regime)
    return {
        "family": family_kind,
        "n": int(n),
        "param": param,
        "param2": param2,
        "quantity": qname,
        "method": mv.method,
        "value": mv.value,
        "error_estimate": mv.error_estimate,
        "regime": regime,
    }


def _family_params(args):
    kind = args.family
    if kind == oc.LAGUERRE:
        return args.alpha, None
    if kind == oc.JACOBI:
        return args.alpha, args.beta
    if kind == oc.GEGENBAUER:
        return args.lam, None
    return None, None


# ---------------------------------------------------------------------------
# measure


def _log_wq_fixed_order(family, n, q, order):
    # explicit-order variant of the exact shifted-rule route
    if order < 1:
        raise UsageError("need --quad-order >= 1")
    rule = quad.shifted_rule_for_entropic_moment(family, n, q, order=order)
    _, lp = oc.eval_orthonormal_log(family, n, rule.nodes)
    a = rule.log_weights + 2.0 * q * lp
    m = float(a.max())
    return m + math.log(float(np.exp(a - m).sum()))


def _evaluate_measure(fam, n, qname, args):
    tol, q = args.tol, args.q
    if args.quad_order is not None:
        if qname not in ("entropic-moment", "renyi"):
            raise UsageError(
                "--quad-order applies only to entropic-moment and renyi")
        if q != round(q):
            raise UsageError("--quad-order needs integer q for an exact rule")
        lw = _log_wq_fixed_order(fam, n, q, args.quad_order)
        if qname == "entropic-moment":
            return ms.MeasureValue(ms.ENTROPIC_MOMENT_WQ, math.exp(lw),
                                   ms.EXACT_QUADRATURE)
        if q == 1.0:
            raise DomainError("Renyi order q=1 is the Shannon limit")
        return ms.MeasureValue(ms.RENYI_Q, lw / (1.0 - q), ms.EXACT_QUADRATURE)
    if qname == "fisher":
        if fam.kind == oc.HERMITE:
            return ms.fisher_numeric(fam, n, tol=tol)
        return ms.fisher_closed(fam, n)
    if qname == "variance":
        return ms.variance(fam, n)
    if qname == "entropy-poly":
        return ms.shannon_E_numeric(fam, n, tol=tol)
    if qname == "entropy-weight":
        return ms._integral_I(fam, n, tol=tol)
    if qname == "entropy":
        return ms.shannon_S(fam, n, tol=tol)
    if qname == "entropy-power":
        return ms.shannon_power(fam, n, tol=tol)
    if qname == "renyi":
        return ms.renyi_entropy(fam, n, q, tol=tol)
    if qname == "entropic-moment":
        return ms.entropic_moment_Wq(fam, n, q, tol=tol)
    if qname == "cramer-rao":
        return ms.cramer_rao(fam, n, tol=tol)
    if qname == "fisher-shannon":
        return ms.fisher_shannon(fam, n, tol=tol)
    if qname == "lmc":
        return ms.lmc(fam, n, tol=tol)
    raise UsageError(f"unknown quantity {qname!r}")


def _cmd_measure(args):
    fam = _family(args)
    n = _require(args, "n", "--n")
    qname = _require(args, "quantity", "--quantity")
    mv = _evaluate_measure(fam, n, qname, args)
    param, param2 = _family_params(args)
    _emit_csv([_record(args.family, n, param, param2, qname, mv)], args.out)
    return 0


# ---------------------------------------------------------------------------
# asymptote


def _cmd_asymptote(args):
    regime = _require(args, "regime", "--regime")
    qname = _require(args, "quantity", "--quantity")
    n = _require(args, "n", "--n")
    key = (regime, qname)
    if key not in _ASYM_QUANTITY:
        raise UsageError(f"no first-order {regime} law for quantity {qname!r}")
    if qname == "entropic-moment" and args.q != 2.0:
        raise UsageError("the entropic-moment law is stated for q=2 only")
    law_q = _ASYM_QUANTITY[key]
    kind = _require(args, "family", "--family")
    if kind == oc.LAGUERRE:
        param = _require(args, "alpha", "--alpha")
        op = (asym.laguerre_degree_asymptotic if regime == "degree"
              else asym.laguerre_parameter_asymptotic)
    elif kind == oc.GEGENBAUER:
        param = _require(args, "lam", "--lambda")
        op = (asym.gegenbauer_degree_asymptotic if regime == "degree"
              else asym.gegenbauer_parameter_asymptotic)
    else:
        raise UsageError(f"no first-order laws for family {kind!r}")
    value = op(law_q, n, param)
    tag = (asym.DEGREE_TO_INFINITY if regime == "degree"
           else asym.PARAMETER_TO_INFINITY)
    mv = ms.MeasureValue(law_q, value, "FirstOrderLaw", regime=tag)
    _emit_csv([_record(kind, n, param, None, qname, mv)], args.out)
    return 0


# ---------------------------------------------------------------------------
# sweep and verify


def _sweep_spec(args):
    regime = _require(args, "regime", "--regime")
    qname = _require(args, "quantity", "--quantity")
    if qname not in _QUANTITY_TO_MEASURE:
        raise UsageError(f"unknown quantity {qname!r}")
    kind = _require(args, "family", "--family")
    if kind not in _FAMILIES:
        raise UsageError(f"unknown family {kind!r}")
    swept = vf.SWEEP_DEGREE if regime == "degree" else vf.SWEEP_PARAMETER
    n = args.n
    param, beta = _family_params(args)
    if swept == vf.SWEEP_DEGREE and kind != oc.HERMITE and param is None:
        flag = "--lambda" if kind == oc.GEGENBAUER else "--alpha"
        raise UsageError(f"degree sweep over {kind} needs {flag}")
    if swept == vf.SWEEP_PARAMETER and n is None:
        raise UsageError("parameter sweep needs a fixed --n")
    spec = vf.SweepSpec(family=kind, quantity=_QUANTITY_TO_MEASURE[qname],
                        swept=swept, n=n, param=param, beta=beta, q=args.q)
    grid = _parse_grid(_require(args, "grid", "--grid"))
    return spec, grid, qname


def _series_records(spec, series, qname):
    rows = []
    for g, v in zip(series.grid, series.values):
        if v is None:
            continue
        if spec.swept == vf.SWEEP_DEGREE:
            n, param = int(g), spec.param
        else:
            n, param = spec.n, g
        rows.append(_record(spec.family, n, param, spec.beta, qname, v))
    return rows


def _cmd_sweep(args):
    spec, grid, qname = _sweep_spec(args)
    series = vf.sweep(spec, grid, tol=args.tol)
    for i, message in series.failures:
        print(f"point {grid[i]:g} failed: {message}", file=sys.stderr)
    _emit_csv(_series_records(spec, series, qname), args.out)
    if all(v is None for v in series.values):
        print("numerical failure: no grid point evaluated", file=sys.stderr)
        return 2
    return 0


def _cmd_verify(args):
    spec, grid, qname = _sweep_spec(args)
    exact = vf.sweep(spec, grid, tol=args.tol)
    for i, message in exact.failures:
        print(f"point {grid[i]:g} failed: {message}", file=sys.stderr)
    law = vf.asymptotic_series(spec, grid)
    report = vf.convergence_report(exact, law,
                                   predicted_exponent=args.predicted_exponent,
                                   tol=args.verdict_tol)
    sys.stdout.write(report.to_json() + "\n")
    _emit_csv(_series_records(spec, exact, qname), args.out)
    return 0


# ---------------------------------------------------------------------------
# selftest


def _st_special_functions():
    assert abs(sf.log_gamma(11.0) - math.log(3628800.0)) < 1e-12
    assert abs(sf.digamma(1.0) + sf.EULER_GAMMA) < 1e-14
    assert abs(sf.log_gamma_ratio(1e8 + 1.0, 1e8) - math.log(1e8)) < 1e-10


def _st_orthonormality():
    fams = (oc.hermite(), oc.laguerre(0.5), oc.jacobi(0.3, 1.2),
            oc.gegenbauer(2.0))
    for fam in fams:
        rule = quad.gauss_rule(fam, 7)
        _, lp = oc.eval_orthonormal_log(fam, 6, rule.nodes)
        a = rule.log_weights + 2.0 * lp
        m = float(a.max())
        total = math.exp(m) * float(np.exp(a - m).sum())
        assert abs(total - 1.0) < 1e-10, fam.describe()


def _st_quadrature():
    rule = quad.gauss_rule(oc.hermite(), 12)
    tenth = rule.integrate(lambda x: x ** 10)
    assert abs(tenth / math.gamma(5.5) - 1.0) < 1e-12
    val, _ = quad.integrate_adaptive(lambda x: np.exp(-x * x),
                                     (-math.inf, math.inf))
    assert abs(val - math.sqrt(math.pi)) < 1e-9


def _st_measure_anchors():
    lag0 = oc.laguerre(0.0)
    assert abs(ms.shannon_S(lag0, 0).value - 1.0) < 1e-10
    assert abs(ms.entropic_moment_Wq(lag0, 0, 2.0).value - 0.5) < 1e-10
    assert abs(ms.lmc(lag0, 0).value - math.e / 2.0) < 1e-10
    leg = oc.gegenbauer(0.5)
    assert abs(ms.shannon_S(leg, 0).value - math.log(2.0)) < 1e-10
    assert ms.fisher_closed(leg, 0).value == 0.0
    closed = ms.fisher_closed(oc.laguerre(2.0), 4).value
    numeric = ms.fisher_numeric(oc.laguerre(2.0), 4).value
    assert abs(numeric / closed - 1.0) < 1e-6


def _st_asymptotics():
    assert len(asym.formulas()) == 27
    v = asym.gegenbauer_parameter_asymptotic(asym.FISHER, 0, 1e4)
    assert abs(v - 2e4) < 1e-6
    lmc0 = asym.laguerre_parameter_asymptotic(asym.CLMC, 0, 123.0)
    assert abs(lmc0 - math.exp(0.5) / math.sqrt(2.0)) < 1e-12


def _st_verify():
    spec = vf.SweepSpec(family="synthetic", quantity="X", swept="degree")
    grid = tuple(10.0 * 2.0 ** i for i in range(6))
    vals = tuple(ms.MeasureValue("X", 0.7 * g ** 1.5, ms.CLOSED_FORM)
                 for g in grid)
    series = vf.SweepSeries(grid=grid, values=vals, spec=spec)
    slope, _ = vf.fit_scaling_exponent(series)
    assert abs(slope - 1.5) < 1e-6
    report = vf.convergence_report(series, series)
    assert report.verdict == vf.RATIO_CONVERGES


def _st_cli_format():
    assert _fmt(math.inf) == "inf"
    assert _fmt(1.0) == "1"
    assert _fmt(math.e) == "2.71828182845905"
    assert _fmt(None) == ""


_SELFTEST = (
    ("special-functions", _st_special_functions),
    ("orthonormality", _st_orthonormality),
    ("quadrature", _st_quadrature),
    ("measure-anchors", _st_measure_anchors),
    ("asymptotics", _st_asymptotics),
    ("verify-harness", _st_verify),
    ("output-format", _st_cli_format),
)


def _cmd_selftest(args):
    failed = 0
    for name, check in _SELFTEST:
        try:
            check()
        except Exception as exc:
            failed += 1
            print(f"FAIL {name}: {exc}")
        else:
            print(f"ok {name}")
    if failed:
        print(f"numerical failure: {failed} selftest check(s) failed",
              file=sys.stderr)
        return 2
    return 0


# ---------------------------------------------------------------------------
# entry points

_DISPATCH = {
    "measure": _cmd_measure,
    "asymptote": _cmd_asymptote,
    "sweep": _cmd_sweep,
    "verify": _cmd_verify,
    "selftest": _cmd_selftest,
}


def run(argv=None):
    try:
        args = _build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError(
                "missing subcommand (measure, asymptote, sweep, verify, selftest)")
        _merge_config(args)
        return _DISPATCH[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
