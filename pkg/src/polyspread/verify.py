"""Convergence harness for the spreading measures.

The workflow is: describe what to sweep with a SweepSpec, evaluate the exact
measure along a grid with sweep(), build the matching first-order law series
with asymptotic_series(), then compare the two with convergence_report().

A report classifies the comparison with a fixed verdict ladder, checked in
this order:

  RatioConverges      exact/asymptotic ratio settles on 1 within tol and the
                      gap |ratio - 1| is non-increasing over the last three
                      grid points,
  LogRatioConverges   same test on ln(exact)/ln(asymptotic); this is the
                      designated mode for coefficient-free laws (pure n^k
                      scales with no usable constant) and for the large-
                      parameter entropy-power family, where the law tracks
                      the leading factor only,
  ExponentMatches     the fitted log-log slope agrees with the predicted
                      exponent within 3*stderr + 0.02,
  Discrepant          none of the above.

The fitted exponent always comes from the top half of the usable grid points
so that low-order transients do not pollute the slope.  Reports serialize to
JSON deterministically: same inputs, byte-identical output.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass

from . import asymptotics as asym
from . import measures as ms
from . import ortho_core as oc
from . import special_functions as sf
from .errors import DomainError, NumericalError

__all__ = [
    "SweepSpec",
    "SweepSeries",
    "ConvergenceReport",
    "sweep",
    "asymptotic_series",
    "convergence_report",
    "fit_scaling_exponent",
    "weight_entropy_audit",
    "geometric_grid",
    "RATIO_CONVERGES",
    "LOG_RATIO_CONVERGES",
    "EXPONENT_MATCHES",
    "DISCREPANT",
]

RATIO_CONVERGES = "RatioConverges"
LOG_RATIO_CONVERGES = "LogRatioConverges"
EXPONENT_MATCHES = "ExponentMatches"
DISCREPANT = "Discrepant"

SWEEP_DEGREE = "degree"
SWEEP_PARAMETER = "parameter"

_FIRST_ORDER_LAW = "FirstOrderLaw"


@dataclass(frozen=True)
class SweepSpec:
    """What to sweep: one family, one quantity, one running variable.

    family    ortho_core kind string ("hermite", "laguerre", ...)
    quantity  measures name string (ms.FISHER, ms.SHANNON_POWER, ...)
    swept     "degree" or "parameter"
    n         fixed degree (parameter sweeps only)
    param     fixed family parameter (degree sweeps; alpha or lambda)
    beta      second Jacobi parameter, where applicable
    q         moment order for RenyiQ / EntropicMomentWq
    """

    family: str
    quantity: str
    swept: str
    n: int | None = None
    param: float | None = None
    beta: float | None = None
    q: float = 2.0

    def as_dict(self):
        return {
            "family": self.family,
            "quantity": self.quantity,
            "swept": self.swept,
            "n": self.n,
            "param": self.param,
            "beta": self.beta,
            "q": self.q,
        }


@dataclass(frozen=True)
class SweepSeries:
    """One evaluated grid: values[i] is a MeasureValue or None (failed point).

    failures holds (index, message) pairs for points whose evaluation raised;
    such points do not abort the sweep.
    """

    grid: tuple
    values: tuple
    spec: SweepSpec
    failures: tuple = ()

    def __post_init__(self):
        if len(self.grid) != len(self.values):
            raise DomainError("values.length must equal grid.length")
        for a, b in zip(self.grid, self.grid[1:]):
            if not b > a:
                raise DomainError("grid must be strictly ascending")

    def finite_points(self):
        """(grid point, value) pairs with a finite evaluated value."""
        out = []
        for g, v in zip(self.grid, self.values):
            if v is None:
                continue
            if not math.isfinite(v.value):
                continue
            out.append((g, v.value))
        return out


@dataclass(frozen=True)
class ConvergenceReport:
    spec: SweepSpec
    grid: tuple
    exact: tuple
    asymptotic: tuple
    ratios: tuple
    log_ratios: tuple
    fitted_exponent: float
    exponent_stderr: float
    predicted_exponent: float | None
    verdict: str

    def to_json(self):
        payload = {
            "spec": self.spec.as_dict(),
            "grid": [_jsonable(g) for g in self.grid],
            "exact": [_jsonable(v) for v in self.exact],
            "asymptotic": [_jsonable(v) for v in self.asymptotic],
            "ratios": [_jsonable(v) for v in self.ratios],
            "log_ratios": [_jsonable(v) for v in self.log_ratios],
            "fitted_exponent": _jsonable(self.fitted_exponent),
            "exponent_stderr": _jsonable(self.exponent_stderr),
            "predicted_exponent": _jsonable(self.predicted_exponent),
            "verdict": self.verdict,
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def _jsonable(v):
    if v is None:
        return None
    v = float(v)
    if math.isfinite(v):
        return v
    if math.isnan(v):
        return "nan"
    return "inf" if v > 0 else "-inf"


# ---------------------------------------------------------------------------
# grids


def geometric_grid(start, stop, factor):
    """Geometric grid start, start*factor, ... capped at stop (inclusive)."""
    if not (start > 0.0 and math.isfinite(start)):
        raise DomainError("need start > 0")
    if stop < start:
        raise DomainError("need stop >= start")
    if not factor > 1.0:
        raise DomainError("need factor > 1")
    vals = [float(start)]
    # 1e-9 slack keeps stop itself on the grid despite rounding
    while vals[-1] * factor <= stop * (1.0 + 1e-9):
        vals.append(vals[-1] * factor)
    return tuple(vals)


def _validate_grid(grid):
    pts = tuple(float(g) for g in grid)
    if not pts:
        raise DomainError("empty grid")
    for a, b in zip(pts, pts[1:]):
        if not b > a:
            raise DomainError("grid must be strictly ascending")
    return pts


def _as_degree(g):
    if g != int(g):
        raise DomainError(f"degree grid point {g!r} is not an integer")
    n = int(g)
    if n < 0:
        raise DomainError("need degree >= 0")
    return n


# ---------------------------------------------------------------------------
# exact sweep


def _fisher_any(family, n, q, tol):
    if family.kind == oc.HERMITE:
        return ms.fisher_numeric(family, n, tol=tol)
    return ms.fisher_closed(family, n)


_EVALUATORS = {
    ms.FISHER: _fisher_any,
    ms.VARIANCE: lambda fam, n, q, tol: ms.variance(fam, n),
    ms.SHANNON_E: lambda fam, n, q, tol: ms.shannon_E_numeric(fam, n, tol=tol),
    ms.SHANNON_S: lambda fam, n, q, tol: ms.shannon_S(fam, n, tol=tol),
    ms.SHANNON_POWER: lambda fam, n, q, tol: ms.shannon_power(fam, n, tol=tol),
    ms.ENTROPIC_MOMENT_WQ:
        lambda fam, n, q, tol: ms.entropic_moment_Wq(fam, n, q, tol=tol),
    ms.RENYI_Q: lambda fam, n, q, tol: ms.renyi_entropy(fam, n, q, tol=tol),
    ms.CRAMER_RAO: lambda fam, n, q, tol: ms.cramer_rao(fam, n, tol=tol),
    ms.FISHER_SHANNON: lambda fam, n, q, tol: ms.fisher_shannon(fam, n, tol=tol),
    ms.LMC: lambda fam, n, q, tol: ms.lmc(fam, n, tol=tol),
}


def _family_at(spec, param):
    kind = spec.family
    if kind == oc.HERMITE:
        return oc.hermite()
    if param is None:
        raise DomainError(f"family parameter required for {kind}")
    if kind == oc.LAGUERRE:
        return oc.laguerre(param)
    if kind == oc.GEGENBAUER:
        return oc.gegenbauer(param)
    if kind == oc.JACOBI:
        if spec.beta is None:
            raise DomainError("jacobi sweep needs beta")
        return oc.jacobi(param, spec.beta)
    raise DomainError(f"unknown family kind {kind!r}")


def _eval_point(spec, g, tol):
    if spec.swept == SWEEP_DEGREE:
        n = _as_degree(g)
        fam = _family_at(spec, spec.param)
    else:
        n = spec.n
        fam = _family_at(spec, g)
    return _EVALUATORS[spec.quantity](fam, n, spec.q, tol)


def _check_spec(spec):
    if spec.quantity not in _EVALUATORS:
        raise DomainError(f"no sweep evaluator for quantity {spec.quantity!r}")
    if spec.swept == SWEEP_DEGREE:
        return
    if spec.swept != SWEEP_PARAMETER:
        raise DomainError(f"swept must be 'degree' or 'parameter', got {spec.swept!r}")
    if spec.family == oc.HERMITE:
        raise DomainError("hermite has no parameter to sweep")
    if spec.n is None or spec.n != int(spec.n) or spec.n < 0:
        raise DomainError("parameter sweep needs a fixed integer degree n >= 0")


def sweep(spec, grid, tol=1e-10):
    """Evaluate spec's quantity at every grid point; capture failures per point.

    Points run in parallel; aggregation is by grid index, so the result is
    deterministic regardless of completion order.
    """
    _check_spec(spec)
    pts = _validate_grid(grid)
    values = [None] * len(pts)
    failures = []
    workers = min(len(pts), max(1, os.cpu_count() or 1))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futs = {pool.submit(_eval_point, spec, g, tol): i
                for i, g in enumerate(pts)}
        for fut in as_completed(futs):
            i = futs[fut]
            try:
                values[i] = fut.result()
            except (DomainError, NumericalError) as exc:
                failures.append((i, str(exc)))
    failures.sort()
    return SweepSeries(grid=pts, values=tuple(values), spec=spec,
                       failures=tuple(failures))


# ---------------------------------------------------------------------------
# first-order law series

# Sweep quantities mapped onto law-registry quantities, per regime.  The
# large-degree entropy laws are stated for the density entropy S, the
# large-parameter ones for the polynomial part E, so the two regimes bind
# different exact measures to the same registry row.
_LAW_QUANTITY = {
    SWEEP_DEGREE: {
        ms.FISHER: asym.FISHER,
        ms.SHANNON_S: asym.SHANNON_E,
        ms.SHANNON_POWER: asym.SHANNON_POWER,
        ms.ENTROPIC_MOMENT_WQ: asym.W2,
        ms.FISHER_SHANNON: asym.CFS,
        ms.LMC: asym.CLMC,
    },
    SWEEP_PARAMETER: {
        ms.FISHER: asym.FISHER,
        ms.SHANNON_E: asym.SHANNON_E,
        ms.SHANNON_POWER: asym.SHANNON_POWER,
        ms.ENTROPIC_MOMENT_WQ: asym.W2,
        ms.FISHER_SHANNON: asym.CFS,
        ms.LMC: asym.CLMC,
    },
}


def asymptotic_series(spec, grid):
    """First-order law values on the same grid, as a SweepSeries.

    Raises OutOfBranchError/DomainError directly: the law either covers the
    whole sweep or none of it, so per-point failure capture is pointless.
    """
    _check_spec(spec)
    pts = _validate_grid(grid)
    regime = (asym.DEGREE_TO_INFINITY if spec.swept == SWEEP_DEGREE
              else asym.PARAMETER_TO_INFINITY)
    law_map = _LAW_QUANTITY[spec.swept]
    if spec.quantity not in law_map:
        raise DomainError(f"no first-order law mapped for {spec.quantity!r}")
    if spec.quantity == ms.ENTROPIC_MOMENT_WQ and spec.q != 2.0:
        raise DomainError("entropic-moment law is stated for q = 2 only")
    formula = asym.formula_for(spec.family, regime, law_map[spec.quantity])
    values = []
    for g in pts:
        if spec.swept == SWEEP_DEGREE:
            v = formula.value(_as_degree(g), spec.param)
        else:
            v = formula.value(spec.n, g)
        values.append(ms.MeasureValue(spec.quantity, v, _FIRST_ORDER_LAW))
    return SweepSeries(grid=pts, values=tuple(values), spec=spec)


# ---------------------------------------------------------------------------
# exponent fit


def _ols_loglog(points):
    """OLS slope and its standard error for (ln x, ln y) pairs."""
    m = len(points)
    xs = [math.log(g) for g, _ in points]
    ys = [math.log(v) for _, v in points]
    xbar = sum(xs) / m
    ybar = sum(ys) / m
    sxx = sum((x - xbar) ** 2 for x in xs)
    if sxx <= 0.0:
        raise DomainError("degenerate grid: all points coincide in log scale")
    sxy = sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys))
    slope = sxy / sxx
    ssr = sum((y - ybar - slope * (x - xbar)) ** 2 for x, y in zip(xs, ys))
    dof = m - 2
    stderr = math.sqrt(max(ssr, 0.0) / dof / sxx) if dof > 0 else 0.0
    return slope, stderr


def fit_scaling_exponent(series):
    """Fit value ~ c * t^k over the series; returns (k, stderr).

    Needs at least 4 finite points, all positive.
    """
    pts = series.finite_points()
    for g, v in pts:
        if v <= 0.0:
            raise DomainError(
                f"nonpositive value {v!r} at grid point {g!r}; "
                "cannot fit a log-log slope")
    if len(pts) < 4:
        raise DomainError("need at least 4 finite points to fit an exponent")
    return _ols_loglog(pts)


# ---------------------------------------------------------------------------
# comparison report


def _settles(seq, tol):
    """Last entry within tol of 1 and |x-1| non-increasing over last three."""
    if len(seq) < 3:
        return False
    tail = seq[-3:]
    if any(v is None or not math.isfinite(v) for v in tail):
        return False
    gaps = [abs(v - 1.0) for v in tail]
    return gaps[0] >= gaps[1] >= gaps[2] and gaps[2] < tol


def convergence_report(exact, asymptotic, predicted_exponent=None, tol=1e-3):
    """Compare an exact sweep against its first-order law on the same grid."""
    if exact.grid != asymptotic.grid:
        raise DomainError("exact and asymptotic series use different grids")
    grid = exact.grid

    exact_vals = []
    asym_vals = []
    ratios = []
    log_ratios = []
    for ev, av in zip(exact.values, asymptotic.values):
        e = None if ev is None else float(ev.value)
        a = None if av is None else float(av.value)
        exact_vals.append(e)
        asym_vals.append(a)
        ok = (e is not None and a is not None
              and math.isfinite(e) and math.isfinite(a))
        ratios.append(e / a if ok and a != 0.0 else None)
        lr = None
        if ok and e > 0.0 and a > 0.0:
            la = math.log(a)
            if abs(la) >= 1e-12:
                lr = math.log(e) / la
        log_ratios.append(lr)

    usable = [(g, e, a) for g, e, a in zip(grid, exact_vals, asym_vals)
              if e is not None and a is not None
              and math.isfinite(e) and math.isfinite(a)]
    if len(usable) < 4:
        raise DomainError("fewer than 4 usable points; cannot build a report")
    # the slope fit needs positive values; constant-negative cells (entropy
    # limits below zero) keep ratio verdicts but get a nan exponent
    positive = [(g, e) for g, e, _ in usable if e > 0.0]
    if len(positive) >= 4:
        window = positive[-max(4, (len(positive) + 1) // 2):]
        slope, stderr = _ols_loglog(window)
    else:
        slope, stderr = math.nan, math.nan

    if _settles(ratios, tol):
        verdict = RATIO_CONVERGES
    elif _settles(log_ratios, tol):
        verdict = LOG_RATIO_CONVERGES
    elif (predicted_exponent is not None and math.isfinite(slope)
          and abs(slope - predicted_exponent) < 3.0 * stderr + 0.02):
        verdict = EXPONENT_MATCHES
    else:
        verdict = DISCREPANT

    return ConvergenceReport(
        spec=exact.spec,
        grid=grid,
        exact=tuple(exact_vals),
        asymptotic=tuple(asym_vals),
        ratios=tuple(ratios),
        log_ratios=tuple(log_ratios),
        fitted_exponent=slope,
        exponent_stderr=stderr,
        predicted_exponent=(None if predicted_exponent is None
                            else float(predicted_exponent)),
        verdict=verdict,
    )


# ---------------------------------------------------------------------------
# weight-entropy audit


def weight_entropy_audit(n, lam, tol=1e-10):
    """Cross-check the Gegenbauer weight-entropy integral I = -int rho ln h.

    Returns a JSON-ready dict with the closed form, the quadrature oracle,
    their relative gap, and the raw printed-table variant.  The printed
    prefactor differs from the orthonormal normalization by exactly
    kappa_n / lc_n^2, where lc_n is the conventional leading coefficient
    2^n (lam)_n / n!; I_printed_raw records what the table row evaluates to
    before that factor is divided out.
    """
    fam = oc.gegenbauer(lam)
    n = int(n)
    closed = ms.integral_I_closed(fam, n).value
    quad_val = ms._integral_I_numeric(fam, n, tol=tol).value
    if quad_val != 0.0:
        rel_gap = abs(closed / quad_val - 1.0)
    else:
        rel_gap = abs(closed - quad_val)
    # (lam)_n as a direct product: sign-safe for lam in (-1/2, 0)
    poch = 1.0
    for i in range(n):
        poch *= lam + i
    log_lc = n * math.log(2.0) + math.log(abs(poch)) - sf.log_gamma(n + 1.0)
    prefactor = math.exp(oc.log_norm_kappa(fam, n) - 2.0 * log_lc)
    return {
        "family": oc.GEGENBAUER,
        "n": n,
        "lam": float(lam),
        "I_closed": closed,
        "I_quadrature": quad_val,
        "rel_gap": rel_gap,
        "printed_prefactor": prefactor,
        "I_printed_raw": prefactor * closed,
    }
