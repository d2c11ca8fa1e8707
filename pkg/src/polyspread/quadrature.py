"""Gauss rules for the classical weights and adaptive integration.

Rules are built by Golub-Welsch: nodes from the symmetric tridiagonal
eigenproblem, weights through the Christoffel sum 1/sum_k p_k(x_i)^2
evaluated in log space (the eigenvector route would need O(m^2) memory, and
the weights themselves overflow doubles at extreme parameters).

integrate_adaptive subdivides at supplied breakpoints (typically polynomial
zeros), doubles the Gauss order per cell, bisects cells that converge only
algebraically (integrable log-type singularities), and absorbs declared
fractional endpoint exponents (x-a)^s into dedicated Gauss-Jacobi cell
rules.  Divergent endpoints (s <= -1) are never absorbed; they are detected
from growth of the cell estimates, so divergence is measured, not assumed.
"""
import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.special

from . import kernels, ortho_core
from .errors import DomainError, NumericalError

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and log-weights integrating exactly against `descriptor`.

    Weights are stored in log space; `weights` materializes them and may
    overflow to inf at extreme parameters (the log form never does).
    """
    nodes: np.ndarray
    log_weights: np.ndarray
    order: int
    weight_family: object   # PolynomialFamily, or a descriptor string for
                            # power-shifted weights
    # affine change of variable applied to the base classical rule:
    # x = y / scale, log_weights = base log weights + log_shift
    scale: float = 1.0
    log_shift: float = 0.0

    @property
    def weights(self):
        return np.exp(self.log_weights)

    @property
    def descriptor(self):
        wf = self.weight_family
        return wf if isinstance(wf, str) else wf.describe()

    def integrate(self, f):
        vals = np.asarray(f(self.nodes), dtype=np.float64)
        return float(np.dot(np.exp(self.log_weights), vals))

    def integrate_log(self, log_f, signs=None):
        """log of |sum w_i exp(log_f_i)|; with signs, returns (log, sign)."""
        a = self.log_weights + np.asarray(log_f, dtype=np.float64)
        if signs is None:
            return float(scipy.special.logsumexp(a))
        pos = a[signs > 0]
        neg = a[signs < 0]
        lp = float(scipy.special.logsumexp(pos)) if pos.size else -math.inf
        ln = float(scipy.special.logsumexp(neg)) if neg.size else -math.inf
        if ln == -math.inf:
            return lp, 1.0
        if lp == -math.inf:
            return ln, -1.0
        if lp >= ln:
            d = math.exp(ln - lp)
            return (lp + math.log1p(-d) if d < 1.0 else -math.inf), 1.0
        return ln + math.log1p(-math.exp(lp - ln)), -1.0


def gauss_rule(weight, order):
    """Golub-Welsch rule for a PolynomialFamily weight."""
    if order < 1:
        raise DomainError("need order >= 1")
    order = int(order)
    diag, off = ortho_core.recurrence_arrays(weight, order)
    if order == 1:
        nodes = diag.copy()
    else:
        try:
            nodes = scipy.linalg.eigvalsh_tridiagonal(diag, off)
        except Exception as exc:
            raise NumericalError(f"tridiagonal eigensolver failed: {exc}") from exc
        nodes = np.sort(nodes)
    log_p0 = -0.5 * ortho_core.log_norm_kappa(weight, 0)
    log_w = kernels.christoffel_log_weights(diag, off, log_p0, nodes)
    return QuadratureRule(nodes=nodes, log_weights=log_w, order=order,
                          weight_family=weight)


def shifted_rule_for_entropic_moment(family, n, q, order=None):
    """Rule integrating exactly against h(x)^q on the family's support.

    The q-th power of a classical weight is again classical up to an affine
    substitution; the returned rule carries the substitution already applied,
    so sum w_i g(x_i) approximates int g(x) h(x)^q dx directly, exactly for
    polynomial g of degree <= 2*order - 1.  Default order covers the
    entropic moment integrand p_n(x)^(2q) when q is an integer.
    """
    if q <= 0:
        raise DomainError("need q > 0")
    if order is None:
        order = max(1, int(math.ceil(q * n)) + 1)
    order = int(order)
    kind = family.kind
    if kind == ortho_core.LAGUERRE:
        ap = q * family.alpha
        if not ap > -1.0:
            raise DomainError(f"shifted Laguerre parameter q*alpha = {ap} <= -1")
        base = ortho_core.laguerre(ap)
        r = gauss_rule(base, order)
        # y = q x: int x^(qa) e^(-qx) g(x) dx = q^(-qa-1) int y^(qa) e^(-y) g(y/q) dy
        shift = -(ap + 1.0) * math.log(q)
        return QuadratureRule(nodes=r.nodes / q, log_weights=r.log_weights + shift,
                              order=order, weight_family=f"{base.describe()} pow-shift q={q:g}",
                              scale=q, log_shift=shift)
    if kind == ortho_core.HERMITE:
        s = math.sqrt(q)
        base = ortho_core.hermite()
        r = gauss_rule(base, order)
        shift = -0.5 * math.log(q)
        return QuadratureRule(nodes=r.nodes / s, log_weights=r.log_weights + shift,
                              order=order, weight_family=f"hermite pow-shift q={q:g}",
                              scale=s, log_shift=shift)
    if kind == ortho_core.GEGENBAUER:
        lp = q * family.lam - (q - 1.0) / 2.0
        if not lp > -0.5:
            raise DomainError(
                f"shifted Gegenbauer parameter q*lam-(q-1)/2 = {lp} <= -1/2")
        # built through Jacobi so lp = 0 is usable
        base = ortho_core.jacobi(lp - 0.5, lp - 0.5)
        r = gauss_rule(base, order)
        return QuadratureRule(nodes=r.nodes, log_weights=r.log_weights,
                              order=order,
                              weight_family=f"gegenbauer(lambda={lp:g}) pow-shift q={q:g}")
    if kind == ortho_core.JACOBI:
        ap, bp = q * family.alpha, q * family.beta
        if not (ap > -1.0 and bp > -1.0):
            raise DomainError(f"shifted Jacobi parameters ({ap}, {bp}) invalid")
        base = ortho_core.jacobi(ap, bp)
        r = gauss_rule(base, order)
        return QuadratureRule(nodes=r.nodes, log_weights=r.log_weights,
                              order=order,
                              weight_family=f"{base.describe()} pow-shift q={q:g}")
    raise DomainError(f"unknown family kind {kind!r}")


# ---------------------------------------------------------------------------
# adaptive integration


@dataclass
class IntegralResult:
    value: float
    error_estimate: float
    converged: bool
    diverged: bool
    n_eval: int

    def __iter__(self):  # allows  value, err = integrate_adaptive(...)
        return iter((self.value, self.error_estimate))


_legendre_cache = {}
_gj_cache = {}

_BASE_ORDER = 8
_MAX_ROUNDS = 80
_MAX_SPLITS = 512
_GJ_MAX_ORDER = 2048
_GL_MAX_ORDER = 4096


def _legendre(order):
    r = _legendre_cache.get(order)
    if r is None:
        r = scipy.special.roots_legendre(order)
        _legendre_cache[order] = r
    return r


def _trim_doublings(d, mode):
    """Largest start <= d whose rule order sits below the cap, so a child
    cell can still be refined at least once before splitting again."""
    cap = _GJ_MAX_ORDER if mode != "plain" else _GL_MAX_ORDER
    while d > 0 and (_BASE_ORDER << d) >= cap:
        d -= 1
    return d


def _gauss_jacobi01(s, order):
    """Nodes/weights on (0,1) against weight t^s, s > -1."""
    key = (round(s, 12), order)
    r = _gj_cache.get(key)
    if r is None:
        rule = gauss_rule(ortho_core.jacobi(0.0, s), order)
        t = 0.5 * (rule.nodes + 1.0)
        v = np.exp(rule.log_weights - (s + 1.0) * _LN2)
        r = (t, v)
        _gj_cache[key] = r
    return r


class _Cell:
    __slots__ = ("lo", "hi", "mode", "s", "doublings", "est", "prev",
                 "history", "converged", "diverged", "replaced", "gen",
                 "candidate", "stalled")

    def __init__(self, lo, hi, mode="plain", s=0.0, gen=0, candidate=None):
        self.lo = lo
        self.hi = hi
        self.mode = mode      # plain | abs_lo | abs_hi
        self.s = s            # endpoint exponent for absorbed modes
        self.doublings = 0
        self.est = 0.0
        self.prev = None
        self.history = []
        self.converged = False
        self.diverged = False
        self.replaced = False
        self.gen = gen        # bisection generation
        self.candidate = candidate  # "lo"/"hi": declared non-integrable edge
        self.stalled = False  # refinement budget exhausted, stop touching


def _probe_window(f, lo, hi, breakpoints):
    """Replace infinite endpoints by geometric probing of |f|.

    Returns effective finite bounds plus a geometric ladder of extra
    breakpoints on each truncated side; without the ladder a single cell
    can span hundreds of e-folds of decay and Gauss-Legendre stalls on a
    round-off plateau before resolving it.
    """
    anchors = [float(b) for b in breakpoints if np.isfinite(b)]
    if np.isfinite(lo):
        anchors.append(float(lo))
    if np.isfinite(hi):
        anchors.append(float(hi))
    if not anchors:
        anchors = [0.0]
    ref = max(abs(a) for a in anchors) + 1.0

    def scan(direction, start):
        t = ref
        fmax = 0.0
        low_run = 0
        x = start + direction * t
        while t < 1e15:
            x = start + direction * t
            val = abs(float(np.asarray(f(np.array([x])))[0]))
            if math.isfinite(val):
                fmax = max(fmax, val)
            if val < max(fmax, 1.0) * 1e-280:
                low_run += 1
                if low_run >= 3:
                    break
            else:
                low_run = 0
            t *= 1.7
        return x

    ladder = []

    def rungs(direction, start, cut):
        t = ref
        while (cut - (start + direction * t)) * direction > 0.0:
            ladder.append(start + direction * t)
            t *= 4.0

    lo_eff, hi_eff = lo, hi
    if not np.isfinite(lo):
        lo_eff = scan(-1.0, min(anchors))
        rungs(-1.0, min(anchors), lo_eff)
    if not np.isfinite(hi):
        hi_eff = scan(+1.0, max(anchors))
        rungs(+1.0, max(anchors), hi_eff)
    return lo_eff, hi_eff, ladder


def integrate_adaptive(integrand, support, breakpoints=(), tol=1e-10,
                       endpoint_exponents=(0.0, 0.0),
                       reduced_lo=None, reduced_hi=None,
                       max_doublings=12):
    """Adaptive integration with breakpoint subdivision.

    integrand must accept numpy arrays.  endpoint_exponents (s_lo, s_hi)
    declare known algebraic factors (x-lo)^s_lo and (hi-x)^s_hi of the
    integrand; non-integer exponents above -1 are absorbed into Gauss-Jacobi
    endpoint rules fed by reduced_lo / reduced_hi, called as fn(x, dist)
    with dist the exact node distances from the absorbed endpoint (x itself
    may round onto the endpoint for tiny dist).  They default to the raw
    integrand divided by dist^s with an underflow guard.  The reduced
    integrand should be free of logarithmic endpoint factors; a residual
    log converges only slowly.  Exponents <= -1 mark a non-integrable
    endpoint candidate: the cell is left on plain rules and divergence shows
    up as estimate growth.  Infinite support endpoints are truncated where
    geometric probing finds the integrand negligible.  Non-finite integrand
    values count as 0 (underflow tails).  Non-convergence and detected
    divergence are reported through the result flags, never raised.
    """
    lo, hi = support
    if not lo < hi:
        raise DomainError("empty integration support")
    lo_eff, hi_eff = (lo, hi)
    ladder = []
    if not (np.isfinite(lo) and np.isfinite(hi)):
        lo_eff, hi_eff, ladder = _probe_window(integrand, lo, hi, breakpoints)
    inner = np.unique([float(b) for b in list(breakpoints) + ladder
                       if lo_eff < b < hi_eff])
    pts = [lo_eff] + list(inner) + [hi_eff]

    s_lo, s_hi = endpoint_exponents

    def default_reduced(s):
        # dist is the exact node distance from the absorbed endpoint; it
        # stays meaningful even when edge + dist rounds to the edge itself
        def g(x, dist):
            fv = np.asarray(integrand(x), dtype=np.float64)
            with np.errstate(all="ignore"):
                out = np.where(np.isfinite(fv) & (fv != 0.0),
                               fv * np.exp(-s * np.log(dist)), 0.0)
            return np.where(np.isfinite(out), out, 0.0)
        return g

    if reduced_lo is None:
        reduced_lo = default_reduced(s_lo)
    if reduced_hi is None:
        reduced_hi = default_reduced(s_hi)

    # integer s >= 0 keeps the integrand polynomial-friendly, plain rules
    # stay exact; fractional or negative integrable exponents get absorbed
    absorb_lo = s_lo > -1.0 and s_lo != round(s_lo)
    absorb_hi = s_hi > -1.0 and s_hi != round(s_hi)
    lo_special = pts[0] == lo and (absorb_lo or s_lo <= -1.0)
    hi_special = pts[-1] == hi and (absorb_hi or s_hi <= -1.0)
    if len(pts) == 2 and lo_special and hi_special:
        pts.insert(1, 0.5 * (pts[0] + pts[1]))  # one endpoint per cell
    cells = []
    for i in range(len(pts) - 1):
        a, b = pts[i], pts[i + 1]
        mode, s, cand = "plain", 0.0, None
        if i == 0 and a == lo:
            if absorb_lo:
                mode, s = "abs_lo", s_lo
            elif s_lo <= -1.0:
                cand = "lo"
        if i == len(pts) - 2 and b == hi:
            if absorb_hi:
                mode, s = "abs_hi", s_hi
            elif s_hi <= -1.0:
                cand = "hi"
        cells.append(_Cell(a, b, mode, s, candidate=cand))

    n_eval = 0
    n_splits = 0
    edge_hist = {"lo": [], "hi": []}

    def run(cell):
        nonlocal n_eval
        order = _BASE_ORDER << cell.doublings
        length = cell.hi - cell.lo
        if cell.mode == "plain":
            xg, wg = _legendre(order)
            x = 0.5 * (cell.lo + cell.hi) + 0.5 * length * xg
            vals = np.asarray(integrand(x), dtype=np.float64)
            vals = np.where(np.isfinite(vals), vals, 0.0)
            est = 0.5 * length * float(np.dot(wg, vals))
        else:
            t, v = _gauss_jacobi01(cell.s, min(order, _GJ_MAX_ORDER))
            dist = length * t
            if cell.mode == "abs_lo":
                x = cell.lo + dist
                g = np.asarray(reduced_lo(x, dist), dtype=np.float64)
            else:
                x = cell.hi - dist
                g = np.asarray(reduced_hi(x, dist), dtype=np.float64)
            g = np.where(np.isfinite(g), g, 0.0)
            est = length ** (cell.s + 1.0) * float(np.dot(v, g))
        n_eval += len(x)
        cell.prev = cell.est if cell.history else None
        cell.est = est
        cell.history.append(est)

    for cell in cells:
        run(cell)

    def order_capped(mode, doublings):
        cap = _GJ_MAX_ORDER if mode != "plain" else _GL_MAX_ORDER
        return (_BASE_ORDER << doublings) >= cap

    diverged = False
    for _ in range(_MAX_ROUNDS):
        active = [c for c in cells
                  if not (c.converged or c.diverged or c.replaced
                          or c.stalled)]
        if not active:
            break
        total_scale = max((abs(c.est) for c in cells if not c.replaced),
                          default=0.0)
        new_cells = []
        for cell in active:
            at_cap = (cell.doublings >= max_doublings
                      or order_capped(cell.mode, cell.doublings))
            want_split = at_cap  # burned out: refine by splitting instead
            if not at_cap:
                cell.doublings += 1
                run(cell)
                delta = abs(cell.est - cell.prev)
                floor = max(abs(cell.est), 0.01 * total_scale, 1e-300)
                if delta <= tol * floor:
                    cell.converged = True
                    continue
                # cell contributes less than the error budget regardless
                if abs(cell.est) + delta <= 0.01 * tol * max(total_scale, 1e-300):
                    cell.converged = True
                    continue
                h = cell.history
                # growing estimates at a declared non-integrable endpoint
                if (cell.candidate and len(h) >= 4
                        and abs(h[-1]) > 5.0 * abs(h[-4])
                        and abs(h[-1]) > abs(h[-2]) > abs(h[-3])):
                    cell.diverged = True
                    diverged = True
                    continue
                # slow algebraic decay: bisect instead of burning doublings
                if cell.doublings >= 3 and len(h) >= 3:
                    d1 = abs(h[-1] - h[-2])
                    d2 = abs(h[-2] - h[-3])
                    want_split = d2 > 0.0 and d1 / d2 > 0.15
            if not want_split:
                continue
            if n_splits >= _MAX_SPLITS:
                cell.stalled = True
                continue
            # plain cells split evenly; absorbed cells split close to the
            # singular end so residual log factors shrink geometrically
            if cell.mode == "abs_lo":
                mid = cell.lo + 0.125 * (cell.hi - cell.lo)
            elif cell.mode == "abs_hi":
                mid = cell.hi - 0.125 * (cell.hi - cell.lo)
            else:
                mid = 0.5 * (cell.lo + cell.hi)
            if not (cell.lo < mid < cell.hi):
                cell.stalled = True  # width at resolution limit
                continue
            n_splits += 1
            if cell.candidate:
                edge_hist[cell.candidate].append(abs(cell.est))
            lmode = cell.mode if cell.mode == "abs_lo" else "plain"
            rmode = cell.mode if cell.mode == "abs_hi" else "plain"
            left = _Cell(cell.lo, mid, lmode,
                         cell.s if lmode != "plain" else 0.0,
                         cell.gen + 1,
                         "lo" if cell.candidate == "lo" else None)
            right = _Cell(mid, cell.hi, rmode,
                          cell.s if rmode != "plain" else 0.0,
                          cell.gen + 1,
                          "hi" if cell.candidate == "hi" else None)
            child_d = max(0, min(cell.doublings - 2, max_doublings - 1))
            left.doublings = _trim_doublings(child_d, lmode)
            right.doublings = _trim_doublings(child_d, rmode)
            run(left)
            run(right)
            cell.replaced = True
            new_cells.extend([left, right])
        cells.extend(new_cells)
        # non-decaying estimates of the ever-shrinking cell at a declared
        # edge: the tail integral is not vanishing, the endpoint diverges
        for side in ("lo", "hi"):
            hist = edge_hist[side]
            if len(hist) >= 6 and hist[-1] >= 0.95 * hist[-4] \
                    and hist[-1] > 10.0 * tol * max(total_scale, 1e-300):
                for c in cells:
                    if c.candidate == side and not (c.replaced or c.diverged):
                        c.diverged = True
                        diverged = True
        if diverged and all(c.converged or c.diverged or c.replaced
                            for c in cells):
            break

    value = 0.0
    err = 0.0
    slow = False
    for c in cells:
        if c.replaced or c.diverged:
            continue
        value += c.est
        if c.prev is not None:
            err += abs(c.est - c.prev)
        if not c.converged:
            slow = True
    if diverged:
        value = math.inf if value >= 0.0 else -math.inf
    return IntegralResult(value=value, error_estimate=err,
                          converged=not (slow or diverged),
                          diverged=diverged, n_eval=n_eval)
