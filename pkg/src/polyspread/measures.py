"""Spreading measures of Rakhmanov densities rho_n = p_n^2 h.

Closed forms are used where they exist; everything else goes through exact
Gauss rules (polynomial integrands) or adaptive quadrature subdivided at the
polynomial zeros.  All potentially huge quantities (norms, weights,
densities) are carried in log space and exponentiated once at the end.

Integration windows: the density support is truncated where log rho drops
below the underflow-relevant cutoff, found by geometric probing away from
the extreme zeros.  A window edge coincides with a finite support endpoint
only when the density stays relevant all the way in; the endpoint's
algebraic exponent is then declared to the integrator.  Integrands carrying
a residual ln h factor (the weight-entropy integral and the one-piece
Shannon integral) get the endpoint neighbourhood integrated in the variable
u = ln(w/d) instead, which turns d^s ln d into a decaying exponential times
a linear factor and needs no evaluations closer to the endpoint than the
floating-point grid allows.
"""
import math

import numpy as np

from . import ortho_core as oc
from . import quadrature as quad
from . import special_functions as sf
from .errors import DomainError, NumericalError

# ln of the smallest positive normal double; below this the x ln x -> 0
# underflow policy zeroes integrand contributions
LOG_TINY = math.log(2.2250738585072014e-308)

_LN_2PI_E = math.log(2.0 * math.pi) + 1.0

# method enum
CLOSED_FORM = "ClosedForm"
EXACT_QUADRATURE = "ExactQuadrature"
ADAPTIVE_QUADRATURE = "AdaptiveQuadrature"

# measure enum
FISHER = "Fisher"
VARIANCE = "Variance"
SHANNON_E = "ShannonE"
INTEGRAL_I = "IntegralI"
SHANNON_S = "ShannonS"
SHANNON_POWER = "ShannonPower"
RENYI_Q = "RenyiQ"
ENTROPIC_MOMENT_WQ = "EntropicMomentWq"
CRAMER_RAO = "CramerRao"
FISHER_SHANNON = "FisherShannon"
LMC = "LMC"

_METHOD_RANK = {CLOSED_FORM: 0, EXACT_QUADRATURE: 1, ADAPTIVE_QUADRATURE: 2}


class MeasureValue:
    """Value of one spreading measure with provenance.

    method is one of ClosedForm / ExactQuadrature / AdaptiveQuadrature;
    the first two are deterministic, so their error_estimate is 0.
    regime carries the divergence tag ("divergent") when value is +inf.
    """

    __slots__ = ("measure", "value", "method", "error_estimate", "regime")

    def __init__(self, measure, value, method, error_estimate=0.0, regime=""):
        self.measure = measure
        self.value = value
        self.method = method
        self.error_estimate = error_estimate
        self.regime = regime

    @property
    def diverged(self):
        return self.regime == "divergent"

    def __repr__(self):
        extra = f", regime={self.regime!r}" if self.regime else ""
        return (f"MeasureValue({self.measure}, {self.value!r}, {self.method}, "
                f"err={self.error_estimate:.3g}{extra})")

    def __float__(self):
        return float(self.value)


def _worst_method(*methods):
    return max(methods, key=_METHOD_RANK.__getitem__)


# ---------------------------------------------------------------------------
# integration windows


def _log_density(family, n):
    def f(x):
        return oc.log_rakhmanov_density(family, n, np.asarray(x, dtype=np.float64))
    return f


def _window(family, n, cut):
    """Truncated integration window [x_lo, x_hi] for the Rakhmanov density.

    cut > 0: probe until log rho < -cut.  Returns (x_lo, x_hi, zeros,
    include_lo, include_hi); include flags say the window runs all the way
    into a finite support endpoint (density still relevant there).
    """
    logrho = _log_density(family, n)
    zs = oc.zeros(family, n) if n >= 1 else np.empty(0)
    lo, hi = family.support

    def probe_out(start, scale):
        # march away from the bulk until log rho stays below -cut
        x, step, low = start, max(1.0, 0.05 * scale), 0
        for _ in range(500):
            x += step
            step *= 1.4
            if logrho(np.array([x]))[0] < -cut:
                low += 1
                if low >= 3:
                    return x
            else:
                low = 0
        return x

    def probe_edge(edge, ref):
        # approach a finite endpoint geometrically; True means include it
        d0 = abs(edge - ref)
        if d0 == 0.0:
            return edge, True
        d = d0
        for _ in range(220):
            d *= 0.25
            if d < d0 * 1e-12:
                return edge, True
            x = edge - math.copysign(d, edge - ref)
            if x == edge:
                # d below double resolution at this edge: relevant all the way in
                return edge, True
            if logrho(np.array([x]))[0] < -cut:
                return x, False
        return edge, True

    if family.kind == oc.HERMITE:
        ref = float(zs.max()) if n >= 1 else 0.0
        x_hi = probe_out(ref, abs(ref) + 1.0)
        return -x_hi, x_hi, zs, False, False
    if family.kind == oc.LAGUERRE:
        ref_hi = float(zs.max()) if n >= 1 else family.alpha + 1.0
        ref_lo = float(zs.min()) if n >= 1 else family.alpha + 1.0
        x_hi = probe_out(ref_hi, abs(ref_hi) + 1.0)
        x_lo, include_lo = probe_edge(0.0, max(ref_lo, 1e-300))
        return x_lo, x_hi, zs, include_lo, False
    # Jacobi / Gegenbauer
    ref_hi = float(zs.max()) if n >= 1 else 0.0
    ref_lo = float(zs.min()) if n >= 1 else 0.0
    x_hi, include_hi = probe_edge(1.0, ref_hi)
    x_lo, include_lo = probe_edge(-1.0, ref_lo)
    return x_lo, x_hi, zs, include_lo, include_hi


def _weight_exponents(family):
    """Algebraic exponents of h at (lo, hi) support endpoints, None if none."""
    if family.kind == oc.LAGUERRE:
        return family.alpha, None
    if family.kind == oc.JACOBI:
        return family.beta, family.alpha
    if family.kind == oc.GEGENBAUER:
        s = family.lam - 0.5
        return s, s
    return None, None


def _lh_edge(family, side, dist, ln_dist=None):
    """ln h at distance dist from the support endpoint on the given side.

    Computed from the distance itself, so it stays exact where
    endpoint + dist is no longer representable; ln_dist overrides log(dist)
    for distances below the double underflow threshold.
    """
    ld = np.log(dist) if ln_dist is None else ln_dist
    if family.kind == oc.LAGUERRE:
        return family.alpha * ld - dist
    if family.kind == oc.JACOBI:
        if side == "hi":
            return family.alpha * ld + family.beta * np.log(2.0 - dist)
        return family.beta * ld + family.alpha * np.log(2.0 - dist)
    s = family.lam - 0.5
    return s * (ld + np.log(2.0 - dist))


def _clip_inside(family, x):
    lo, hi = family.support
    lo_in = np.nextafter(lo, hi) if math.isfinite(lo) else lo
    hi_in = np.nextafter(hi, lo) if math.isfinite(hi) else hi
    return np.clip(x, lo_in, hi_in)


def _run_adaptive(family, n, make_integrand, cut, tol, exponent_scale=1.0,
                  endpoint_rule="density"):
    """Shared scaffolding: window, exponents, reduced callbacks, integrate.

    make_integrand(red) -> vectorized f(x, dist=None); red is None for the
    plain integrand or (side, s) for the reduced integrand of an absorbed
    endpoint, which must divide out dist^s using the exact distances.
    endpoint_rule "density" declares exponent_scale times the weight
    exponent s; "fisher" declares s - 2 with the smooth special cases.
    """
    x_lo, x_hi, zs, inc_lo, inc_hi = _window(family, n, cut)
    s_lo_w, s_hi_w = _weight_exponents(family)

    def eff(s):
        if s is None:
            return 0.0
        if endpoint_rule == "fisher":
            return 0.0 if s == 0.0 else s - 2.0
        return s * exponent_scale

    s_lo = eff(s_lo_w) if inc_lo else 0.0
    s_hi = eff(s_hi_w) if inc_hi else 0.0

    f = make_integrand(None)
    red_lo = make_integrand(("lo", s_lo)) if -1.0 < s_lo != 0.0 else None
    red_hi = make_integrand(("hi", s_hi)) if -1.0 < s_hi != 0.0 else None
    return quad.integrate_adaptive(
        f, (x_lo, x_hi), breakpoints=tuple(zs), tol=tol,
        endpoint_exponents=(s_lo, s_hi),
        reduced_lo=red_lo, reduced_hi=red_hi)


# ---------------------------------------------------------------------------
# Fisher information


def fisher_closed(family, n):
    """Printed closed-form Fisher information; +inf in divergent regimes."""
    if n < 0:
        raise DomainError("need n >= 0")
    kind = family.kind
    if kind == oc.HERMITE:
        raise DomainError("no closed-form Fisher branch here; use fisher_numeric")
    if kind == oc.LAGUERRE:
        a = family.alpha
        if a == 0.0:
            return MeasureValue(FISHER, 4.0 * n + 1.0, CLOSED_FORM)
        if a > 1.0:
            val = ((2.0 * n + 1.0) * a + 1.0) / (a * a - 1.0)
            return MeasureValue(FISHER, val, CLOSED_FORM)
        return MeasureValue(FISHER, math.inf, CLOSED_FORM, regime="divergent")
    if kind == oc.GEGENBAUER:
        lam = family.lam
        if lam == 0.5:
            return MeasureValue(FISHER, 2.0 * n * (n + 1.0) * (2.0 * n + 1.0),
                                CLOSED_FORM)
        if lam > 1.5:
            val = (2.0 * (n + lam) * (2.0 * lam - 1.0)
                   * (1.0 + 2.0 * lam + 2.0 * n * (n + 2.0 * lam))
                   / ((2.0 * lam - 3.0) * (1.0 + 2.0 * lam)))
            return MeasureValue(FISHER, val, CLOSED_FORM)
        return MeasureValue(FISHER, math.inf, CLOSED_FORM, regime="divergent")
    if kind == oc.JACOBI:
        a, b = family.alpha, family.beta
        if a == 0.0 and b == 0.0:
            return MeasureValue(FISHER, 2.0 * n * (n + 1.0) * (2.0 * n + 1.0),
                                CLOSED_FORM)
        if a == 0.0 and b > 1.0 or b == 0.0 and a > 1.0:
            if b == 0.0:
                b = a  # reflection x -> -x swaps the parameters
            val = (2.0 * n + b + 1.0) / 4.0 * (
                n * n / (b + 1.0) + n
                + (4.0 * n + 1.0) * (n + b + 1.0)
                + (n + 1.0) ** 2 / (b - 1.0))
            return MeasureValue(FISHER, val, CLOSED_FORM)
        if a > 1.0 and b > 1.0:
            val = (2.0 * n + a + b + 1.0) / (4.0 * (n + a + b - 1.0)) * (
                n * (n + a + b - 1.0)
                * ((n + a) / (b + 1.0) + 2.0 + (n + b) / (a + 1.0))
                + (n + 1.0) * (n + a + b)
                * ((n + a) / (b - 1.0) + 2.0 + (n + b) / (a - 1.0)))
            return MeasureValue(FISHER, val, CLOSED_FORM)
        return MeasureValue(FISHER, math.inf, CLOSED_FORM, regime="divergent")
    raise DomainError(f"unknown family kind {kind!r}")


def fisher_numeric(family, n, tol=1e-10):
    """F = int (rho')^2 / rho by adaptive quadrature, divergence detected.

    rho'^2/rho = h (2 p' + p h'/h)^2; each summand is exponentiated at half
    the density's log scale so the square never leaves double range.
    """
    if n < 0:
        raise DomainError("need n >= 0")

    def make(red):
        def f(x, dist=None):
            x = _clip_inside(family, np.asarray(x, dtype=np.float64))
            sp, lp, sdp, ldp = oc.eval_both_log(family, n, x)
            c = oc.dlog_weight(family, x)
            if red is None:
                half = 0.5 * oc.log_weight(family, x)
            else:
                side, s_red = red
                lh = _lh_edge(family, side, dist)
                half = 0.5 * (lh - s_red * np.log(dist))
            with np.errstate(all="ignore"):
                term = (2.0 * sdp * np.exp(ldp + half)
                        + c * sp * np.exp(lp + half))
                out = term * term
            return np.where(np.isfinite(out), out, 0.0)
        return f

    res = _run_adaptive(family, n, make, cut=800.0, tol=tol,
                        endpoint_rule="fisher")
    if res.diverged:
        return MeasureValue(FISHER, math.inf, ADAPTIVE_QUADRATURE,
                            regime="divergent")
    if not res.converged:
        raise NumericalError("fisher_numeric did not converge")
    return MeasureValue(FISHER, res.value, ADAPTIVE_QUADRATURE,
                        res.error_estimate)


# ---------------------------------------------------------------------------
# moments and variance


def _probability_masses(family, n, order):
    rule = quad.gauss_rule(family, order)
    sp, lp = oc.eval_orthonormal_log(family, n, rule.nodes)
    pm = np.exp(rule.log_weights + 2.0 * lp)
    return rule.nodes, pm


def moment(family, n, k):
    """<x^k> against the Rakhmanov density, exact Gauss quadrature."""
    if k < 0 or k != int(k):
        raise DomainError("need integer k >= 0")
    order = n + (int(k) + 1) // 2 + 1
    x, pm = _probability_masses(family, n, order)
    return MeasureValue(f"Moment{int(k)}", float(np.dot(pm, x ** int(k))),
                        EXACT_QUADRATURE)


def variance(family, n):
    x, pm = _probability_masses(family, n, n + 2)
    m1 = float(np.dot(pm, x))
    # central two-pass form keeps the exact-rule result nonnegative
    val = float(np.dot(pm, (x - m1) ** 2))
    return MeasureValue(VARIANCE, val, EXACT_QUADRATURE)


# ---------------------------------------------------------------------------
# entropic moments and Renyi entropies


def _log_Wq_exact(family, n, q):
    order = max(int(math.ceil(q * n)) + 1, 1)
    rule = quad.shifted_rule_for_entropic_moment(family, n, q, order=order)
    sp, lp = oc.eval_orthonormal_log(family, n, rule.nodes)
    a = rule.log_weights + 2.0 * q * lp
    m = a.max()
    return float(m + math.log(np.exp(a - m).sum()))


def _log_Wq_adaptive(family, n, q, tol):
    def make(red):
        def f(x, dist=None):
            x = _clip_inside(family, np.asarray(x, dtype=np.float64))
            sp, lp = oc.eval_orthonormal_log(family, n, x)
            if red is None:
                lr = q * (2.0 * lp + oc.log_weight(family, x))
            else:
                side, s_red = red
                lr = (q * (2.0 * lp + _lh_edge(family, side, dist))
                      - s_red * np.log(dist))
            out = np.zeros_like(lr)
            ok = lr >= LOG_TINY
            out[ok] = np.exp(lr[ok])
            return out
        return f

    cut = 40.0 + 760.0 / min(q, 1.0)
    res = _run_adaptive(family, n, make, cut=cut, tol=tol, exponent_scale=q)
    if res.diverged:
        raise NumericalError(f"entropic moment W_q diverges for q={q}")
    if not res.converged:
        raise NumericalError("entropic moment quadrature did not converge")
    return res.value, res.error_estimate


def _check_shifted_exists(family, q):
    # divergence of int h^q * (polynomial)^2q happens exactly when the
    # shifted parameter leaves the valid range
    if family.kind == oc.LAGUERRE and not q * family.alpha > -1.0:
        raise DomainError(f"W_q diverges: q*alpha = {q * family.alpha} <= -1")
    if family.kind == oc.GEGENBAUER and not q * family.lam - (q - 1.0) / 2.0 > -0.5:
        raise DomainError("W_q diverges: shifted lambda out of range")
    if family.kind == oc.JACOBI and not (q * family.alpha > -1.0
                                         and q * family.beta > -1.0):
        raise DomainError("W_q diverges: shifted Jacobi parameter out of range")


def _log_entropic_moment(family, n, q, tol=1e-10):
    """(log W_q, method, relative error)."""
    if q <= 0:
        raise DomainError("need q > 0")
    if q == 1.0:
        return 0.0, EXACT_QUADRATURE, 0.0  # normalization
    if q == round(q) or n == 0:
        # |p_n|^2q is a polynomial (or constant): the shifted rule is exact
        # and raises DomainError exactly when the powered weight diverges
        return _log_Wq_exact(family, n, q), EXACT_QUADRATURE, 0.0
    # non-integer power of the polynomial part: adaptive
    _check_shifted_exists(family, q)
    value, err = _log_Wq_adaptive(family, n, q, tol)
    if value <= 0.0:
        raise NumericalError("entropic moment came out nonpositive")
    return math.log(value), ADAPTIVE_QUADRATURE, err / value


def entropic_moment_Wq(family, n, q, tol=1e-10):
    lw, method, lerr = _log_entropic_moment(family, n, q, tol)
    val = math.exp(lw)
    return MeasureValue(ENTROPIC_MOMENT_WQ, val, method,
                        0.0 if method == EXACT_QUADRATURE else val * lerr)


def renyi_entropy(family, n, q, tol=1e-10):
    """R_q = ln(W_q)/(1-q), computed from log W_q directly."""
    if q == 1.0:
        raise DomainError("Renyi order q=1 is the Shannon limit; use shannon_S")
    lw, method, lerr = _log_entropic_moment(family, n, q, tol)
    return MeasureValue(RENYI_Q, lw / (1.0 - q), method,
                        0.0 if method == EXACT_QUADRATURE else abs(lerr / (1.0 - q)))


# ---------------------------------------------------------------------------
# Shannon entropy S = E + I


def _psi(z):
    # digamma continued left of zero through psi(z) = psi(z+1) - 1/z;
    # callers guarantee z is never a nonpositive integer
    acc = 0.0
    while z < 0.5:
        acc -= 1.0 / z
        z += 1.0
    return acc + sf.digamma(z)


def integral_I_closed(family, n):
    """I = -int rho ln h for the families with a closed form."""
    if n < 0:
        raise DomainError("need n >= 0")
    if family.kind == oc.LAGUERRE:
        a = family.alpha
        val = 2.0 * n + a + 1.0 - a * sf.digamma(a + n + 1.0)
        return MeasureValue(INTEGRAL_I, val, CLOSED_FORM)
    if family.kind == oc.GEGENBAUER:
        lam = family.lam
        val = (2.0 * lam - 1.0) * (0.5 / (n + lam) + math.log(2.0)
                                   + _psi(n + lam) - _psi(n + 2.0 * lam))
        return MeasureValue(INTEGRAL_I, val, CLOSED_FORM)
    raise DomainError("closed-form I covers Laguerre and Gegenbauer only")


def _edge_zone_plan(family, n, cut):
    """Window with fractional-exponent endpoint neighbourhoods carved out.

    Returns (b_lo, b_hi, zeros, zones); each zone is (side, edge, sigma, w,
    s_w) and covers (edge, edge + sigma*w], left to a log-aware integrator.
    """
    x_lo, x_hi, zs, inc_lo, inc_hi = _window(family, n, cut)
    s_lo_w, s_hi_w = _weight_exponents(family)
    lo, hi = family.support
    b_lo, b_hi = x_lo, x_hi
    zones = []
    if inc_lo and s_lo_w is not None and s_lo_w != round(s_lo_w):
        w = 0.125 * (x_hi - x_lo)
        if len(zs):
            w = min(w, 0.5 * (float(zs[0]) - lo))
        zones.append(("lo", lo, 1.0, w, s_lo_w))
        b_lo = lo + w
    if inc_hi and s_hi_w is not None and s_hi_w != round(s_hi_w):
        w = 0.125 * (x_hi - x_lo)
        if len(zs):
            w = min(w, 0.5 * (hi - float(zs[-1])))
        zones.append(("hi", hi, -1.0, w, s_hi_w))
        b_hi = hi - w
    return b_lo, b_hi, zs, zones


def _zone_integral(family, n, zone, factor, tol):
    """Integral of factor(2 ln|p|, ln h) * rho over an endpoint zone.

    Substituting d = w e^{-u} turns the d^s (a + b ln d) endpoint behaviour
    into a decaying exponential with a linear factor; distances enter only
    through ln d = ln w - u, so arbitrarily small d costs nothing.
    """
    side, edge, sigma, w, s_w = zone
    lnw = math.log(w)
    u_hi = 40.0 + 810.0 / (s_w + 1.0)

    def f(u):
        u = np.asarray(u, dtype=np.float64)
        ln_d = lnw - u
        d = np.exp(ln_d)
        x = edge + sigma * d
        sp, lp = oc.eval_orthonormal_log(family, n, x)
        lh = _lh_edge(family, side, d, ln_dist=ln_d)
        total = 2.0 * lp + lh + ln_d
        fac = factor(2.0 * lp, lh)
        out = np.zeros_like(u)
        ok = (total >= LOG_TINY) & np.isfinite(fac)
        out[ok] = fac[ok] * np.exp(total[ok])
        return out

    rungs, r = [], 2.0
    while r < u_hi:
        rungs.append(r)
        r *= 2.0
    return quad.integrate_adaptive(f, (0.0, u_hi), breakpoints=tuple(rungs),
                                   tol=tol)


def _integrate_log_factor(family, n, factor, tol):
    """Adaptive integral of factor(2 ln|p|, ln h) * rho over the support.

    factor returns a slowly varying (logarithmic) array; endpoint zones
    with fractional weight exponents go through the u-substitution.
    """
    b_lo, b_hi, zs, zones = _edge_zone_plan(family, n, 790.0)

    def f(x):
        x = np.asarray(x, dtype=np.float64)
        sp, lp = oc.eval_orthonormal_log(family, n, x)
        lh = oc.log_weight(family, x)
        lr = 2.0 * lp + lh
        fac = factor(2.0 * lp, lh)
        out = np.zeros_like(lr)
        ok = (lr >= LOG_TINY) & np.isfinite(fac)
        out[ok] = fac[ok] * np.exp(lr[ok])
        return out

    bps = tuple(z for z in zs if b_lo < z < b_hi)
    res = quad.integrate_adaptive(f, (b_lo, b_hi), breakpoints=bps, tol=tol)
    value, err, converged = res.value, res.error_estimate, res.converged
    for zone in zones:
        zres = _zone_integral(family, n, zone, factor, tol)
        value += zres.value
        err += zres.error_estimate
        converged = converged and zres.converged
    if not converged:
        raise NumericalError("entropy quadrature did not converge")
    return value, err


def _integral_I_numeric(family, n, tol=1e-10):
    if family.kind == oc.HERMITE:
        # ln h = -x^2, so I = <x^2>: exact polynomial quadrature
        m2 = moment(family, n, 2)
        return MeasureValue(INTEGRAL_I, m2.value, EXACT_QUADRATURE)
    value, err = _integrate_log_factor(family, n, lambda lp2, lh: -lh, tol)
    return MeasureValue(INTEGRAL_I, value, ADAPTIVE_QUADRATURE, err)


def _integral_I(family, n, tol=1e-10):
    if family.kind in (oc.LAGUERRE, oc.GEGENBAUER):
        return integral_I_closed(family, n)
    return _integral_I_numeric(family, n, tol)


def shannon_E_numeric(family, n, tol=1e-10):
    """E = -int p^2 h ln p^2 over the support (orthonormal polynomial)."""

    def make(red):
        def f(x, dist=None):
            x = _clip_inside(family, np.asarray(x, dtype=np.float64))
            sp, lp = oc.eval_orthonormal_log(family, n, x)
            if red is None:
                lr = 2.0 * lp + oc.log_weight(family, x)
            else:
                side, s_red = red
                lr = (2.0 * lp + _lh_edge(family, side, dist)
                      - s_red * np.log(dist))
            out = np.zeros_like(lr)
            ok = lr >= LOG_TINY   # excludes the zeros, x ln x -> 0
            out[ok] = -2.0 * lp[ok] * np.exp(lr[ok])
            return out
        return f

    res = _run_adaptive(family, n, make, cut=790.0, tol=tol)
    if not res.converged:
        raise NumericalError("Shannon E quadrature did not converge")
    return MeasureValue(SHANNON_E, res.value, ADAPTIVE_QUADRATURE,
                        res.error_estimate)


def shannon_S(family, n, tol=1e-10):
    e = shannon_E_numeric(family, n, tol)
    i = _integral_I(family, n, tol)
    return MeasureValue(SHANNON_S, e.value + i.value,
                        _worst_method(e.method, i.method),
                        e.error_estimate + i.error_estimate)


def _shannon_direct(family, n, tol=1e-10):
    """S = -int rho ln rho in one piece; cross-check for E + I."""
    value, err = _integrate_log_factor(
        family, n, lambda lp2, lh: -(lp2 + lh), tol)
    return MeasureValue(SHANNON_S, value, ADAPTIVE_QUADRATURE, err)


def shannon_power(family, n, tol=1e-10):
    s = shannon_S(family, n, tol)
    return MeasureValue(SHANNON_POWER, math.exp(s.value), s.method,
                        math.exp(s.value) * s.error_estimate)


# ---------------------------------------------------------------------------
# complexities (log-space products, exponentiated once)


def _fisher_best(family, n, tol):
    if family.kind == oc.HERMITE:
        return fisher_numeric(family, n, tol)
    return fisher_closed(family, n)


def cramer_rao(family, n, tol=1e-10):
    f = _fisher_best(family, n, tol)
    v = variance(family, n)
    method = _worst_method(f.method, v.method)
    if f.value == math.inf:
        return MeasureValue(CRAMER_RAO, math.inf, method, regime="divergent")
    if f.value == 0.0:
        return MeasureValue(CRAMER_RAO, 0.0, method)
    val = math.exp(math.log(f.value) + math.log(v.value))
    rel = f.error_estimate / f.value if f.value else 0.0
    return MeasureValue(CRAMER_RAO, val, method, val * rel)


def fisher_shannon(family, n, tol=1e-10):
    f = _fisher_best(family, n, tol)
    s = shannon_S(family, n, tol)
    method = _worst_method(f.method, s.method)
    if f.value == math.inf:
        return MeasureValue(FISHER_SHANNON, math.inf, method, regime="divergent")
    if f.value == 0.0:
        return MeasureValue(FISHER_SHANNON, 0.0, method)
    val = math.exp(math.log(f.value) + 2.0 * s.value - _LN_2PI_E)
    rel = (f.error_estimate / f.value if f.value else 0.0) + 2.0 * s.error_estimate
    return MeasureValue(FISHER_SHANNON, val, method, val * rel)


def lmc(family, n, tol=1e-10):
    lw, wq_method, lerr = _log_entropic_moment(family, n, 2.0, tol)
    s = shannon_S(family, n, tol)
    method = _worst_method(wq_method, s.method)
    val = math.exp(lw + s.value)
    return MeasureValue(LMC, val, method, val * (lerr + s.error_estimate))
