"""First-order asymptotic laws for spread measures of Rakhmanov densities.

Two limit regimes per family: degree -> infinity at fixed parameter, and
parameter -> infinity at fixed degree. Each supported (family, regime,
quantity) triple carries exactly one leading-order law, transcribed as
printed, correction terms dropped. Known defects of the printed laws are
the verification harness's job to measure and report, not this module's
to repair.

Product-form laws (powers, gamma factors) are stored as log-space
expressions so they can be queried far beyond double-precision overflow;
``value()`` exponentiates on demand and returns ``math.inf`` once the log
leaves the representable range. Entropy laws are additive, may legally be
negative, and are stored as plain expressions.

Branch boundaries are exclusive where the law requires a strict
inequality (large-degree Fisher and CFS laws): asking for Laguerre
alpha = 1 or Gegenbauer lambda = 3/2 raises OutOfBranchError rather than
guessing a side. Boundary equality tests (lambda == 1/2) are exact
floating-point comparisons on the stored parameter.
"""
import math
import sys

from . import ortho_core as oc
from . import special_functions as sf
from .errors import DomainError, OutOfBranchError

DEGREE_TO_INFINITY = "DegreeToInfinity"
PARAMETER_TO_INFINITY = "ParameterToInfinity"

FISHER = "Fisher"
SHANNON_E = "ShannonE"
SHANNON_POWER = "ShannonPower"
W2 = "W2"
CFS = "CFS"
CLMC = "CLMC"
KAPPA_NORM = "KappaNorm"
RENYI_FUNCTIONAL = "RenyiFunctional"
NP_NORM = "NpNorm"

_LN_2 = math.log(2.0)
_LN_PI = math.log(math.pi)
_LN_2PI = math.log(2.0 * math.pi)
_LOG_HUGE = math.log(sys.float_info.max)


def _int_degree(n, minimum):
    if n != int(n) or n < minimum:
        raise DomainError(f"need integer degree >= {minimum}, got {n!r}")
    return int(n)


def _log_log(n):
    # log n factors vanish at n = 1; keep the log form total
    return math.log(math.log(n)) if n > 1 else -math.inf


# domain guards, one per (family, regime)

def _lag_degree_domain(n, alpha):
    n = _int_degree(n, 1)
    if not alpha > -1.0:
        raise DomainError(f"need alpha > -1, got {alpha!r}")
    return n


def _lag_param_domain(n, alpha):
    n = _int_degree(n, 0)
    if not alpha > 0.0:
        raise DomainError(f"large-parameter laws need alpha > 0, got {alpha!r}")
    return n


def _geg_degree_domain(n, lam):
    n = _int_degree(n, 1)
    if not lam > -0.5 or lam == 0.0:
        raise DomainError(f"need lambda > -1/2, lambda != 0, got {lam!r}")
    return n


def _geg_param_domain(n, lam):
    n = _int_degree(n, 0)
    if not lam > 0.0:
        raise DomainError(f"large-parameter laws need lambda > 0, got {lam!r}")
    return n


class AsymptoticFormula:
    """Leading-order law for one (family, regime, quantity) triple.

    Exactly one of the two stored evaluators is set. ``_log_eval`` holds
    product-form laws in log space; ``_lin_eval`` holds additive entropy
    laws whose value can carry either sign.
    """

    __slots__ = ("family", "regime", "quantity", "_domain", "_log_eval",
                 "_lin_eval", "_coeff_free")

    def __init__(self, family, regime, quantity, domain, log_eval=None,
                 lin_eval=None, coeff_free=None):
        if (log_eval is None) == (lin_eval is None):
            raise ValueError("exactly one of log_eval/lin_eval required")
        self.family = family
        self.regime = regime
        self.quantity = quantity
        self._domain = domain
        self._log_eval = log_eval
        self._lin_eval = lin_eval
        self._coeff_free = coeff_free

    @property
    def key(self):
        return (self.family, self.regime, self.quantity)

    def coefficient_free(self, param):
        """True when the law pins only the growth order, not the prefactor.

        Comparisons against such a law must fit the exponent instead of
        expecting a ratio near 1.
        """
        return self._coeff_free is not None and self._coeff_free(param)

    def log_value(self, n, param):
        n = self._domain(n, param)
        if self._log_eval is not None:
            return self._log_eval(n, param)
        v = self._lin_eval(n, param)
        if v <= 0.0:
            raise DomainError(
                f"{self.quantity} law gives {v}; no log form for nonpositive values")
        return math.log(v)

    def value(self, n, param):
        n = self._domain(n, param)
        if self._lin_eval is not None:
            return self._lin_eval(n, param)
        lg = self._log_eval(n, param)
        if lg >= _LOG_HUGE:
            return math.inf
        return math.exp(lg)

    def __repr__(self):
        return (f"AsymptoticFormula({self.family!r}, {self.regime!r}, "
                f"{self.quantity!r})")


# Laguerre, degree -> infinity at fixed alpha

def _lag_deg_fisher(n, alpha):
    if alpha == 0.0:
        return math.log(4.0) + math.log(n)
    if alpha > 1.0:
        return (_LN_2 + math.log(alpha) - math.log(alpha * alpha - 1.0)
                + math.log(n))
    raise OutOfBranchError(
        f"large-degree Fisher law has branches alpha == 0 and alpha > 1, got {alpha!r}")


def _lag_deg_shannon_e(n, alpha):
    # entropy of the density itself, digamma term kept at finite alpha
    return ((alpha + 1.0) * math.log(n) - alpha * sf.digamma(alpha + n + 1.0)
            - 1.0 + _LN_2PI)


def _lag_deg_sp(n, alpha):
    return _LN_2PI - 1.0 + math.log(n)


def _lag_deg_w2(n, alpha):
    return _log_log(n) - 2.0 * _LN_PI - math.log(n)


def _lag_deg_cfs(n, alpha):
    if alpha == 0.0:
        return math.log(8.0 * math.pi) - 3.0 + 3.0 * math.log(n)
    if alpha > 1.0:
        return (math.log(alpha) - math.log(alpha * alpha - 1.0)
                + math.log(4.0 * math.pi) - 3.0 + 3.0 * math.log(n))
    raise OutOfBranchError(
        f"large-degree CFS law has branches alpha == 0 and alpha > 1, got {alpha!r}")


def _lag_deg_clmc(n, alpha):
    return _LN_2 - _LN_PI - 1.0 + _log_log(n)


# Laguerre, alpha -> infinity at fixed degree

def _lag_par_fisher(n, alpha):
    return math.log(2.0 * n + 1.0) - math.log(alpha)


def _lag_par_kappa(n, alpha):
    la = math.log(alpha)
    return (0.5 * _LN_2PI - sf.log_gamma(n + 1.0) + alpha * (la - 1.0)
            + (n + 0.5) * la)


def _lag_par_shannon_e(n, alpha):
    # log of the norm with the degree power alpha^n divided out
    la = math.log(alpha)
    return (0.5 * (_LN_2PI + la) + alpha * (la - 1.0)
            - sf.log_gamma(n + 1.0))


def _lag_par_sp(n, alpha):
    return (0.5 * (_LN_2PI + math.log(alpha)) + n + 0.5
            - sf.log_gamma(n + 1.0))


def _lag_par_w2(n, alpha):
    la = math.log(alpha)
    return (2.0 * n * la - _LN_2 - 2.0 * sf.log_gamma(n + 1.0)
            - 0.5 * (_LN_PI + la))


def _lag_par_cfs(n, alpha):
    return math.log(2.0 * n + 1.0) + 2.0 * n - 2.0 * sf.log_gamma(n + 1.0)


def _lag_par_clmc(n, alpha):
    return (2.0 * n * math.log(alpha) + n + 0.5 - 0.5 * _LN_2
            - 3.0 * sf.log_gamma(n + 1.0))


def _lag_par_renyi(n, alpha):
    # canonical binding of the weighted-norm functional: mu = 2 alpha + 1,
    # exponential rate 2, polynomial power 4, degree n
    return laguerre_renyi_functional_asymptotic(
        2.0 * alpha + 1.0, 2.0, 4.0, n, alpha)


# Gegenbauer, degree -> infinity at fixed lambda

def _geg_deg_fisher(n, lam):
    if lam == 0.5:
        return math.log(4.0) + 3.0 * math.log(n)
    if lam > 1.5:
        return (math.log(2.0 * lam - 1.0) - math.log(lam * lam - lam - 0.75)
                + 3.0 * math.log(n))
    raise OutOfBranchError(
        f"large-degree Fisher law has branches lambda == 1/2 and lambda > 3/2, got {lam!r}")


def _geg_deg_shannon_e(n, lam):
    return _LN_PI + (1.0 - 2.0 * lam) * _LN_2 - 1.0


def _geg_deg_sp(n, lam):
    # constant law: the entropy settles at log pi + (1 - 2 lambda) log 2 - 1
    return _LN_PI + (1.0 - 2.0 * lam) * _LN_2 - 1.0


def _geg_deg_w2(n, lam):
    if lam < 0.5:
        return (1.0 - 2.0 * lam) * math.log(n)
    if lam == 0.5:
        return _log_log(n)
    return (math.log(1.5) - 1.5 * _LN_PI
            + sf.log_gamma(lam - 0.5) - sf.log_gamma(lam))


def _geg_deg_w2_coeff_free(lam):
    # the n^(1-2 lambda) and log n branches carry no printed prefactor
    return lam <= 0.5


def _geg_deg_cfs(n, lam):
    if lam == 0.5:
        return _LN_2PI - 3.0 + 3.0 * math.log(n)
    if lam > 1.5:
        return ((1.0 - 4.0 * lam) * _LN_2 + math.log(2.0 * lam - 1.0) + _LN_PI
                - 3.0 - math.log(lam * lam - lam - 0.75) + 3.0 * math.log(n))
    raise OutOfBranchError(
        f"large-degree CFS law has branches lambda == 1/2 and lambda > 3/2, got {lam!r}")


def _geg_deg_clmc(n, lam):
    if lam < 0.5:
        return (_LN_PI + (1.0 - 2.0 * lam) * _LN_2 - 1.0
                + (1.0 - 2.0 * lam) * math.log(n))
    if lam == 0.5:
        return _LN_PI - 1.0 + _log_log(n)
    return (-2.0 * lam * _LN_2 - 1.0 + math.log(3.0) - 0.5 * _LN_PI
            + sf.log_gamma(lam - 0.5) - sf.log_gamma(lam))


# Gegenbauer, lambda -> infinity at fixed degree

def _geg_par_fisher(n, lam):
    return math.log(4.0 * n + 2.0) + math.log(lam)


def _geg_par_shannon_e(n, lam):
    return 2.0 * n * math.log(2.0 * lam) - 2.0 * sf.log_gamma(n + 1.0)


def _geg_par_sp(n, lam):
    return 2.0 * n * math.log(2.0 * lam) - 2.0 * sf.log_gamma(n + 1.0)


def _geg_par_w2(n, lam):
    return (sf.log_gamma(2.0 * n + 0.5) + 0.5 * math.log(lam) - 0.5 * _LN_2
            - _LN_PI - 2.0 * sf.log_gamma(n + 1.0))


def _geg_par_cfs(n, lam):
    return (4.0 * n * _LN_2 + math.log(2.0 * n + 1.0)
            + (4.0 * n + 1.0) * math.log(lam)
            - 4.0 * sf.log_gamma(n + 1.0) - _LN_PI - 1.0)


def _geg_par_clmc(n, lam):
    # as printed; coincides with W2 x ShannonPower only at n = 0
    return (0.5 * (n - 1.0) * _LN_2 + sf.log_gamma(2.0 * n + 0.5)
            + 0.5 * (n + 1.0) * math.log(lam) - _LN_PI
            - 2.5 * sf.log_gamma(n + 1.0))


def _geg_par_np(n, lam):
    return gegenbauer_Np_asymptotic(n, lam, 2.0)


_FORMULAS = {}


def _register(family, regime, quantity, domain, log_eval=None, lin_eval=None,
              coeff_free=None):
    f = AsymptoticFormula(family, regime, quantity, domain, log_eval=log_eval,
                          lin_eval=lin_eval, coeff_free=coeff_free)
    _FORMULAS[f.key] = f


_register(oc.LAGUERRE, DEGREE_TO_INFINITY, FISHER, _lag_degree_domain,
          log_eval=_lag_deg_fisher)
_register(oc.LAGUERRE, DEGREE_TO_INFINITY, SHANNON_E, _lag_degree_domain,
          lin_eval=_lag_deg_shannon_e)
_register(oc.LAGUERRE, DEGREE_TO_INFINITY, SHANNON_POWER, _lag_degree_domain,
          log_eval=_lag_deg_sp)
_register(oc.LAGUERRE, DEGREE_TO_INFINITY, W2, _lag_degree_domain,
          log_eval=_lag_deg_w2)
_register(oc.LAGUERRE, DEGREE_TO_INFINITY, CFS, _lag_degree_domain,
          log_eval=_lag_deg_cfs)
_register(oc.LAGUERRE, DEGREE_TO_INFINITY, CLMC, _lag_degree_domain,
          log_eval=_lag_deg_clmc)

_register(oc.LAGUERRE, PARAMETER_TO_INFINITY, FISHER, _lag_param_domain,
          log_eval=_lag_par_fisher)
_register(oc.LAGUERRE, PARAMETER_TO_INFINITY, KAPPA_NORM, _lag_param_domain,
          log_eval=_lag_par_kappa)
_register(oc.LAGUERRE, PARAMETER_TO_INFINITY, SHANNON_E, _lag_param_domain,
          lin_eval=_lag_par_shannon_e)
_register(oc.LAGUERRE, PARAMETER_TO_INFINITY, SHANNON_POWER, _lag_param_domain,
          log_eval=_lag_par_sp)
_register(oc.LAGUERRE, PARAMETER_TO_INFINITY, W2, _lag_param_domain,
          log_eval=_lag_par_w2)
_register(oc.LAGUERRE, PARAMETER_TO_INFINITY, CFS, _lag_param_domain,
          log_eval=_lag_par_cfs)
_register(oc.LAGUERRE, PARAMETER_TO_INFINITY, CLMC, _lag_param_domain,
          log_eval=_lag_par_clmc)
_register(oc.LAGUERRE, PARAMETER_TO_INFINITY, RENYI_FUNCTIONAL,
          _lag_param_domain, log_eval=_lag_par_renyi)

_register(oc.GEGENBAUER, DEGREE_TO_INFINITY, FISHER, _geg_degree_domain,
          log_eval=_geg_deg_fisher)
_register(oc.GEGENBAUER, DEGREE_TO_INFINITY, SHANNON_E, _geg_degree_domain,
          lin_eval=_geg_deg_shannon_e)
_register(oc.GEGENBAUER, DEGREE_TO_INFINITY, SHANNON_POWER, _geg_degree_domain,
          log_eval=_geg_deg_sp)
_register(oc.GEGENBAUER, DEGREE_TO_INFINITY, W2, _geg_degree_domain,
          log_eval=_geg_deg_w2, coeff_free=_geg_deg_w2_coeff_free)
_register(oc.GEGENBAUER, DEGREE_TO_INFINITY, CFS, _geg_degree_domain,
          log_eval=_geg_deg_cfs)
_register(oc.GEGENBAUER, DEGREE_TO_INFINITY, CLMC, _geg_degree_domain,
          log_eval=_geg_deg_clmc)

_register(oc.GEGENBAUER, PARAMETER_TO_INFINITY, FISHER, _geg_param_domain,
          log_eval=_geg_par_fisher)
_register(oc.GEGENBAUER, PARAMETER_TO_INFINITY, SHANNON_E, _geg_param_domain,
          lin_eval=_geg_par_shannon_e)
_register(oc.GEGENBAUER, PARAMETER_TO_INFINITY, SHANNON_POWER,
          _geg_param_domain, log_eval=_geg_par_sp)
_register(oc.GEGENBAUER, PARAMETER_TO_INFINITY, W2, _geg_param_domain,
          log_eval=_geg_par_w2)
_register(oc.GEGENBAUER, PARAMETER_TO_INFINITY, CFS, _geg_param_domain,
          log_eval=_geg_par_cfs)
_register(oc.GEGENBAUER, PARAMETER_TO_INFINITY, CLMC, _geg_param_domain,
          log_eval=_geg_par_clmc)
_register(oc.GEGENBAUER, PARAMETER_TO_INFINITY, NP_NORM, _geg_param_domain,
          log_eval=_geg_par_np)


def formula_for(family, regime, quantity):
    """Look up the registered law; DomainError when the triple has none."""
    try:
        return _FORMULAS[(family, regime, quantity)]
    except KeyError:
        raise DomainError(
            f"no first-order law for ({family!r}, {regime!r}, {quantity!r})") from None


def formulas():
    """All registered (family, regime, quantity) keys, sorted."""
    return sorted(_FORMULAS)


def laguerre_degree_asymptotic(quantity, n, alpha, log=False):
    """Large-degree law for a Laguerre spread measure at fixed alpha.

    n >= 1, alpha > -1. Fisher and CFS laws exist only on the branches
    alpha == 0 and alpha > 1 (boundary exclusive); elsewhere they raise
    OutOfBranchError. With log=True returns the natural log instead.
    """
    f = formula_for(oc.LAGUERRE, DEGREE_TO_INFINITY, quantity)
    return f.log_value(n, alpha) if log else f.value(n, alpha)


def laguerre_parameter_asymptotic(quantity, n, alpha, log=False):
    """Large-parameter law for a Laguerre spread measure at fixed degree.

    n >= 0, alpha > 0. Product laws grow like alpha^(2n) and (alpha/e)^alpha,
    so prefer log=True for large arguments; value() saturates to math.inf
    past the double range.
    """
    f = formula_for(oc.LAGUERRE, PARAMETER_TO_INFINITY, quantity)
    return f.log_value(n, alpha) if log else f.value(n, alpha)


def laguerre_renyi_functional_asymptotic(mu, lam, kap, m, alpha):
    """Log of the weighted Laguerre norm functional at large weight parameter.

    Estimates ln of integral_0^inf x^(mu-1) e^(-lam x) |L_m(x)|^kap dx for
    alpha -> infinity, at first order:

        kap m ln(alpha) + ln Gamma(mu) - mu ln(lam) - kap ln(m!).

    Binding mu = 2 alpha + 1, lam = 2, kap = 4, m = n reproduces the W2
    pipeline for the squared density.
    """
    if not (mu > 0.0 and lam > 0.0 and kap > 0.0):
        raise DomainError(
            f"need mu, lam, kap > 0, got {mu!r}, {lam!r}, {kap!r}")
    m = _int_degree(m, 0)
    if not alpha > 0.0:
        raise DomainError(f"large-parameter laws need alpha > 0, got {alpha!r}")
    return (kap * m * math.log(alpha) + sf.log_gamma(mu)
            - mu * math.log(lam) - kap * sf.log_gamma(m + 1.0))


def gegenbauer_degree_asymptotic(quantity, n, lam, log=False):
    """Large-degree law for a Gegenbauer spread measure at fixed lambda.

    n >= 1, lambda > -1/2 and lambda != 0. Fisher and CFS laws exist only
    at lambda == 1/2 and on lambda > 3/2 (boundary exclusive); elsewhere
    they raise OutOfBranchError. The W2 branches below lambda = 1/2 carry
    no printed prefactor; coefficient_free() on the formula flags them.
    """
    f = formula_for(oc.GEGENBAUER, DEGREE_TO_INFINITY, quantity)
    return f.log_value(n, lam) if log else f.value(n, lam)


def gegenbauer_parameter_asymptotic(quantity, n, lam, log=False):
    """Large-parameter law for a Gegenbauer spread measure at fixed degree.

    n >= 0, lambda > 0. Product laws grow like lambda^(4n+1), so prefer
    log=True for large arguments.
    """
    f = formula_for(oc.GEGENBAUER, PARAMETER_TO_INFINITY, quantity)
    return f.log_value(n, lam) if log else f.value(n, lam)


def gegenbauer_Np_asymptotic(n, lam, p):
    """Log of the weighted p-norm of the orthogonal Gegenbauer polynomial.

    Estimates ln of integral_-1^1 (1-x^2)^(lambda-1/2) |C_n(x)|^p dx for
    lambda -> infinity via the x^n limit profile:

        p ln C_n(1) + ln Gamma((1+np)/2) + ln Gamma(1/2+lambda)
        - ln Gamma(1+lambda+np/2).

    The middle weight factor is Gamma(1/2+lambda), which makes the value
    exact for n = 0 (any p: the integral is the Beta function
    B(1/2, lambda+1/2)) and for n = 1 (C_1 is proportional to x exactly).
    """
    n = _int_degree(n, 0)
    if not lam > 0.0:
        raise DomainError(f"large-parameter laws need lambda > 0, got {lam!r}")
    if not p > 0.0:
        raise DomainError(f"need norm order p > 0, got {p!r}")
    log_cn1 = sf.log_gamma_ratio(n + 2.0 * lam, 2.0 * lam) - sf.log_gamma(n + 1.0)
    half_np = 0.5 * n * p
    return (p * log_cn1 + sf.log_gamma(0.5 + half_np)
            + sf.log_gamma(lam + 0.5) - sf.log_gamma(lam + 1.0 + half_np))
