"""Polynomial families: weights, recurrences, normalization, densities.

The four supported families and every constant here follow the classical
hypergeometric-polynomial conventions:

    Hermite     h(x) = exp(-x^2)            on (-inf, inf)
    Laguerre    h(x) = x^alpha exp(-x)      on (0, inf),   alpha > -1
    Jacobi      h(x) = (1-x)^a (1+x)^b      on (-1, 1),    a, b > -1
    Gegenbauer  h(x) = (1-x^2)^(lambda-1/2) on (-1, 1),    lambda > -1/2, != 0

Orthonormal polynomials are generated by the positive three-term recurrence
(b_k > 0, p_0 > 0), which fixes every leading coefficient positive.  The
classical (orthogonal) normalizations enter only through kappa_n.
"""
import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import kernels
from .errors import DomainError, NumericalError
from .special_functions import log_gamma, log_gamma_ratio

_LN2 = math.log(2.0)
_LN_PI = math.log(math.pi)

HERMITE = "hermite"
LAGUERRE = "laguerre"
JACOBI = "jacobi"
GEGENBAUER = "gegenbauer"


@dataclass(frozen=True)
class PolynomialFamily:
    """One classical family plus its weight parameter(s)."""
    kind: str
    alpha: float = 0.0
    beta: float = 0.0
    lam: float = 0.0

    def __post_init__(self):
        if self.kind == HERMITE:
            pass
        elif self.kind == LAGUERRE:
            if not self.alpha > -1.0:
                raise DomainError(f"Laguerre requires alpha > -1, got {self.alpha}")
        elif self.kind == JACOBI:
            if not (self.alpha > -1.0 and self.beta > -1.0):
                raise DomainError(
                    f"Jacobi requires alpha, beta > -1, got {self.alpha}, {self.beta}")
        elif self.kind == GEGENBAUER:
            if not self.lam > -0.5 or self.lam == 0.0:
                raise DomainError(
                    f"Gegenbauer requires lambda > -1/2 and lambda != 0, got {self.lam}")
        else:
            raise DomainError(f"unknown family kind {self.kind!r}")

    @property
    def support(self):
        if self.kind == HERMITE:
            return (-math.inf, math.inf)
        if self.kind == LAGUERRE:
            return (0.0, math.inf)
        return (-1.0, 1.0)

    def describe(self):
        if self.kind == HERMITE:
            return "hermite"
        if self.kind == LAGUERRE:
            return f"laguerre(alpha={self.alpha:g})"
        if self.kind == JACOBI:
            return f"jacobi(alpha={self.alpha:g}, beta={self.beta:g})"
        return f"gegenbauer(lambda={self.lam:g})"


def hermite():
    return PolynomialFamily(HERMITE)


def laguerre(alpha):
    return PolynomialFamily(LAGUERRE, alpha=float(alpha))


def jacobi(alpha, beta):
    return PolynomialFamily(JACOBI, alpha=float(alpha), beta=float(beta))


def gegenbauer(lam):
    return PolynomialFamily(GEGENBAUER, lam=float(lam))


# ---------------------------------------------------------------------------
# recurrence


def _jacobi_diag(alpha, beta, ks):
    s = alpha + beta
    out = np.empty(ks.shape)
    k0 = ks == 0
    out[k0] = (beta - alpha) / (s + 2.0)
    k = ks[~k0]
    out[~k0] = (beta * beta - alpha * alpha) / ((2 * k + s) * (2 * k + s + 2.0))
    return out


def _jacobi_off(alpha, beta, ks):
    # b_k for k >= 1
    s = alpha + beta
    out = np.empty(ks.shape)
    k1 = ks == 1
    out[k1] = math.sqrt(4.0 * (1 + alpha) * (1 + beta) / ((2 + s) ** 2 * (3 + s)))
    k = ks[~k1]
    out[~k1] = np.sqrt(
        4.0 * k * (k + alpha) * (k + beta) * (k + s)
        / ((2 * k + s) ** 2 * (2 * k + s + 1.0) * (2 * k + s - 1.0)))
    return out


def recurrence_arrays(family, m):
    """Jacobi-matrix entries: diag a_0..a_{m-1} and off b_1..b_{m-1}."""
    if m < 1:
        raise DomainError("need m >= 1")
    ks = np.arange(m, dtype=np.float64)
    ko = np.arange(1, m, dtype=np.float64)
    if family.kind == HERMITE:
        return np.zeros(m), np.sqrt(ko / 2.0)
    if family.kind == LAGUERRE:
        a = family.alpha
        return 2.0 * ks + a + 1.0, np.sqrt(ko * (ko + a))
    if family.kind == JACOBI:
        return (_jacobi_diag(family.alpha, family.beta, ks),
                _jacobi_off(family.alpha, family.beta, ko))
    # Gegenbauer shares the symmetric-Jacobi recurrence with a=b=lam-1/2
    a = family.lam - 0.5
    return np.zeros(m), _jacobi_off(a, a, ko)


def recurrence_coefficients(family, k):
    """(a_k, b_k) of the orthonormal recurrence; b_0 is returned as 0."""
    if k < 0:
        raise DomainError("need k >= 0")
    diag, off = recurrence_arrays(family, k + 1)
    b = 0.0 if k == 0 else float(off[-1])
    return float(diag[-1]), b


# ---------------------------------------------------------------------------
# normalization and weight


def log_norm_kappa(family, n):
    """ln kappa_n, stable for n and parameters up to ~1e6."""
    if n < 0:
        raise DomainError("need n >= 0")
    n = int(n)
    if family.kind == HERMITE:
        return 0.5 * _LN_PI + log_gamma(n + 1.0) + n * _LN2
    if family.kind == LAGUERRE:
        return log_gamma_ratio(n + family.alpha + 1.0, n + 1.0)
    if family.kind == JACOBI:
        a, b = family.alpha, family.beta
        if n == 0:
            return ((a + b + 1.0) * _LN2 + log_gamma(a + 1.0) + log_gamma(b + 1.0)
                    - log_gamma(a + b + 2.0))
        return ((a + b + 1.0) * _LN2 + log_gamma(a + n + 1.0) + log_gamma(b + n + 1.0)
                - log_gamma(n + 1.0) - math.log(a + b + 2.0 * n + 1.0)
                - log_gamma(a + b + n + 1.0))
    lam = family.lam
    if n == 0:
        return 0.5 * _LN_PI + log_gamma_ratio(lam + 0.5, lam + 1.0)
    # kappa_n = 2^(1-2l) pi l^2 G(n+2l) / (G(l+1)^2 (n+l) n!)  [l<0 safe]
    return ((1.0 - 2.0 * lam) * _LN2 + _LN_PI + log_gamma(n + 2.0 * lam)
            - 2.0 * log_gamma(lam + 1.0) + 2.0 * math.log(abs(lam))
            - math.log(n + lam) - log_gamma(n + 1.0))


def _check_in_support(family, x):
    lo, hi = family.support
    x = np.asarray(x, dtype=np.float64)
    if np.any(x <= lo) or np.any(x >= hi):
        raise DomainError(f"x outside open support ({lo}, {hi})")
    return x


def log_weight(family, x):
    """ln h(x) for x strictly inside the support (scalar or array)."""
    xa = _check_in_support(family, x)
    if family.kind == HERMITE:
        out = -xa * xa
    elif family.kind == LAGUERRE:
        out = family.alpha * np.log(xa) - xa
    elif family.kind == JACOBI:
        out = family.alpha * np.log1p(-xa) + family.beta * np.log1p(xa)
    else:
        out = (family.lam - 0.5) * (np.log1p(-xa) + np.log1p(xa))
    return out if out.ndim else float(out)


def dlog_weight(family, x):
    """d/dx ln h(x) = h'(x)/h(x) inside the open support."""
    xa = _check_in_support(family, x)
    if family.kind == HERMITE:
        out = -2.0 * xa
    elif family.kind == LAGUERRE:
        out = family.alpha / xa - 1.0
    elif family.kind == JACOBI:
        out = -family.alpha / (1.0 - xa) + family.beta / (1.0 + xa)
    else:
        out = -(2.0 * family.lam - 1.0) * xa / ((1.0 - xa) * (1.0 + xa))
    return out if out.ndim else float(out)


# ---------------------------------------------------------------------------
# evaluation


def classical_sign(family, n):
    """Sign relating the positive-leading recurrence output to the classical
    normalization: p_hat_classical = sign * p_hat_recurrence.

    Laguerre polynomials lead with (-1)^n / n!; Gegenbauer with 2^n (lam)_n / n!,
    negative for lam in (-1/2, 0) once n >= 1.  Hermite and Jacobi lead positive.
    """
    if family.kind == LAGUERRE:
        return -1.0 if n % 2 else 1.0
    if family.kind == GEGENBAUER and family.lam < 0.0 and n >= 1:
        return -1.0
    return 1.0


def _eval_arrays(family, n):
    # a_0..a_{n-1} and b_1..b_n for the forward recurrence to degree n
    diag, off = recurrence_arrays(family, n + 1)
    return diag[:n], off


def eval_orthonormal(family, n, x):
    """p_0(x)..p_n(x) as plain floats (scalar x).

    Accurate while the values and kappa_0 are representable in doubles;
    sweeps at extreme n or parameters use eval_orthonormal_log instead.
    """
    if n < 0:
        raise DomainError("need n >= 0")
    x = float(x)
    p0 = math.exp(-0.5 * log_norm_kappa(family, 0))
    out = np.empty(n + 1)
    out[0] = p0
    if n == 0:
        return out
    diag, off = _eval_arrays(family, n)
    out[1] = (x - diag[0]) * p0 / off[0]
    for k in range(1, n):
        out[k + 1] = ((x - diag[k]) * out[k] - off[k - 1] * out[k - 1]) / off[k]
    signs = np.array([classical_sign(family, k) for k in range(n + 1)])
    return out * signs


def eval_derivative(family, n, x):
    """d/dx p_n at scalar x, by the differentiated recurrence."""
    if n < 0:
        raise DomainError("need n >= 0")
    if n == 0:
        return 0.0
    x = float(x)
    diag, off = _eval_arrays(family, n)
    u0 = math.exp(-0.5 * log_norm_kappa(family, 0))
    d0 = 0.0
    u1 = (x - diag[0]) * u0 / off[0]
    d1 = u0 / off[0]
    for k in range(1, n):
        t = x - diag[k]
        u2 = (t * u1 - off[k - 1] * u0) / off[k]
        d2 = (t * d1 + u1 - off[k - 1] * d0) / off[k]
        u0, u1, d0, d1 = u1, u2, d1, d2
    return classical_sign(family, n) * d1


def eval_orthonormal_log(family, n, x):
    """(sign, ln|p_n|) at the points x; handles any magnitude."""
    if n < 0:
        raise DomainError("need n >= 0")
    diag, off = _eval_arrays(family, n)
    log_p0 = -0.5 * log_norm_kappa(family, 0)
    sign_p, log_p, _, _ = kernels.eval_scaled(diag, off, log_p0, x)
    return classical_sign(family, n) * sign_p, log_p


def eval_both_log(family, n, x):
    """(sign_p, ln|p_n|, sign_dp, ln|p_n'|) at the points x."""
    if n < 0:
        raise DomainError("need n >= 0")
    diag, off = _eval_arrays(family, n)
    log_p0 = -0.5 * log_norm_kappa(family, 0)
    sign_p, log_p, sign_dp, log_dp = kernels.eval_scaled(diag, off, log_p0, x)
    s = classical_sign(family, n)
    return s * sign_p, log_p, s * sign_dp, log_dp


def log_rakhmanov_density(family, n, x):
    """ln rho_n(x) = 2 ln|p_n(x)| + ln h(x); -inf exactly at zeros of p_n."""
    xa = _check_in_support(family, x)
    scalar = xa.ndim == 0
    xv = np.atleast_1d(xa)
    _, log_p = eval_orthonormal_log(family, n, xv)
    out = 2.0 * log_p + np.asarray(log_weight(family, xv))
    return float(out[0]) if scalar else out


# ---------------------------------------------------------------------------
# zeros


def zeros(family, n):
    """The n zeros of p_n, ascending, via the Jacobi-matrix eigenproblem."""
    if n < 1:
        raise DomainError("need n >= 1")
    diag, off = recurrence_arrays(family, n)
    try:
        z = scipy.linalg.eigvalsh_tridiagonal(diag, off)
    except Exception as exc:  # scipy raises LinAlgError subclasses
        raise NumericalError(f"tridiagonal eigensolver failed: {exc}") from exc
    return np.sort(z)


# ---------------------------------------------------------------------------
# Gegenbauer <-> Jacobi


def gegenbauer_to_jacobi(n, lam):
    """Connection C_n^(lam) = c * P_n^(lam-1/2, lam-1/2).

    Returns (jacobi_family, ln|c|, sign(c)).  The sign is -1 exactly for
    lam in (-1/2, 0) with n >= 1, where the Pochhammer (2 lam)_n flips.
    At the orthonormal level the two routes coincide identically.
    """
    if not lam > -0.5 or lam == 0.0:
        raise DomainError(f"Gegenbauer requires lambda > -1/2 and lambda != 0, got {lam}")
    if n < 0:
        raise DomainError("need n >= 0")
    jac = jacobi(lam - 0.5, lam - 0.5)
    if n == 0:
        return jac, 0.0, 1.0
    if lam > 0.0:
        log_c = (log_gamma_ratio(n + 2.0 * lam, 2.0 * lam)
                 - log_gamma_ratio(n + lam + 0.5, lam + 0.5))
        return jac, log_c, 1.0
    # lam in (-1/2, 0): |(2 lam)_n| = |2 lam| (2 lam + 1)_{n-1}
    log_c = (math.log(-2.0 * lam) + log_gamma_ratio(n + 2.0 * lam, 2.0 * lam + 1.0)
             - log_gamma_ratio(n + lam + 0.5, lam + 0.5))
    return jac, log_c, -1.0
