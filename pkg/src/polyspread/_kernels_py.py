"""Pure-numpy recurrence kernels (fallback when the C extension is absent).

Both kernels run the orthonormal three-term recurrence

    x p_k = b_k p_{k-1} + a_k p_k + b_{k+1} p_{k+1}

in a scaled representation: stored values u_k satisfy p_k = u_k * exp(s)
with a per-point log-scale s that absorbs overflow/underflow.  The scale
starts at log_p0 = -0.5 ln kappa_0 so p_0 = exp(log_p0) exactly.
"""
import numpy as np

_HI = 1e140
_LO = 1e-140
_LN2_256 = 256 * np.log(2.0)
_DOWN = 2.0 ** -256
_UP = 2.0 ** 256


def eval_scaled(diag, off, log_p0, x):
    """Evaluate p_n and p_n' at the points x in (sign, log) form.

    diag: a_0..a_{n-1}; off: b_1..b_n.  Returns four arrays
    (sign_p, log_p, sign_dp, log_dp); exact zeros carry sign 0, log -inf.
    """
    diag = np.asarray(diag, dtype=np.float64)
    off = np.asarray(off, dtype=np.float64)
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    n = diag.shape[0]
    s = np.full(x.shape, float(log_p0))
    u0 = np.ones_like(x)
    d0 = np.zeros_like(x)
    if n == 0:
        return (u0.copy(), s,
                d0.copy(), np.full(x.shape, -np.inf))
    u1 = (x - diag[0]) / off[0]
    d1 = np.full(x.shape, 1.0 / off[0])
    for k in range(1, n):
        t = x - diag[k]
        u2 = (t * u1 - off[k - 1] * u0) / off[k]
        d2 = (t * d1 + u1 - off[k - 1] * d0) / off[k]
        u0, u1 = u1, u2
        d0, d1 = d1, d2
        m = np.maximum(np.abs(u1), np.abs(d1))
        big = m > _HI
        if big.any():
            u0 = np.where(big, u0 * _DOWN, u0)
            u1 = np.where(big, u1 * _DOWN, u1)
            d0 = np.where(big, d0 * _DOWN, d0)
            d1 = np.where(big, d1 * _DOWN, d1)
            s = np.where(big, s + _LN2_256, s)
        small = (m < _LO) & (m > 0.0)
        if small.any():
            u0 = np.where(small, u0 * _UP, u0)
            u1 = np.where(small, u1 * _UP, u1)
            d0 = np.where(small, d0 * _UP, d0)
            d1 = np.where(small, d1 * _UP, d1)
            s = np.where(small, s - _LN2_256, s)
    with np.errstate(divide="ignore"):
        log_p = np.where(u1 != 0.0, np.log(np.abs(np.where(u1 != 0.0, u1, 1.0))) + s, -np.inf)
        log_dp = np.where(d1 != 0.0, np.log(np.abs(np.where(d1 != 0.0, d1, 1.0))) + s, -np.inf)
    return np.sign(u1), log_p, np.sign(d1), log_dp


def christoffel_log_weights(diag, off, log_p0, x):
    """log of the Gauss weights at the nodes x.

    diag: a_0..a_{m-1}; off: b_1..b_{m-1}.  w_i = 1 / sum_{k<m} p_k(x_i)^2,
    evaluated without forming the (possibly overflowing) p_k directly.
    """
    diag = np.asarray(diag, dtype=np.float64)
    off = np.asarray(off, dtype=np.float64)
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    m = diag.shape[0]
    s = np.full(x.shape, float(log_p0))
    u0 = np.ones_like(x)
    ssum = np.ones_like(x)
    if m == 1:
        return -(np.log(ssum) + 2.0 * s)
    u1 = (x - diag[0]) / off[0]
    ssum = ssum + u1 * u1
    for k in range(1, m - 1):
        u2 = ((x - diag[k]) * u1 - off[k - 1] * u0) / off[k]
        u0, u1 = u1, u2
        ssum = ssum + u1 * u1
        big = np.abs(u1) > _HI
        if big.any():
            u0 = np.where(big, u0 * _DOWN, u0)
            u1 = np.where(big, u1 * _DOWN, u1)
            ssum = np.where(big, ssum * (_DOWN * _DOWN), ssum)
            s = np.where(big, s + _LN2_256, s)
    return -(np.log(ssum) + 2.0 * s)
