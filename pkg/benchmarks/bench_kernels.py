"""Times the compiled recurrence kernels against the numpy fallback.

Both backends are imported directly (the selector in polyspread.kernels is
bypassed) so one process can run the two side by side.  Outputs are checked
to agree before any timing is reported.

Usage: python3 benchmarks/bench_kernels.py [--repeats R] [--points P]
"""
import argparse
import sys
import time

import numpy as np

from polyspread import _kernels_py
from polyspread import ortho_core as oc

try:
    from polyspread import _kernels
except ImportError:
    _kernels = None


def _best_of(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _eval_inputs(fam, n, points):
    diag, off = oc.recurrence_arrays(fam, n + 1)
    log_p0 = -0.5 * oc.log_norm_kappa(fam, 0)
    lo, hi = fam.support
    lo = max(lo, -1.0 + 1e-6) if np.isfinite(lo) else -8.0
    hi = min(hi, 1.0 - 1e-6) if np.isfinite(hi) else 8.0
    x = np.linspace(lo + 1e-3, hi, points)
    return diag[:n], off, log_p0, x


def _christoffel_inputs(fam, m):
    diag, off = oc.recurrence_arrays(fam, m)
    log_p0 = -0.5 * oc.log_norm_kappa(fam, 0)
    return diag, off, log_p0, oc.zeros(fam, m)


def _check_close(a, b, label):
    for u, v in zip(a, b):
        finite = np.isfinite(u) & np.isfinite(v)
        if not np.array_equal(finite, np.isfinite(u)):
            raise SystemExit(f"{label}: backends disagree on finiteness")
        if finite.any():
            gap = np.max(np.abs(u[finite] - v[finite]))
            if gap > 1e-10:
                raise SystemExit(f"{label}: backends disagree by {gap:.2e}")


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--points", type=int, default=2000)
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled extension not built; nothing to compare",
              file=sys.stderr)
        return 1

    fam = oc.laguerre(0.5)
    rows = []
    for n in (50, 500, 5000):
        inputs = _eval_inputs(fam, n, args.points)
        out_c = _kernels.eval_scaled(*inputs)
        out_p = _kernels_py.eval_scaled(*inputs)
        _check_close(out_c, out_p, f"eval_scaled n={n}")
        tc = _best_of(lambda: _kernels.eval_scaled(*inputs), args.repeats)
        tp = _best_of(lambda: _kernels_py.eval_scaled(*inputs), args.repeats)
        rows.append((f"eval_scaled n={n} ({args.points} pts)", tc, tp))
    for m in (64, 512, 4096):
        inputs = _christoffel_inputs(fam, m)
        _check_close((_kernels.christoffel_log_weights(*inputs),),
                     (_kernels_py.christoffel_log_weights(*inputs),),
                     f"christoffel m={m}")
        tc = _best_of(lambda: _kernels.christoffel_log_weights(*inputs),
                      args.repeats)
        tp = _best_of(lambda: _kernels_py.christoffel_log_weights(*inputs),
                      args.repeats)
        rows.append((f"christoffel_log_weights m={m}", tc, tp))

    width = max(len(r[0]) for r in rows)
    print(f"{'kernel':<{width}}  compiled     python       speedup")
    for label, tc, tp in rows:
        print(f"{label:<{width}}  {tc * 1e3:9.3f}ms  {tp * 1e3:9.3f}ms  "
              f"{tp / tc:6.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
