"""Short-vector enumeration kernel.

``enumerate_ellipsoid`` lists every integer point ``t`` with
``|R (t - center)|^2 <= bound`` for an upper-triangular ``R``.  The loop is
compiled with numba when it is importable; setting ``GAMMA4_NUMBA=0`` forces
the interpreted path, which runs the same algorithm on Python floats.
"""
import math
import os

import numpy as np

USE_NUMBA = os.environ.get("GAMMA4_NUMBA", "1").lower() not in ("0", "false", "no", "off")

try:
    if not USE_NUMBA:
        raise ImportError
    from numba import njit
    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

EPS = 1e-7


def _fp_python(R, center, bound, out):
    d = R.shape[0]
    R = R.tolist()
    center = center.tolist()
    cap = out.shape[0]
    t = [0] * d
    hi = [0] * d
    rem = [0.0] * (d + 1)
    rem[d] = bound
    count = 0

    def open_level(i):
        s = 0.0
        for j in range(i + 1, d):
            s += R[i][j] * (t[j] - center[j])
        mid = center[i] - s / R[i][i]
        r = math.sqrt(max(rem[i + 1], 0.0)) / R[i][i]
        t[i] = math.ceil(mid - r - EPS)
        hi[i] = math.floor(mid + r + EPS)

    i = d - 1
    open_level(i)
    while True:
        if t[i] > hi[i]:
            i += 1
            if i == d:
                break
            t[i] += 1
            continue
        s = 0.0
        for j in range(i, d):
            s += R[i][j] * (t[j] - center[j])
        rem[i] = rem[i + 1] - s * s
        if rem[i] < -EPS:
            t[i] += 1
            continue
        if i == 0:
            if count < cap:
                out[count, :] = t
            count += 1
            t[0] += 1
            continue
        i -= 1
        open_level(i)
    return count


if HAVE_NUMBA:

    @njit(cache=True)
    def _fp_numba(R, center, bound, out):
        d = R.shape[0]
        cap = out.shape[0]
        t = np.zeros(d, dtype=np.int64)
        hi = np.zeros(d, dtype=np.int64)
        rem = np.zeros(d + 1)
        rem[d] = bound
        count = 0
        i = d - 1
        opening = True
        while True:
            if opening:
                s = 0.0
                for j in range(i + 1, d):
                    s += R[i, j] * (t[j] - center[j])
                mid = center[i] - s / R[i, i]
                r = math.sqrt(max(rem[i + 1], 0.0)) / R[i, i]
                t[i] = math.ceil(mid - r - EPS)
                hi[i] = math.floor(mid + r + EPS)
                opening = False
            if t[i] > hi[i]:
                i += 1
                if i == d:
                    break
                t[i] += 1
                continue
            s = 0.0
            for j in range(i, d):
                s += R[i, j] * (t[j] - center[j])
            rem[i] = rem[i + 1] - s * s
            if rem[i] < -EPS:
                t[i] += 1
                continue
            if i == 0:
                if count < cap:
                    out[count, :] = t
                count += 1
                t[0] += 1
                continue
            i -= 1
            opening = True
        return count

    _kernel = _fp_numba
else:
    _kernel = _fp_python


def enumerate_ellipsoid(R, center, bound, kernel=None):
    """All integer ``t`` with ``|R (t - center)|^2 <= bound`` (plus float slack).

    Callers must re-check candidates exactly; the slack only guarantees that
    nothing inside the ellipsoid is missed.
    """
    R = np.ascontiguousarray(R, dtype=np.float64)
    center = np.ascontiguousarray(center, dtype=np.float64)
    d = R.shape[0]
    if d == 0:
        return np.zeros((1 if bound >= -EPS else 0, 0), dtype=np.int64)
    if bound < -EPS:
        return np.zeros((0, d), dtype=np.int64)
    fn = kernel or _kernel
    cap = 64
    while True:
        out = np.zeros((cap, d), dtype=np.int64)
        n = fn(R, center, float(bound) + EPS * (1.0 + abs(bound)), out)
        if n <= cap:
            return out[:n]
        cap = n


def python_kernel():
    return _fp_python


def numba_kernel():
    return _fp_numba if HAVE_NUMBA else None
