"""Compare the compiled and interpreted ellipsoid enumeration kernels.

Run with ``python benchmarks/bench_enum.py``.  The workload is the short
vector count of each bundled negative definite Goeritz form (norm <= 8),
followed by the whole census with each kernel selected through the
``GAMMA4_NUMBA`` environment variable.
"""
import os
import subprocess
import sys
import time

import numpy as np

from gamma4._accel import enumerate_ellipsoid, numba_kernel, python_kernel
from gamma4.cli import bundled, goeritz_forms, load_knot_table


def workload():
    out = []
    for row in load_knot_table(bundled("knots10.csv")):
        if not row.record.alternating:
            continue
        for f in goeritz_forms(row)[1]:
            if f is not None and f.definiteness == "negative":
                A = -f.gram.astype(float)
                out.append(np.linalg.cholesky(A).T)
    return out


def time_kernel(kernel, problems, bound, repeats=3):
    best = float("inf")
    total = 0
    for _ in range(repeats):
        t0 = time.perf_counter()
        total = sum(len(enumerate_ellipsoid(R, np.zeros(R.shape[0]), bound, kernel)) for R in problems)
        best = min(best, time.perf_counter() - t0)
    return best, total


def census_seconds(flag):
    env = dict(os.environ, GAMMA4_NUMBA=flag)
    code = ("import time; from gamma4.cli import *; t=time.perf_counter(); "
            "run_census(CensusConfig(bundled('knots10.csv'), bundled('certs.json'), bundled('known.csv')));"
            "print(time.perf_counter()-t)")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout.split()[-1])


def main():
    problems = workload()
    print(f"{len(problems)} definite forms")
    fast = numba_kernel()
    if fast is not None:
        enumerate_ellipsoid(np.eye(2), np.zeros(2), 1.0, fast)  # compile outside the timing
    for bound in (4, 8):
        py, n_py = time_kernel(python_kernel(), problems, bound)
        line = f"norm <= {bound}: {n_py} vectors, python {py * 1e3:.1f} ms"
        if fast is not None:
            nb, n_nb = time_kernel(fast, problems, bound)
            assert n_nb == n_py
            line += f", numba {nb * 1e3:.1f} ms, speedup {py / nb:.1f}x"
        print(line)
    print(f"census, python kernel: {census_seconds('0'):.2f} s")
    if fast is not None:
        print(f"census, numba kernel:  {census_seconds('1'):.2f} s")


if __name__ == "__main__":
    main()
