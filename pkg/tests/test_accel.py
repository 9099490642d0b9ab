import itertools
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gamma4._accel import enumerate_ellipsoid, numba_kernel, python_kernel


@st.composite
def ellipsoids(draw):
    d = draw(st.integers(1, 4))
    entries = draw(st.lists(st.integers(-2, 2), min_size=d * d, max_size=d * d))
    B = np.array(entries, dtype=float).reshape(d, d) + 7 * np.eye(d)
    Q = B.T @ B
    center = np.array(draw(st.lists(st.floats(-2, 2), min_size=d, max_size=d)))
    bound = draw(st.floats(0, 150))
    return Q, center, bound


def brute(Q, center, bound):
    d = Q.shape[0]
    w = np.linalg.eigvalsh(Q).min()
    r = int(np.ceil(np.sqrt(bound / w))) + 1
    q = Q.tolist()
    out = []
    for t in itertools.product(*[range(int(np.floor(c)) - r, int(np.ceil(c)) + r + 1) for c in center]):
        x = [a - c for a, c in zip(t, center)]
        if sum(x[i] * q[i][j] * x[j] for i in range(d) for j in range(d)) <= bound + 1e-9:
            out.append(t)
    return sorted(out)


@given(ellipsoids())
@settings(max_examples=120, deadline=None)
def test_python_kernel_matches_box_search(e):
    Q, center, bound = e
    R = np.linalg.cholesky(Q).T
    got = enumerate_ellipsoid(R, center, bound, kernel=python_kernel())
    exact = [tuple(v) for v in got if (v - center) @ Q @ (v - center) <= bound + 1e-9]
    assert sorted(exact) == brute(Q, center, bound)


@pytest.mark.skipif(numba_kernel() is None, reason="numba unavailable")
@given(ellipsoids())
@settings(max_examples=120, deadline=None)
def test_numba_kernel_matches_python_kernel(e):
    Q, center, bound = e
    R = np.linalg.cholesky(Q).T
    a = enumerate_ellipsoid(R, center, bound, kernel=python_kernel())
    b = enumerate_ellipsoid(R, center, bound, kernel=numba_kernel())
    assert a.tolist() == b.tolist()


def test_capacity_growth():
    R = np.eye(3)
    pts = enumerate_ellipsoid(R, np.zeros(3), 20.0)
    assert len(pts) > 64
    assert len(pts) == len({tuple(p) for p in pts})


def test_degenerate_dimensions():
    assert enumerate_ellipsoid(np.zeros((0, 0)), np.zeros(0), 1.0).shape == (1, 0)
    assert enumerate_ellipsoid(np.eye(2), np.zeros(2), -1.0).shape == (0, 2)


def test_env_flag_selects_python_path():
    code = "import gamma4._accel as a; print(a.USE_NUMBA, a._kernel is a._fp_python)"
    env = dict(os.environ, GAMMA4_NUMBA="0")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["False", "True"]
