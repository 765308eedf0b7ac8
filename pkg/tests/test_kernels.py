import os
import subprocess
import sys

import numpy as np
import pytest

from torusgeo import _kernels
from torusgeo.spectrum import preset_random


def field_arrays(seed=3, n=6):
    return preset_random(n, 1.0, seed).arrays()


@pytest.mark.skipif(not _kernels.NUMBA_ENABLED, reason="numba path inactive")
class TestPathEquivalence:
    def test_eval_points(self):
        k1, k2, cre, cim = field_arrays()
        rng = np.random.default_rng(0)
        xs, ys = rng.uniform(size=500), rng.uniform(size=500)
        fast = _kernels._eval_points_numba(k1, k2, cre, cim, xs, ys)
        ref = _kernels._eval_points_numpy(k1, k2, cre, cim, xs, ys)
        np.testing.assert_allclose(fast, ref, atol=1e-12)

    @pytest.mark.parametrize("a,b", [(1, 0), (0, 1), (3, -2), (5, 1)])
    def test_theta_scan(self, a, b):
        k1, k2, cre, cim = field_arrays()
        thetas = np.arange(512) / 512.0
        m = 2 * 6 * 6 + 2
        fast = _kernels._theta_scan_numba(k1, k2, cre, cim, a, b, thetas, m)
        ref = _kernels._theta_scan_numpy(k1, k2, cre, cim, a, b, thetas, m)
        # the numba path uses a rotation recurrence; drift stays ~1e-13
        np.testing.assert_allclose(fast, ref, atol=1e-12)


def test_theta_scan_matches_pointwise_quadrature():
    # whichever path is active must agree with a naive per-theta average
    k1, k2, cre, cim = field_arrays(seed=7, n=4)
    a, b, m = 2, -1, 40
    thetas = np.arange(32) / 32.0
    scanned = _kernels.theta_scan(k1, k2, cre, cim, a, b, thetas, m)
    t = np.arange(m) / m
    for i, theta in enumerate(thetas):
        xs = (t * a) % 1.0
        ys = (t * b + theta / a) % 1.0
        direct = _kernels.eval_points(k1, k2, cre, cim, xs, ys).mean()
        assert scanned[i] == pytest.approx(direct, abs=1e-12)


def test_pure_numpy_env_flag_disables_numba():
    code = (
        "import torusgeo._kernels as k; "
        "print(k.NUMBA_ENABLED, k.eval_points is k._eval_points_numpy)"
    )
    env = dict(os.environ, **{_kernels.PURE_NUMPY_ENV: "1"})
    out = subprocess.run(
        [sys.executable, "-c", code], capture_output=True, text=True, env=env, check=True
    )
    assert out.stdout.split() == ["False", "True"]


def test_warmup_runs_on_active_path():
    _kernels.warmup()
