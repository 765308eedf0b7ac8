"""Hot numeric kernels: field synthesis at scattered points and geodesic
quadrature sweeps over an offset grid.

Two implementations of each kernel exist side by side:

* a numba ``@njit(parallel=True)`` version (default when numba imports), and
* a pure-numpy version, selected by setting ``TORUSGEO_PURE_NUMPY=1`` in the
  environment before import (or automatically when numba is unavailable).

The public names ``eval_points`` and ``theta_scan`` are bound to whichever
path is active; both implementations stay importable so the benchmark and
the equivalence tests can compare them directly.

Coefficient data is passed as four flat arrays (k1, k2, re, im) so the same
signature serves both paths.
"""

from __future__ import annotations

import os

import numpy as np

PURE_NUMPY_ENV = "TORUSGEO_PURE_NUMPY"

_TWO_PI = 2.0 * np.pi


def _flag_set(value: str | None) -> bool:
    return value is not None and value.strip() not in ("", "0")


def _eval_points_numpy(k1, k2, cre, cim, xs, ys):
    """Re(sum_k c_k exp(2*pi*i*(k1*x + k2*y))) at each point, chunked."""
    n = xs.shape[0]
    out = np.empty(n)
    # keep the (points x coeffs) phase matrix under ~64 MB
    step = max(1, 4_000_000 // max(1, k1.shape[0]))
    for lo in range(0, n, step):
        hi = min(n, lo + step)
        ph = _TWO_PI * (np.outer(xs[lo:hi], k1) + np.outer(ys[lo:hi], k2))
        out[lo:hi] = np.cos(ph) @ cre + np.sin(ph) @ (-cim)
    return out


def _theta_scan_numpy(k1, k2, cre, cim, a, b, thetas, m):
    """Equal-weight m-point quadrature average of the field along the
    geodesic t -> t*(a,b) + offset(theta), for every theta in the grid.

    offset(theta) is (0, theta/a) for a != 0, else (1-theta mod 1, 0).
    """
    t = np.arange(m) / m
    if a != 0:
        ox = np.zeros_like(thetas)
        oy = thetas / a
    else:
        ox = (1.0 - thetas) % 1.0
        oy = np.zeros_like(thetas)
    out = np.empty(thetas.shape[0])
    # chunk over thetas; each chunk evaluates a (chunk*m,) point batch
    step = max(1, 1_000_000 // max(1, m))
    for lo in range(0, thetas.shape[0], step):
        hi = min(thetas.shape[0], lo + step)
        xs = ((ox[lo:hi, None] + (t * a)[None, :]) % 1.0).ravel()
        ys = ((oy[lo:hi, None] + (t * b)[None, :]) % 1.0).ravel()
        vals = _eval_points_numpy(k1, k2, cre, cim, xs, ys)
        out[lo:hi] = vals.reshape(hi - lo, m).mean(axis=1)
    return out


try:
    if _flag_set(os.environ.get(PURE_NUMPY_ENV)):
        raise ImportError("pure-numpy path forced by environment")
    from numba import njit, prange

    NUMBA_ENABLED = True
except ImportError:
    njit = None
    prange = range
    NUMBA_ENABLED = False


def _make_numba_kernels():
    """Compile-on-first-call numba versions of both kernels."""

    @njit(parallel=True, cache=True)
    def eval_points_nb(k1, k2, cre, cim, xs, ys):  # pragma: no cover - jitted
        n = xs.shape[0]
        nk = k1.shape[0]
        out = np.empty(n)
        for p in prange(n):
            x = xs[p]
            y = ys[p]
            acc = 0.0
            for i in range(nk):
                ph = _TWO_PI * (k1[i] * x + k2[i] * y)
                acc += cre[i] * np.cos(ph) - cim[i] * np.sin(ph)
            out[p] = acc
        return out

    @njit(parallel=True, cache=True)
    def theta_scan_nb(k1, k2, cre, cim, a, b, thetas, m):  # pragma: no cover - jitted
        nt = thetas.shape[0]
        nk = k1.shape[0]
        out = np.empty(nt)
        for p in prange(nt):
            theta = thetas[p]
            if a != 0:
                ox = 0.0
                oy = theta / a
            else:
                ox = (1.0 - theta) % 1.0
                oy = 0.0
            acc = 0.0
            for i in range(nk):
                # phase along the geodesic advances by a fixed step per node,
                # so the per-node factor is a unit-complex rotation; the drift
                # over m <= a few hundred steps stays ~1e-13
                p0 = _TWO_PI * (k1[i] * ox + k2[i] * oy)
                dp = _TWO_PI * (k1[i] * a + k2[i] * b) / m
                zr = np.cos(p0)
                zi = np.sin(p0)
                wr = np.cos(dp)
                wi = np.sin(dp)
                re = cre[i]
                im = cim[i]
                s = 0.0
                for _ in range(m):
                    s += re * zr - im * zi
                    zr, zi = zr * wr - zi * wi, zr * wi + zi * wr
                acc += s
            out[p] = acc / m
        return out

    return eval_points_nb, theta_scan_nb


if NUMBA_ENABLED:
    _eval_points_numba, _theta_scan_numba = _make_numba_kernels()
    eval_points = _eval_points_numba
    theta_scan = _theta_scan_numba
else:
    _eval_points_numba = None
    _theta_scan_numba = None
    eval_points = _eval_points_numpy
    theta_scan = _theta_scan_numpy


def warmup():
    """Trigger JIT compilation on token inputs (no-op on the numpy path)."""
    k1 = np.array([1.0])
    k2 = np.array([0.0])
    cre = np.array([0.5])
    cim = np.array([0.0])
    eval_points(k1, k2, cre, cim, np.array([0.25]), np.array([0.0]))
    theta_scan(k1, k2, cre, cim, 1, 0, np.array([0.0, 0.5]), 4)
