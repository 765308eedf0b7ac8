"""Mean-zero real-valued functions on the 2-torus, represented by finite
Fourier data.

Convention:
    f(x) = Re sum_k  c(k) * exp(2*pi*i*<k, x>),   x in [0,1]^2, k in Z^2,

with c(-k) = conj(c(k)) (real field) and c(0,0) = 0 (mean zero).  Stored
coefficients with modulus below ``DROP_EPS`` are discarded at construction
so the bandlimit reflects genuine support.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels

TWO_PI = 2.0 * math.pi

#: construction-time coefficient drop threshold
DROP_EPS = 1e-15

#: tolerance for conjugate-pair consistency of parsed input
CONJ_TOL = 1e-12


class FieldError(ValueError):
    """Raised when coefficient data violates the field invariants."""


def _freq_norm(k: tuple[int, int]) -> float:
    return math.hypot(k[0], k[1])


class SpectralField:
    """Immutable finite Fourier representation of a mean-zero real field.

    ``entries`` maps (k1, k2) -> complex coefficient.  The constructor
    Hermitian-completes half spectra, symmetrizes near-conjugate pairs,
    rejects a nonzero mean and drops negligible coefficients.
    """

    __slots__ = ("_coeffs", "_arrays", "bandlimit")

    def __init__(self, entries):
        staged: dict[tuple[int, int], complex] = {}
        for k, c in dict(entries).items():
            k = (int(k[0]), int(k[1]))
            c = complex(c)
            if k == (0, 0):
                if abs(c) >= DROP_EPS:
                    raise FieldError("nonzero coefficient at (0,0): field must have mean zero")
                continue
            staged[k] = c
        coeffs: dict[tuple[int, int], complex] = {}
        for k, c in staged.items():
            mk = (-k[0], -k[1])
            if mk in staged:
                if abs(staged[mk] - c.conjugate()) > CONJ_TOL:
                    raise FieldError(f"coefficients at {k} and {mk} are not complex conjugates")
                c = 0.5 * (c + staged[mk].conjugate())
            if abs(c) < DROP_EPS:
                continue
            coeffs[k] = c
            coeffs[mk] = c.conjugate()
        self._coeffs = dict(sorted(coeffs.items()))
        self._arrays = None
        self.bandlimit = max((_freq_norm(k) for k in self._coeffs), default=0.0)

    @property
    def coefficients(self) -> dict[tuple[int, int], complex]:
        return dict(self._coeffs)

    def get(self, k: tuple[int, int]) -> complex:
        return self._coeffs.get((int(k[0]), int(k[1])), 0j)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, SpectralField) and self._coeffs == other._coeffs

    def __repr__(self) -> str:
        return f"SpectralField({len(self)} coefficients, bandlimit={self.bandlimit:.4g})"

    def arrays(self):
        """(k1, k2, re, im) float64 arrays for real synthesis, in
        deterministic key order.

        Only one representative per conjugate pair is kept (k2 > 0, or
        k2 == 0 and k1 > 0) with its weight doubled: the pair contributes
        2*Re(c * e^{i phi}), so the half spectrum reproduces the full real
        field value at half the cost.
        """
        if self._arrays is None:
            ks = [k for k in self._coeffs if k[1] > 0 or (k[1] == 0 and k[0] > 0)]
            k1 = np.array([k[0] for k in ks], dtype=np.float64)
            k2 = np.array([k[1] for k in ks], dtype=np.float64)
            c = 2.0 * np.array([self._coeffs[k] for k in ks], dtype=np.complex128)
            self._arrays = (k1, k2, c.real.copy(), c.imag.copy())
        return self._arrays

    def transpose(self) -> "SpectralField":
        """Index swap (k1,k2) -> (k2,k1); realizes f~(x,y) = f(y,x)."""
        return SpectralField({(k[1], k[0]): c for k, c in self._coeffs.items()})

    def axis_masses(self) -> tuple[float, float]:
        """L2 mass carried by the frequency axes: (sum over k2==0, sum over k1==0)."""
        x_mass = sum(abs(c) ** 2 for k, c in self._coeffs.items() if k[1] == 0)
        y_mass = sum(abs(c) ** 2 for k, c in self._coeffs.items() if k[0] == 0)
        return x_mass, y_mass

    def check_invariants(self) -> None:
        """Raise FieldError if any stored-data invariant is violated."""
        if (0, 0) in self._coeffs:
            raise FieldError("mean-zero violated")
        for k, c in self._coeffs.items():
            mk = (-k[0], -k[1])
            if mk not in self._coeffs or self._coeffs[mk] != c.conjugate():
                raise FieldError(f"Hermitian symmetry violated at {k}")
            if abs(c) < DROP_EPS:
                raise FieldError(f"sub-threshold coefficient stored at {k}")


@dataclass(frozen=True)
class NormReport:
    """Norms entering the length bound: N = grad_l2 / l2 drives the search."""

    l2: float
    grad_l2: float
    deriv_l1: dict[int, float]
    ratio_n: float


def parse_field(text: str) -> SpectralField:
    """Parse the JSON field document (see ``serialize_field`` for the schema).

    Half spectra are accepted and Hermitian-completed; a nonzero (0,0)
    entry, non-conjugate k/-k pairs, or malformed frequencies are rejected.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FieldError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or not isinstance(doc.get("coefficients"), list):
        raise FieldError('field document must be {"coefficients": [...]}')
    entries: dict[tuple[int, int], complex] = {}
    for item in doc["coefficients"]:
        if not isinstance(item, dict):
            raise FieldError("coefficient entries must be objects")
        k = item.get("k")
        if (
            not isinstance(k, list)
            or len(k) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in k)
        ):
            raise FieldError(f"malformed frequency {k!r}: expected a pair of integers")
        try:
            c = complex(float(item.get("re", 0.0)), float(item.get("im", 0.0)))
        except (TypeError, ValueError) as exc:
            raise FieldError(f"malformed coefficient value at k={k}") from exc
        key = (k[0], k[1])
        if key in entries:
            if abs(entries[key] - c) > CONJ_TOL:
                raise FieldError(f"conflicting duplicate entries at k={key}")
            continue
        entries[key] = c
    return SpectralField(entries)


def serialize_field(field: SpectralField) -> str:
    """Emit the JSON document; both members of each conjugate pair are written."""
    items = [
        {"k": [k[0], k[1]], "re": c.real, "im": c.imag}
        for k, c in sorted(field.coefficients.items())
    ]
    return json.dumps({"coefficients": items}, indent=2) + "\n"


def preset_sine(ell: int) -> SpectralField:
    """f(x,y) = sin(2*pi*(x + ell*y)): one conjugate pair at +-(1, ell)."""
    if ell < 1:
        raise ValueError("ell must be >= 1")
    return SpectralField({(1, ell): -0.5j, (-1, -ell): 0.5j})


def preset_random(n: int, decay: float, seed: int) -> SpectralField:
    """Seeded random field supported on the full frequency disk of radius n.

    One coefficient is drawn per half-lattice point (k2 > 0, or k2 == 0 and
    k1 > 0) with magnitude uniform in [0,1] scaled by (1+|k|)^(-decay) and
    uniform phase; the other half is Hermitian completion.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)
    entries: dict[tuple[int, int], complex] = {}
    for k1 in range(-n, n + 1):
        for k2 in range(0, n + 1):
            if k2 == 0 and k1 <= 0:
                continue
            if k1 * k1 + k2 * k2 > n * n:
                continue
            mag = rng.uniform() * (1.0 + math.hypot(k1, k2)) ** (-decay)
            phase = rng.uniform(0.0, TWO_PI)
            entries[(k1, k2)] = mag * cmath.exp(1j * phase)
    return SpectralField(entries)


def evaluate(field: SpectralField, x: tuple[float, float]) -> float:
    """Point value of the field; the raw complex sum must be real up to 1e-10."""
    total = 0j
    x1, x2 = float(x[0]), float(x[1])
    for (k1, k2), c in field.coefficients.items():
        total += c * cmath.exp(2j * math.pi * (k1 * x1 + k2 * x2))
    assert abs(total.imag) <= 1e-10, "Hermitian symmetry should cancel the imaginary part"
    return total.real


def evaluate_points(field: SpectralField, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Vectorized point values through the active kernel path."""
    k1, k2, cre, cim = field.arrays()
    if k1.shape[0] == 0:
        return np.zeros(np.asarray(xs).shape[0])
    return _kernels.eval_points(k1, k2, cre, cim, np.asarray(xs, float), np.asarray(ys, float))


def l2_norm(field: SpectralField) -> float:
    """Plancherel: ||f||_{L2}^2 = sum |c(k)|^2."""
    return math.sqrt(sum(abs(c) ** 2 for c in field.coefficients.values()))


def grad_l2_norm(field: SpectralField) -> float:
    """||grad f||_{L2}^2 = 4*pi^2 * sum |k|^2 |c(k)|^2."""
    s = sum((k[0] ** 2 + k[1] ** 2) * abs(c) ** 2 for k, c in field.coefficients.items())
    return 2.0 * math.pi * math.sqrt(s)


def default_grid(field: SpectralField) -> int:
    """Default synthesis grid: max(256, ceil(4*bandlimit)+1)."""
    return max(256, int(math.ceil(4.0 * field.bandlimit)) + 1)


def _synthesize(entries: dict[tuple[int, int], complex], grid: int) -> np.ndarray:
    """Exact values of sum c(k) e^{2 pi i <k,x>} on the uniform grid x=(i,j)/G.

    Implemented by binning coefficients into a G x G array and inverse FFT;
    exact (to roundoff) because G exceeds twice the bandlimit.
    """
    buf = np.zeros((grid, grid), dtype=np.complex128)
    for (k1, k2), c in entries.items():
        buf[k1 % grid, k2 % grid] += c
    vals = np.fft.ifft2(buf) * grid * grid
    return vals.real


def norms(field: SpectralField, s_max: int = 2, grid: int | None = None) -> NormReport:
    """L2 and gradient norms from coefficients; L1 norms of order-s pure and
    mixed derivatives by rectangle-rule quadrature of |d_alpha f| on a
    grid x grid mesh, maximized over the s+1 multi-indices with |alpha| = s.
    """
    if s_max < 1:
        raise ValueError("s_max must be >= 1")
    if grid is None:
        grid = default_grid(field)
    if grid < 4.0 * field.bandlimit + 1.0 - 1e-9:
        raise ValueError(f"grid={grid} below the Nyquist margin 4*bandlimit+1")
    l2 = l2_norm(field)
    grad = grad_l2_norm(field)
    deriv: dict[int, float] = {}
    coeffs = field.coefficients
    for s in range(1, s_max + 1):
        best = 0.0
        for a1 in range(s + 1):
            a2 = s - a1
            entries = {
                k: ((2j * math.pi * k[0]) ** a1) * ((2j * math.pi * k[1]) ** a2) * c
                for k, c in coeffs.items()
            }
            vals = _synthesize(entries, grid)
            best = max(best, float(np.mean(np.abs(vals))))
        deriv[s] = best
    ratio = grad / l2 if l2 > 0.0 else 0.0
    return NormReport(l2=l2, grad_l2=grad, deriv_l1=deriv, ratio_n=ratio)
