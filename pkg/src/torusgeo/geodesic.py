"""Closed geodesics on the flat 2-torus and their line spectra.

A closed geodesic is the image of t -> t*(a,b) + p (mod 1) for a primitive
integer direction (a,b), parametrized by t in [0,1]; its length is
sqrt(a^2+b^2).  Directions are kept in canonical orientation (a > 0, or
a == 0 and b == 1) since (a,b) and (-a,-b) trace the same geodesic.

The average of the field over the geodesic depends on the offset p only
through the phase theta = <(-b,a), p> mod 1, and equals the 1-D
trigonometric polynomial

    g(theta) = sum_{d != 0} c(d*(-b,a)) * exp(2*pi*i*d*theta),

i.e. the field's coefficients restricted to the lattice line orthogonal to
(a,b).  Every operation here works on that line spectrum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .spectrum import SpectralField

#: value differences below this are treated as exact ties
TIE_EPS = 1e-12

#: golden-section bracket width at which refinement stops
REFINE_WIDTH = 1e-13

_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class GeodesicDirection:
    """Primitive integer direction in canonical orientation."""

    a: int
    b: int

    def __post_init__(self):
        if (self.a, self.b) == (0, 0):
            raise ValueError("direction must be nonzero")
        if math.gcd(self.a, self.b) != 1:
            raise ValueError(f"direction {(self.a, self.b)} is not primitive")
        if not (self.a > 0 or (self.a == 0 and self.b == 1)):
            raise ValueError(f"direction {(self.a, self.b)} is not canonically oriented")

    @classmethod
    def from_vector(cls, a: int, b: int) -> "GeodesicDirection":
        """Canonicalize the sign of a primitive vector."""
        if a < 0 or (a == 0 and b < 0):
            a, b = -a, -b
        return cls(a, b)

    def length(self) -> float:
        return math.hypot(self.a, self.b)

    def perp(self) -> tuple[int, int]:
        """Primitive generator (-b, a) of the orthogonal lattice line."""
        return (-self.b, self.a)

    def astuple(self) -> tuple[int, int]:
        return (self.a, self.b)


@dataclass(frozen=True)
class ClosedGeodesic:
    """A geodesic of a given direction, pinned down by its offset phase."""

    direction: GeodesicDirection
    theta: float

    def __post_init__(self):
        object.__setattr__(self, "theta", float(self.theta) % 1.0)

    @property
    def offset_point(self) -> tuple[float, float]:
        """Canonical representative p with <(-b,a), p> = theta (mod 1)."""
        if self.direction.a != 0:
            return (0.0, self.theta / self.direction.a)
        return ((1.0 - self.theta) % 1.0, 0.0)

    def point(self, t: float) -> tuple[float, float]:
        ox, oy = self.offset_point
        return ((t * self.direction.a + ox) % 1.0, (t * self.direction.b + oy) % 1.0)


@dataclass(frozen=True)
class LineSpectrum:
    """Field coefficients on the lattice line orthogonal to a direction."""

    direction: GeodesicDirection
    coeffs: dict[int, complex]
    dmax: int


def enumerate_directions(radius: float) -> list[GeodesicDirection]:
    """All canonical primitive directions of length <= radius,
    sorted by (length, a, b)."""
    if radius < 1.0:
        raise ValueError("radius must be >= 1")
    r2 = int(radius * radius + 1e-9)
    out: list[tuple[int, int, int]] = []
    if r2 >= 1:
        out.append((1, 0, 1))
    amax = math.isqrt(r2)
    for a in range(1, amax + 1):
        bmax = math.isqrt(r2 - a * a)
        for b in range(-bmax, bmax + 1):
            if math.gcd(a, b) == 1:
                out.append((a * a + b * b, a, b))
    out.sort()
    return [GeodesicDirection(a, b) for _, a, b in out]


def line_spectrum(field: SpectralField, direction: GeodesicDirection) -> LineSpectrum:
    """Extract c(d) = f^(d*(-b,a)) for 1 <= |d| <= dmax; zeros are omitted."""
    p1, p2 = direction.perp()
    dmax = int(field.bandlimit / direction.length() + 1e-9)
    coeffs: dict[int, complex] = {}
    for d in range(1, dmax + 1):
        c = field.get((d * p1, d * p2))
        if c != 0j:
            coeffs[d] = c
            coeffs[-d] = c.conjugate()
    return LineSpectrum(direction=direction, coeffs=coeffs, dmax=dmax)


def offset_function(ls: LineSpectrum, theta: float) -> float:
    """g(theta); real by conjugate symmetry of the line coefficients."""
    total = 0j
    for d, c in ls.coeffs.items():
        total += c * np.exp(2j * math.pi * d * theta)
    assert abs(total.imag) <= 1e-10
    return float(total.real)


def line_mass(ls: LineSpectrum) -> float:
    """Plancherel mass of the line: sum_d |c(d)|^2."""
    return sum(abs(c) ** 2 for c in ls.coeffs.values())


def _golden_max(fn, lo: float, hi: float, width: float = REFINE_WIDTH) -> tuple[float, float]:
    """Golden-section maximization of fn on [lo, hi] down to the given width."""
    x1 = hi - _INV_GOLDEN * (hi - lo)
    x2 = lo + _INV_GOLDEN * (hi - lo)
    f1, f2 = fn(x1), fn(x2)
    while hi - lo > width:
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _INV_GOLDEN * (hi - lo)
            f2 = fn(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _INV_GOLDEN * (hi - lo)
            f1 = fn(x1)
    xm = 0.5 * (lo + hi)
    return xm, fn(xm)


def _wrap_theta(theta: float) -> float:
    # |g| is flat to double precision within ~1e-8 of a quadratic peak, so a
    # refined theta can land that far below 0; snap those onto 0 exactly
    theta = theta % 1.0
    if theta > 1.0 - 1e-8:
        return 0.0
    return theta


def maximize_offset(ls: LineSpectrum) -> tuple[float, float]:
    """(theta_star, max |g|): dense scan at >= 8x oversampling, then
    golden-section refinement of every grid-local peak; value ties within
    1e-12 resolve to the smallest theta_star."""
    if not ls.coeffs:
        return 0.0, 0.0
    n_samples = max(256, 8 * (2 * ls.dmax + 1))
    ds = np.array(list(ls.coeffs), dtype=np.float64)
    cs = np.array([ls.coeffs[int(d)] for d in ds], dtype=np.complex128)
    grid = np.arange(n_samples) / n_samples
    vals = np.abs(np.exp(2j * math.pi * np.outer(grid, ds)) @ cs)

    def absg(theta: float) -> float:
        return abs((cs * np.exp(2j * math.pi * ds * theta)).sum())

    left = np.roll(vals, 1)
    right = np.roll(vals, -1)
    peaks = np.nonzero((vals >= left) & (vals >= right))[0]
    best_theta, best_val = 0.0, -1.0
    for j in peaks:
        lo = (j - 1.0) / n_samples
        hi = (j + 1.0) / n_samples
        theta, val = _golden_max(absg, lo, hi)
        theta = _wrap_theta(theta)
        if val > best_val + TIE_EPS or (abs(val - best_val) <= TIE_EPS and theta < best_theta):
            best_theta, best_val = theta, max(val, best_val)
    return best_theta, best_val
