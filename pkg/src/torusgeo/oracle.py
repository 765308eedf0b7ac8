"""Independent verification: direct quadrature of the field along geodesics,
brute-force extremal search, and checkers for the analytic sub-claims behind
the search's correctness.

Nothing here touches the line-spectrum shortcut: averages are equal-weight
quadrature sums of pointwise field evaluations, exact for band-limited
fields once the node count exceeds the restricted degree.  Agreement with
the spectral path is itself one of the checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .extremizer import find_extremal, search_bound
from .geodesic import (
    TIE_EPS,
    ClosedGeodesic,
    GeodesicDirection,
    _golden_max,
    _wrap_theta,
    enumerate_directions,
    line_mass,
    line_spectrum,
    maximize_offset,
    offset_function,
)
from .spectrum import SpectralField, grad_l2_norm, l2_norm, norms

__all__ = [
    "CheckResult",
    "VerificationReport",
    "quadrature_average",
    "quadrature_profile",
    "brute_force_extremal",
    "check_tail_mass",
    "check_covering_lower_bound",
    "check_interpolation_inequality",
    "check_decay_of_averages",
    "run_all_checks",
]

FOUR_PI_SQ = 4.0 * math.pi**2


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    measured: float
    threshold: float
    detail: str = ""

    def __post_init__(self):
        # numpy scalars leak in from comparisons; keep the report JSON-clean
        object.__setattr__(self, "passed", bool(self.passed))
        object.__setattr__(self, "measured", float(self.measured))
        object.__setattr__(self, "threshold", float(self.threshold))


@dataclass(frozen=True)
class VerificationReport:
    checks: list[CheckResult]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)


def min_nodes(field: SpectralField, direction: GeodesicDirection) -> int:
    """Smallest node count satisfying m > 2*bandlimit*length + 1."""
    return int(2.0 * field.bandlimit * direction.length()) + 2


def quadrature_average(field: SpectralField, geo: ClosedGeodesic, m: int | None = None) -> float:
    """(1/m) * sum_j f(gamma(j/m)); exact to roundoff for band-limited f.

    The restriction of f to the geodesic is a trigonometric polynomial of
    degree <= bandlimit*length, so the equal-weight rule needs
    m > 2*bandlimit*length + 1 or it would alias; that is a hard error.
    """
    threshold = 2.0 * field.bandlimit * geo.direction.length() + 1.0
    if m is None:
        m = min_nodes(field, geo.direction)
    if m <= threshold - 1e-9:
        raise ValueError(f"m={m} nodes would alias; need m > {threshold}")
    k1, k2, cre, cim = field.arrays()
    if k1.shape[0] == 0:
        return 0.0
    t = np.arange(m) / m
    ox, oy = geo.offset_point
    xs = (t * geo.direction.a + ox) % 1.0
    ys = (t * geo.direction.b + oy) % 1.0
    return float(_kernels.eval_points(k1, k2, cre, cim, xs, ys).mean())


def quadrature_profile(
    field: SpectralField,
    direction: GeodesicDirection,
    thetas: np.ndarray,
    m: int | None = None,
) -> np.ndarray:
    """Quadrature averages at several offsets of one direction, through a
    single batched pointwise evaluation (same rule as quadrature_average)."""
    threshold = 2.0 * field.bandlimit * direction.length() + 1.0
    if m is None:
        m = min_nodes(field, direction)
    if m <= threshold - 1e-9:
        raise ValueError(f"m={m} nodes would alias; need m > {threshold}")
    thetas = np.asarray(thetas, dtype=np.float64)
    k1, k2, cre, cim = field.arrays()
    if k1.shape[0] == 0:
        return np.zeros(thetas.shape[0])
    t = np.arange(m) / m
    if direction.a != 0:
        ox = np.zeros_like(thetas)
        oy = thetas / direction.a
    else:
        ox = (1.0 - thetas) % 1.0
        oy = np.zeros_like(thetas)
    xs = ((ox[:, None] + (t * direction.a)[None, :]) % 1.0).ravel()
    ys = ((oy[:, None] + (t * direction.b)[None, :]) % 1.0).ravel()
    vals = _kernels.eval_points(k1, k2, cre, cim, xs, ys)
    return vals.reshape(thetas.shape[0], m).mean(axis=1)


def _bf_directions(radius: float) -> list[GeodesicDirection]:
    """Independent direction scan (plain gcd double loop, same ordering)."""
    r2 = int(radius * radius + 1e-9)
    found = []
    for a in range(0, math.isqrt(r2) + 1):
        for b in range(-math.isqrt(r2), math.isqrt(r2) + 1):
            if a * a + b * b > r2 or (a, b) == (0, 0):
                continue
            if a == 0 and b != 1:
                continue
            if math.gcd(a, b) == 1:
                found.append((a * a + b * b, a, b))
    found.sort()
    return [GeodesicDirection(a, b) for _, a, b in found]


def brute_force_extremal(
    field: SpectralField,
    radius: float,
    theta_samples: int = 4096,
) -> tuple[ClosedGeodesic, float]:
    """Exhaustive search using only quadrature averages: a uniform offset
    grid per direction followed by golden-section refinement of every grid
    peak close enough to the per-direction best to possibly overtake it.
    """
    if radius < 1.0:
        raise ValueError("radius must be >= 1")
    if theta_samples < 4096:
        raise ValueError("theta_samples must be >= 4096")
    if len(field) == 0:
        return ClosedGeodesic(GeodesicDirection(1, 0), 0.0), 0.0
    k1, k2, cre, cim = field.arrays()
    thetas = np.arange(theta_samples) / theta_samples
    best_dir = GeodesicDirection(1, 0)
    best_theta = 0.0
    best_val = 0.0
    for direction in _bf_directions(radius):
        m = min_nodes(field, direction)
        avgs = np.abs(
            _kernels.theta_scan(k1, k2, cre, cim, direction.a, direction.b, thetas, m)
        )
        top = float(avgs.max())
        if top <= 1e-12:
            # numerically empty line: grid resolution is already far inside
            # the 1e-9 agreement tolerance, and refining noise peaks is waste
            if top > best_val + TIE_EPS:
                j = int(avgs.argmax())
                best_dir, best_theta, best_val = direction, j / theta_samples, top
            continue
        # a peak sampled at >= 8x oversampling undershoots its true value by
        # at most ~(pi*degree/samples)^2/2, so only peaks within that margin
        # of the grid best can hide the per-direction maximum
        degree = field.bandlimit / direction.length()
        margin = (math.pi * degree / theta_samples) ** 2 * top + 1e-12
        is_peak = (avgs >= np.roll(avgs, 1)) & (avgs >= np.roll(avgs, -1))
        candidates = np.nonzero(is_peak & (avgs >= top - margin))[0]
        if candidates.shape[0] > 64:
            order = np.lexsort((candidates, -avgs[candidates]))
            candidates = candidates[order[:64]]

        def absavg(theta: float) -> float:
            return abs(quadrature_average(field, ClosedGeodesic(direction, theta % 1.0), m))

        dir_theta, dir_val = 0.0, -1.0
        for j in candidates:
            lo = (j - 1.0) / theta_samples
            hi = (j + 1.0) / theta_samples
            theta, val = _golden_max(absavg, lo, hi)
            theta = _wrap_theta(theta)
            if val > dir_val + TIE_EPS or (abs(val - dir_val) <= TIE_EPS and theta < dir_theta):
                dir_theta, dir_val = theta, max(val, dir_val)
        if dir_val > best_val + TIE_EPS:
            best_dir, best_theta, best_val = direction, dir_theta, dir_val
    return ClosedGeodesic(best_dir, best_theta), best_val


def check_tail_mass(field: SpectralField) -> CheckResult:
    """At radius N = grad_l2/l2 the spectral tail holds at most a quarter
    of the total mass; this is a theorem, so failure means a bug."""
    if len(field) == 0:
        raise ValueError("empty field")
    l2sq = l2_norm(field) ** 2
    n_ratio = grad_l2_norm(field) / math.sqrt(l2sq)
    tail = sum(
        abs(c) ** 2
        for k, c in field.coefficients.items()
        if math.hypot(k[0], k[1]) >= n_ratio * (1.0 - 1e-12)
    )
    measured = tail / l2sq
    return CheckResult(
        name="tail_mass",
        passed=measured <= 0.25 + 1e-12,
        measured=measured,
        threshold=0.25,
        detail=f"tail radius N={n_ratio:.6g}",
    )


def check_covering_lower_bound(field: SpectralField) -> CheckResult:
    """The lattice lines of all directions of length <= 2N off the lighter
    axis cover the off-axis disk of radius N, so the best line must carry
    at least its share of the mass."""
    if len(field) == 0:
        raise ValueError("empty field")
    l2sq = l2_norm(field) ** 2
    n_ratio = grad_l2_norm(field) / math.sqrt(l2sq)
    x_mass, y_mass = field.axis_masses()
    excluded = GeodesicDirection(0, 1) if x_mass <= y_mass else GeodesicDirection(1, 0)
    family = [d for d in enumerate_directions(2.0 * n_ratio) if d != excluded]
    best_sq = 0.0
    for direction in family:
        ls = line_spectrum(field, direction)
        if ls.coeffs:
            best_sq = max(best_sq, maximize_offset(ls)[1] ** 2)
    disk_mass = sum(
        abs(c) ** 2
        for k, c in field.coefficients.items()
        if math.hypot(k[0], k[1]) <= n_ratio * (1.0 + 1e-12)
    )
    numerator = disk_mass - min(x_mass, y_mass)
    measured = numerator / (len(family) * best_sq)
    return CheckResult(
        name="covering_lower_bound",
        passed=measured <= 2.0,
        measured=measured,
        threshold=2.0,
        detail=f"{len(family)} lines of length <= {2.0 * n_ratio:.6g}",
    )


def _oriented_line(field: SpectralField, direction: GeodesicDirection):
    """Reorient so the first component dominates (coordinate swap when
    a < |b|); returns (a_eff, line spectrum) for the oriented pair."""
    if direction.a >= abs(direction.b):
        return direction.a, line_spectrum(field, direction)
    swapped = GeodesicDirection.from_vector(direction.b, direction.a)
    return swapped.a, line_spectrum(field.transpose(), swapped)


def check_interpolation_inequality(field: SpectralField, direction: GeodesicDirection) -> CheckResult:
    """Sup-norm interpolation bound for the offset profile in the original
    offset variable c (period 1/a after orientation):

        ||g||_inf <= C * |gamma|^{-1/2} * ||g||_2^{1/2} * ||g'||_2^{1/2}.
    """
    a_eff, ls = _oriented_line(field, direction)
    if not ls.coeffs:
        return CheckResult(
            name="interpolation",
            passed=True,
            measured=0.0,
            threshold=4.0,
            detail="vacuous",
        )
    sup = maximize_offset(ls)[1]
    mass = line_mass(ls)
    gprime_sq = FOUR_PI_SQ * sum((d * a_eff) ** 2 * abs(c) ** 2 for d, c in ls.coeffs.items())
    length = direction.length()
    measured = sup * math.sqrt(length) / (mass**0.25 * gprime_sq**0.25)
    return CheckResult(
        name="interpolation",
        passed=measured <= 4.0,
        measured=measured,
        threshold=4.0,
        detail=f"direction {direction.astuple()}, oriented a={a_eff}",
    )


def check_decay_of_averages(field: SpectralField, s: int = 2) -> CheckResult:
    """Geodesic averages decay like deriv_l1(s) / length^s; the headroom
    constant 2^s absorbs the s-dependent constant."""
    if s < 2:
        raise ValueError("decay check requires s >= 2")
    if len(field) == 0:
        raise ValueError("empty field")
    deriv = norms(field, s_max=s).deriv_l1[s]
    measured = 0.0
    detail = ""
    for direction in enumerate_directions(max(field.bandlimit, 1.0)):
        ls = line_spectrum(field, direction)
        if not ls.coeffs:
            continue
        ratio = maximize_offset(ls)[1] * direction.length() ** s / deriv
        if ratio > measured:
            measured = ratio
            detail = f"worst direction {direction.astuple()}"
    return CheckResult(
        name="decay_of_averages",
        passed=measured <= 2.0**s,
        measured=measured,
        threshold=2.0**s,
        detail=detail or "no nonempty lines",
    )


def _check_oracle_equivalence(field: SpectralField) -> CheckResult:
    bound = search_bound(field).with_radius(field.bandlimit)
    spectral = find_extremal(field, bound)
    _, bf_value = brute_force_extremal(field, radius=field.bandlimit)
    measured = abs(spectral.value - bf_value)
    return CheckResult(
        name="oracle_equivalence",
        passed=measured <= 1e-9,
        measured=measured,
        threshold=1e-9,
        detail=f"spectral {spectral.value:.12g} vs quadrature {bf_value:.12g}",
    )


def _check_plancherel_on_line(field: SpectralField) -> CheckResult:
    """Offset-grid mean square vs. line mass, plus max >= sqrt(mass)."""
    worst = 0.0
    detail = ""
    dominated = True
    for direction in enumerate_directions(max(field.bandlimit, 1.0)):
        ls = line_spectrum(field, direction)
        mass = line_mass(ls)
        n_grid = 2 * (2 * ls.dmax + 1)
        grid = np.arange(n_grid) / n_grid
        mean_sq = float(np.mean([offset_function(ls, t) ** 2 for t in grid]))
        rel = abs(mean_sq - mass) / max(mass, 1e-300) if mass > 0.0 else abs(mean_sq)
        if rel > worst:
            worst = rel
            detail = f"worst direction {direction.astuple()}"
        if ls.coeffs and maximize_offset(ls)[1] < math.sqrt(mass) - 1e-9:
            dominated = False
            detail = f"max below sqrt(mass) at {direction.astuple()}"
    return CheckResult(
        name="plancherel_on_line",
        passed=dominated and worst <= 1e-10,
        measured=worst,
        threshold=1e-10,
        detail=detail or "all lines consistent",
    )


def run_all_checks(field: SpectralField, s: int = 2) -> VerificationReport:
    """All six proof sub-claim checks in fixed order."""
    if s < 2:
        raise ValueError("s must be >= 2")
    interp_worst: CheckResult | None = None
    skipped = 0
    for direction in enumerate_directions(max(field.bandlimit, 1.0)):
        result = check_interpolation_inequality(field, direction)
        if result.detail == "vacuous":
            skipped += 1
            continue
        if interp_worst is None or result.measured > interp_worst.measured:
            interp_worst = result
    if interp_worst is None:
        interp_worst = CheckResult("interpolation", True, 0.0, 4.0, "vacuous")
    if skipped:
        interp_worst = CheckResult(
            interp_worst.name,
            interp_worst.passed,
            interp_worst.measured,
            interp_worst.threshold,
            f"{interp_worst.detail}; {skipped} empty lines skipped",
        )
    checks = [
        check_tail_mass(field),
        check_covering_lower_bound(field),
        interp_worst,
        check_decay_of_averages(field, s),
        _check_oracle_equivalence(field),
        _check_plancherel_on_line(field),
    ]
    return VerificationReport(checks=checks)
