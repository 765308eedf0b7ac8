"""torusgeo: extremal closed geodesics for band-limited functions on T^2.

Given a mean-zero real-valued function on the flat 2-torus by its Fourier
coefficients, find the closed geodesic maximizing the absolute line average,
certify the search radius, and verify the analytic machinery against an
independent quadrature oracle.
"""

from ._kernels import NUMBA_ENABLED, PURE_NUMPY_ENV
from .extremizer import (
    ExtremalResult,
    SearchBound,
    ShortGeodesicResult,
    find_extremal,
    search_bound,
    short_geodesic_lower_bound,
)
from .geodesic import (
    ClosedGeodesic,
    GeodesicDirection,
    LineSpectrum,
    enumerate_directions,
    line_mass,
    line_spectrum,
    maximize_offset,
    offset_function,
)
from .oracle import (
    CheckResult,
    VerificationReport,
    brute_force_extremal,
    check_covering_lower_bound,
    check_decay_of_averages,
    check_interpolation_inequality,
    check_tail_mass,
    quadrature_average,
    quadrature_profile,
    run_all_checks,
)
from .spectrum import (
    FieldError,
    NormReport,
    SpectralField,
    evaluate,
    norms,
    parse_field,
    preset_random,
    preset_sine,
    serialize_field,
)

__version__ = "0.1.0"

__all__ = [
    "NUMBA_ENABLED",
    "PURE_NUMPY_ENV",
    "SpectralField",
    "NormReport",
    "FieldError",
    "parse_field",
    "serialize_field",
    "preset_sine",
    "preset_random",
    "evaluate",
    "norms",
    "GeodesicDirection",
    "ClosedGeodesic",
    "LineSpectrum",
    "enumerate_directions",
    "line_spectrum",
    "offset_function",
    "maximize_offset",
    "line_mass",
    "SearchBound",
    "ExtremalResult",
    "ShortGeodesicResult",
    "search_bound",
    "find_extremal",
    "short_geodesic_lower_bound",
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
    "__version__",
]
