"""Independent verification routes: quadrature, Monte Carlo, identities."""

from .identities import (
    SUITES,
    identity_gaussian_c5,
    identity_gaussian_moments_10,
    identity_gaussian_quadratic_25,
    identity_laguerre_c6,
    identity_laguerre_c7,
    identity_laguerre_radial_20,
    run_all,
    run_suite,
)
from .montecarlo import mc_counts
from .quadrature import (
    QuadratureConfig,
    formula9_bound,
    formula9_quadrature,
    p_function_quadrature,
    polar_integral,
    radial_integral,
)
from .report import ComparisonReport, compare, compare_histogram

__all__ = [
    "SUITES",
    "ComparisonReport",
    "QuadratureConfig",
    "compare",
    "compare_histogram",
    "formula9_bound",
    "formula9_quadrature",
    "identity_gaussian_c5",
    "identity_gaussian_moments_10",
    "identity_gaussian_quadratic_25",
    "identity_laguerre_c6",
    "identity_laguerre_c7",
    "identity_laguerre_radial_20",
    "mc_counts",
    "p_function_quadrature",
    "polar_integral",
    "radial_integral",
    "run_all",
    "run_suite",
]
