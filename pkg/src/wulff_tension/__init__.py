"""Surface tension of the 2D Ising model via the killed random walk.

The supercritical surface tension, its Wulff shape, the walk Green function
(three independent routes), Monte Carlo estimators, Ornstein-Zernike
asymptotics and near-critical scaling limits.
"""

__version__ = "0.1.0"

from .duality import (
    BETA_C,
    TemperaturePair,
    critical_beta,
    dual_of,
    make_pair,
    pair_from_beta_low,
    pair_from_lambda,
    pair_from_m,
    rhs_excess,
)
from .errors import DomainError, ValidationError
from .green import (
    GreenValue,
    green,
    green_bessel,
    green_quadrature,
    green_series,
    hitting_laplace,
    ising_correlation_asymptotic,
    ising_prefactor,
)
from .montecarlo import McEstimate, simulate_hit, simulate_visits
from .rate import cramer, log_mgf, tau_variational
from .tension import Direction, onsager_axis, solve_s, tau, wulff_boundary
from .asymptotics import (
    SaddleData,
    decay_rate,
    numeric_saddle,
    oz_correlation_asymptotic,
    oz_visits_asymptotic,
    saddle,
)
from .scaling import isotropy_sweep, md_empirical, moderate_rate

__all__ = [
    "BETA_C", "Direction", "DomainError", "GreenValue", "McEstimate", "SaddleData",
    "TemperaturePair", "ValidationError", "cramer", "critical_beta", "decay_rate",
    "dual_of", "green", "green_bessel", "green_quadrature", "green_series",
    "hitting_laplace", "ising_correlation_asymptotic", "ising_prefactor",
    "isotropy_sweep", "log_mgf", "make_pair", "md_empirical", "moderate_rate",
    "numeric_saddle", "onsager_axis", "oz_correlation_asymptotic",
    "oz_visits_asymptotic", "pair_from_beta_low", "pair_from_lambda", "pair_from_m",
    "rhs_excess", "saddle", "simulate_hit", "simulate_visits", "solve_s", "tau",
    "tau_variational", "wulff_boundary",
]
