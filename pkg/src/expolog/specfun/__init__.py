"""Special functions: E(x), Dickman rho_a, Buchstab Omega_a, moment
integrals, and the constants registry."""

from .expint import exp_integral_E, expint_remainder
from .dickman import (dickman_rho, rho_function, rho_weighted_integral,
                      rho_plain_integral, ToleranceNotMet)
from .buchstab import buchstab_Omega, omega_function, omega_family
from .moments import (QuadratureResult, moment_largest,
                      moment_largest_via_rho, moment_smallest,
                      median_limit, omega_moment, lambda_smooth)
from .constants import constants, constant, ConstantEntry

__all__ = [
    "exp_integral_E", "expint_remainder",
    "dickman_rho", "rho_function", "rho_weighted_integral",
    "rho_plain_integral", "ToleranceNotMet",
    "buchstab_Omega", "omega_function", "omega_family",
    "QuadratureResult", "moment_largest", "moment_largest_via_rho",
    "moment_smallest", "median_limit", "omega_moment", "lambda_smooth",
    "constants", "constant", "ConstantEntry",
]
