"""Large-M asymptotics of infinite-order rogue waves of the focusing NLS equation.

Modules:

``specfun``        elliptic integrals, Jacobi functions, theta function
``phase``          phase function, critical point, boundary curve
``spectral``       genus-one spectral curve and the lambda solver
``elliptic_data``  periods, Abel constants, Delta and phi
``wavefield``      bulk modulus, complex amplitude, L2 mass
``edge``           soliton train near the boundary
``whitham``        characteristic speeds and modulation residuals
``cli``            command-line front end
"""

from .errors import AccuracyError, ConfigurationError, ConsistencyError, DomainError, RogueWaveError
from .phase import Region, ScalingMap, chi_crit, critical_point
from .settings import DEFAULT, Settings
from .spectral import SpectralCurve, solve_lambda
from .elliptic_data import EllipticData, compute as compute_elliptic_data
from .wavefield import WaveSample, l2_norm_bulk, modulus_squared, psi_breve
from .edge import soliton_sum, soliton_term
from .whitham import characteristic_speeds

__version__ = "0.1.0"

__all__ = [
    "AccuracyError", "ConfigurationError", "ConsistencyError", "DomainError", "RogueWaveError",
    "Region", "ScalingMap", "chi_crit", "critical_point", "DEFAULT", "Settings",
    "SpectralCurve", "solve_lambda", "EllipticData", "compute_elliptic_data", "WaveSample",
    "l2_norm_bulk", "modulus_squared", "psi_breve", "soliton_sum", "soliton_term",
    "characteristic_speeds",
]
