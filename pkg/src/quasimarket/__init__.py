"""Entropy-regularized deposit allocation in a quasistable market.

Gamma-function entropies, Bose/Fermi/Gibbs occupancies and the two-bank
deposit model with its critical values and condensed phase.
"""

__version__ = "0.1.0"

from .errors import (
    CapacityError,
    ConvergenceError,
    DomainError,
    NoCriticalValueError,
    QuasimarketError,
)
from .specfun import EULER_GAMMA, digamma, digamma_gap, inv_digamma, log_gamma

__all__ = [
    "__version__",
    "CapacityError",
    "ConvergenceError",
    "DomainError",
    "NoCriticalValueError",
    "QuasimarketError",
    "EULER_GAMMA",
    "digamma",
    "digamma_gap",
    "inv_digamma",
    "log_gamma",
]
