"""Exception hierarchy shared by all modules."""


class QuasimarketError(Exception):
    """Base class for every error raised by this package."""


class DomainError(QuasimarketError, ValueError):
    """An argument lies outside the domain of the function."""


class ConvergenceError(QuasimarketError, ArithmeticError):
    """A root solve or quadrature failed to reach its tolerance."""


class CapacityError(QuasimarketError, OverflowError):
    """An exhaustive enumeration would exceed its state-space bound."""


class NoCriticalValueError(QuasimarketError, LookupError):
    """A requested critical value does not exist for the scenario."""
