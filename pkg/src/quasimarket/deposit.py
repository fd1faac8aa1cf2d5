"""Two-bank deposit model.

A depositor splits ``N`` units between one high-rate pyramid (rate
``lambda1``) and ``G`` equal strong banks (rate ``lambda2 < lambda1``).
With ``k`` units in the strong banks the objective is

    F(k, beta) = beta lambda1 N - beta (lambda1 - lambda2) k + ln W(k)

where ``ln W`` is the Bose (indistinguishable units) or Boltzmann
(labelled units) log-multiplicity. ``F`` is strictly concave in ``k``,
so the optimum is a boundary point or the unique root of ``dF/dk``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from ._roots import bisect
from .entropy import boltzmann_multiplicity, bose_multiplicity
from .errors import DomainError, NoCriticalValueError
from .specfun import EULER_GAMMA, digamma, digamma_gap, inv_digamma

STATISTICS = ("bose", "boltzmann")
PHASES = ("condensed", "mixed", "saturated")

_RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class DepositScenario:
    N: int
    G: int
    lambda1: float
    lambda2: float
    statistics: str = "bose"

    def __post_init__(self):
        if self.N < 1:
            raise DomainError(f"N must be >= 1, got {self.N}")
        if self.G < 1:
            raise DomainError(f"G must be >= 1, got {self.G}")
        if not self.lambda1 > self.lambda2:
            raise DomainError(f"need lambda1 > lambda2, got {self.lambda1} <= {self.lambda2}")
        if self.statistics not in STATISTICS:
            raise DomainError(f"statistics must be one of {STATISTICS}, got {self.statistics!r}")

    @property
    def delta_lambda(self) -> float:
        return self.lambda1 - self.lambda2

    @classmethod
    def from_ratio(cls, N: int, g: float, delta_lambda: float = 1.0, statistics: str = "bose") -> "DepositScenario":
        """Scenario with ``G = round(g N)`` strong banks and ``lambda2 = 0``."""
        return cls(N, max(1, round(g * N)), float(delta_lambda), 0.0, statistics)


@dataclass(frozen=True)
class CriticalBetas:
    beta_c: float | None
    beta_0: float
    m_floor: float | None = None


@dataclass(frozen=True)
class PhasePoint:
    beta: float
    k_star: float
    m_star: float
    income: float
    phase: str


def _kind(s: DepositScenario, kind: str | None) -> str:
    kind = s.statistics if kind is None else kind
    if kind not in STATISTICS:
        raise DomainError(f"kind must be one of {STATISTICS}, got {kind!r}")
    return kind


def _check_k(k: float, N: int) -> None:
    if not 0 <= k <= N:
        raise DomainError(f"k must lie in [0, {N}], got {k}")


def linear_income(k: float, beta: float, s: DepositScenario) -> float:
    _check_k(k, s.N)
    return beta * s.lambda1 * s.N - beta * s.delta_lambda * k


def information(k: float, s: DepositScenario, kind: str | None = None) -> float:
    """Log-multiplicity of putting ``k`` units into the strong banks."""
    if _kind(s, kind) == "bose":
        return bose_multiplicity(k, s.G)
    return boltzmann_multiplicity(k, s.N, s.G)


def total_income(k: float, beta: float, s: DepositScenario, kind: str | None = None) -> float:
    return linear_income(k, beta, s) + information(k, s, kind)


def marginal_information(k: float, s: DepositScenario, kind: str | None = None) -> float:
    """d/dk of the log-multiplicity; decreasing in k."""
    if _kind(s, kind) == "bose":
        return digamma_gap(s.G, k)
    return math.log(s.G) + digamma(s.N - k + 1.0) - digamma(k + 1.0)


def critical_betas(s: DepositScenario, kind: str | None = None) -> CriticalBetas:
    """Thresholds ``beta_c`` (all in strong banks below) and ``beta_0``
    (all in the pyramid above).

    In the Boltzmann case ``beta_c`` exists only if
    ``ln G + psi(1) - psi(N + 1) > 0``; otherwise ``m_floor`` is the pyramid
    deposit the optimum tends to as ``beta -> 0``.
    """
    kind = _kind(s, kind)
    dl = s.delta_lambda
    if kind == "bose":
        if s.G == 1:
            return CriticalBetas(None, 0.0)
        return CriticalBetas(digamma_gap(s.G, s.N) / dl, digamma_gap(s.G, 0.0) / dl)

    log_g = math.log(s.G)
    beta_0 = (log_g + digamma(s.N + 1.0) + EULER_GAMMA) / dl
    edge = log_g - EULER_GAMMA - digamma(s.N + 1.0)
    if edge > 0:
        return CriticalBetas(edge / dl, beta_0)

    def h(m: float) -> float:
        return log_g + digamma(m + 1.0) - digamma(s.N - m + 1.0)

    m_floor = 0.0 if edge == 0 else bisect(h, 0.0, float(s.N), _RESIDUAL_TOL)
    return CriticalBetas(None, beta_0, m_floor)


def classify_phase(beta: float, s: DepositScenario, kind: str | None = None, crit: CriticalBetas | None = None) -> str:
    """``condensed`` (everything in the pyramid), ``saturated`` (everything in
    the strong banks) or ``mixed``. Ties go to the extreme phase."""
    if not beta > 0:
        raise DomainError(f"beta must be positive, got {beta}")
    crit = critical_betas(s, kind) if crit is None else crit
    if beta >= crit.beta_0:
        return "condensed"
    if crit.beta_c is not None and beta <= crit.beta_c:
        return "saturated"
    return "mixed"


def optimal_k(beta: float, s: DepositScenario, kind: str | None = None) -> PhasePoint:
    """Continuous maximizer of ``total_income`` over ``k in [0, N]``."""
    kind = _kind(s, kind)
    crit = critical_betas(s, kind)
    phase = classify_phase(beta, s, kind, crit)
    if phase == "condensed":
        k = 0.0
    elif phase == "saturated":
        k = float(s.N)
    else:
        slope = beta * s.delta_lambda
        k = bisect(
            lambda k: marginal_information(k, s, kind) - slope,
            0.0,
            float(s.N),
            _RESIDUAL_TOL,
        )
    return PhasePoint(beta, k, s.N - k, total_income(k, beta, s, kind), phase)


def sweep(betas: Iterable[float], s: DepositScenario, kind: str | None = None) -> list[PhasePoint]:
    return [optimal_k(b, s, kind) for b in betas]


def beta_of_m(m: float, s: DepositScenario, kind: str | None = None) -> float:
    """The beta at which a pyramid deposit of ``m`` is optimal."""
    kind = _kind(s, kind)
    _check_k(m, s.N)
    value = marginal_information(s.N - m, s, kind) / s.delta_lambda
    if value <= 0:
        raise DomainError(f"no positive beta makes m={m} optimal (value {value})")
    return value


@dataclass(frozen=True)
class AsymptoticLimits:
    """``N -> infinity`` limits with ``G / N -> g``."""

    kind: str
    g: float
    delta_lambda: float

    def __post_init__(self):
        if self.kind not in STATISTICS:
            raise DomainError(f"kind must be one of {STATISTICS}, got {self.kind!r}")
        if not (self.g > 0 and self.delta_lambda > 0):
            raise DomainError("g and delta_lambda must be positive")

    @property
    def condition_21(self) -> bool | None:
        """Boltzmann only: does ``beta_c`` survive the limit (``g > e^C``)?"""
        if self.kind == "bose":
            return None
        return math.log(self.g) > EULER_GAMMA

    @property
    def beta_c_limit(self) -> float:
        if self.kind == "bose":
            return math.log1p(self.g) / self.delta_lambda
        gap = math.log(self.g) - EULER_GAMMA
        # g = e^C computed in floating point may land a rounding error below.
        if gap < -4.0 * 2.0**-52:
            raise NoCriticalValueError(f"g = {self.g} <= e^C: no limiting beta_c")
        return max(gap, 0.0) / self.delta_lambda

    def k_fraction(self, beta: float) -> float:
        """Bose limit of ``k(beta) / N`` for ``beta`` above the limiting ``beta_c``."""
        if self.kind != "bose":
            raise DomainError("k_fraction is a bose limit")
        return self.g / math.expm1(beta * self.delta_lambda)

    def beta_of_m_limit(self, m: float = 0.0) -> float:
        if self.kind == "bose":
            return math.log1p(self.g) / self.delta_lambda
        return (math.log(self.g) + digamma(m + 1.0)) / self.delta_lambda

    @property
    def m_tilde_0(self) -> float:
        """Boltzmann root of ``ln g + psi(m + 1) = 0`` when ``g <= e^C``."""
        if self.kind != "boltzmann":
            raise DomainError("m_tilde_0 is a boltzmann limit")
        if self.condition_21:
            raise NoCriticalValueError(f"g = {self.g} > e^C: beta_c exists, no limiting m0")
        return max(inv_digamma(-math.log(self.g)) - 1.0, 0.0)


def asymptotic_limits(kind: str, g: float, delta_lambda: float) -> AsymptoticLimits:
    return AsymptoticLimits(kind, float(g), float(delta_lambda))
