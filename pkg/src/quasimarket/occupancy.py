"""Occupation numbers from the implicit digamma equations.

For a level with value ``x`` and multiplicity ``G`` at parameter ``beta``
the occupancies solve

    bose:   beta x = psi(G + P) - psi(P + 1)
    fermi:  beta x = psi(G - P + 1) - psi(P + 1)
    gibbs:  s beta x_i + nu = psi(P_i + 1) + C,   sum P_i = M

which are exactly the stationarity conditions of the free energy
``sum x_i P_i - Theta S`` with ``Theta = 1 / beta``. For ``P, G >> 1``
they reduce to ``G / (exp(beta x) -+ 1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from ._roots import bisect
from .entropy import bose_multiplicity
from .errors import ConvergenceError, DomainError
from .specfun import EULER_GAMMA, digamma, digamma_gap, inv_digamma, log_gamma

KINDS = ("bose", "fermi")
ORIENTATIONS = {"market": 1.0, "thermo": -1.0}

_RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class LevelSpec:
    """Level values ``x`` (strictly increasing) with multiplicities ``G >= 1``."""

    x: tuple[float, ...]
    G: tuple[float, ...]

    def __post_init__(self):
        x = tuple(float(v) for v in self.x)
        G = tuple(float(v) for v in self.G)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "G", G)
        if not x:
            raise DomainError("need at least one level")
        if len(x) != len(G):
            raise DomainError(f"x has {len(x)} levels but G has {len(G)}")
        if any(b <= a for a, b in zip(x, x[1:])):
            raise DomainError("level values must be strictly increasing")
        if any(g < 1 for g in G):
            raise DomainError("multiplicities must be >= 1")

    def __len__(self) -> int:
        return len(self.x)

    @classmethod
    def uniform(cls, x: Sequence[float], G: float = 1.0) -> "LevelSpec":
        return cls(tuple(x), tuple(G for _ in x))


@dataclass(frozen=True)
class OccupancyVector:
    P: tuple[float, ...]
    total: float
    multiplier: float | None = None  # normalizing nu, gibbs only

    def __post_init__(self):
        object.__setattr__(self, "P", tuple(float(v) for v in self.P))
        if any(v < 0 for v in self.P):
            raise DomainError("occupancies must be nonnegative")

    @classmethod
    def of(cls, P: Sequence[float]) -> "OccupancyVector":
        return cls(tuple(P), math.fsum(P))


@dataclass(frozen=True)
class ThermoState:
    """``beta`` and the temperature ``theta = 1 / beta``."""

    beta: float
    orientation: str = "market"

    def __post_init__(self):
        if not self.beta > 0:
            raise DomainError(f"beta must be positive, got {self.beta}")
        if self.orientation not in ORIENTATIONS:
            raise DomainError(f"orientation must be market or thermo, got {self.orientation!r}")

    @property
    def theta(self) -> float:
        return 1.0 / self.beta

    @classmethod
    def from_theta(cls, theta: float, orientation: str = "market") -> "ThermoState":
        return cls(1.0 / theta, orientation)


def _check_kind(kind: str) -> None:
    if kind not in KINDS:
        raise DomainError(f"kind must be one of {KINDS}, got {kind!r}")


def level_occupancy(kind: str, x: float, G: float, beta: float) -> float:
    """Solve the implicit occupancy equation of one level."""
    _check_kind(kind)
    if not beta > 0:
        raise DomainError(f"beta must be positive, got {beta}")
    if not G > 0:
        raise DomainError(f"G must be positive, got {G}")
    y = beta * x

    if kind == "bose":
        if G == 1:
            raise DomainError("degenerate level: G = 1 makes the digamma gap vanish")
        if y <= 0:
            raise DomainError(f"beta*x = {y} <= 0 gives unbounded bose occupation")
        if y >= digamma_gap(G, 0.0):
            return 0.0
        hi = 10.0 * G / math.expm1(y) + 10.0
        while digamma_gap(G, hi) > y:
            hi *= 2.0
        return bisect(lambda P: digamma_gap(G, P) - y, 0.0, hi, _RESIDUAL_TOL)

    def residual(P: float) -> float:
        return digamma(G - P + 1.0) - digamma(P + 1.0) - y

    if residual(0.0) <= 0.0:
        return 0.0
    if residual(G) >= 0.0:
        return float(G)
    return bisect(residual, 0.0, float(G), _RESIDUAL_TOL)


def occupancy_asymptotic(kind: str, x: float, G: float, beta: float) -> float:
    """``G / (exp(beta x) - 1)`` for bose, ``G / (exp(beta x) + 1)`` for fermi."""
    _check_kind(kind)
    y = beta * x
    if kind == "bose":
        if y == 0:
            raise DomainError("division by zero: beta*x = 0 in the bose form")
        if y < 0:
            raise DomainError(f"beta*x = {y} < 0 gives a negative bose occupancy")
        return G / math.expm1(y)
    if y > 0:
        e = math.exp(-y)
        return G * e / (1.0 + e)
    return G / (1.0 + math.exp(y))


def level_occupancies(kind: str, levels: LevelSpec, beta: float) -> OccupancyVector:
    return OccupancyVector.of([level_occupancy(kind, x, G, beta) for x, G in zip(levels.x, levels.G)])


def _gibbs_single(v: float) -> float:
    # psi(P + 1) + C = v; P = 0 once v <= 0
    if v <= 0.0:
        return 0.0
    return max(inv_digamma(v - EULER_GAMMA) - 1.0, 0.0)


def gibbs_occupancy(
    levels: LevelSpec,
    beta: float,
    M: float,
    orientation: str = "market",
) -> OccupancyVector:
    """Occupancies with ``sum P = M`` solving the Gibbs-type implicit equation.

    The normalizing multiplier ``nu`` is found by bisection; the total is
    increasing in ``nu``.
    """
    if orientation not in ORIENTATIONS:
        raise DomainError(f"orientation must be market or thermo, got {orientation!r}")
    if not M > 0:
        raise DomainError(f"M must be positive, got {M}")
    if beta < 0:
        raise DomainError(f"beta must be nonnegative, got {beta}")
    s = ORIENTATIONS[orientation]
    drive = [s * beta * x for x in levels.x]
    if len(drive) == 1:
        return OccupancyVector((float(M),), float(M), None)

    def excess(nu: float) -> float:
        return math.fsum(_gibbs_single(d + nu) for d in drive) - M

    nu_lo = -max(drive)
    nu_hi = digamma(M + 1.0) + EULER_GAMMA - min(drive)
    tol = max(1e-8, 1e-13 * M)
    try:
        nu = bisect(excess, nu_lo, nu_hi, tol)
    except ConvergenceError as exc:
        raise ConvergenceError(f"no multiplier normalizes the occupancies to M={M}") from exc
    P = tuple(_gibbs_single(d + nu) for d in drive)
    return OccupancyVector(P, float(M), nu)


def gibbs_asymptotic(levels: LevelSpec, beta: float, M: float, orientation: str = "market") -> OccupancyVector:
    """The Gibbs law ``M exp(s beta x_i) / sum_j exp(s beta x_j)``."""
    s = ORIENTATIONS[orientation]
    a = [s * beta * x for x in levels.x]
    top = max(a)
    w = [math.exp(v - top) for v in a]
    z = math.fsum(w)
    return OccupancyVector(tuple(M * v / z for v in w), float(M))


def statistics_entropy(kind: str, levels: LevelSpec, P: OccupancyVector) -> float:
    """Log of the number of microstates of the occupancy vector."""
    _check_kind(kind)
    if len(P.P) != len(levels):
        raise DomainError("occupancy vector and levels differ in length")
    terms = []
    for G, p in zip(levels.G, P.P):
        if kind == "bose":
            terms.append(bose_multiplicity(p, G))
        else:
            if p > G:
                raise DomainError(f"fermi over-occupation: P={p} > G={G}")
            terms.append(log_gamma(G + 1.0) - log_gamma(G - p + 1.0) - log_gamma(p + 1.0))
    return math.fsum(terms)


def free_energy(levels: LevelSpec, P: OccupancyVector, theta: float, kind: str) -> float:
    """``sum x_i P_i - theta S``."""
    energy = math.fsum(x * p for x, p in zip(levels.x, P.P))
    return energy - theta * statistics_entropy(kind, levels, P)


def naive_max(levels: LevelSpec, N: int) -> tuple[OccupancyVector, float]:
    """Put all N units on the most valuable level."""
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    top = max(range(len(levels)), key=lambda i: levels.x[i])
    P = [0.0] * len(levels)
    P[top] = float(N)
    return OccupancyVector(tuple(P), float(N)), N * levels.x[top]
