"""Log-multiplicities and gamma-function entropy symbols.

All counts are returned as natural logarithms; the raw counts overflow a
double long before the sizes of interest.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError
from .specfun import log_gamma as _lg


@dataclass(frozen=True)
class CountVector:
    """Per-outcome test counts ``P_i = M p_i`` with ``sum(P) == M``."""

    P: tuple[float, ...]
    M: float

    def __post_init__(self):
        P = tuple(float(v) for v in self.P)
        object.__setattr__(self, "P", P)
        if not P:
            raise DomainError("CountVector needs at least one count")
        if self.M <= 0:
            raise DomainError(f"M must be positive, got {self.M}")
        if abs(math.fsum(P) - self.M) > 1e-9 * max(1.0, self.M):
            raise DomainError(f"counts sum to {math.fsum(P)}, expected M={self.M}")

    @classmethod
    def from_probabilities(cls, p: Sequence[float], M: float) -> "CountVector":
        return cls(tuple(M * float(pi) for pi in p), M)


@dataclass(frozen=True)
class DiscreteMeasureTriple:
    """Finite atomic measures P (total 1), Q (total M) and mu (total K).

    Every atom carries positive P-mass, so Q << P and mu << P and the
    densities are simply ``q / p`` and ``mu / p``.
    """

    p: tuple[float, ...]
    q: tuple[float, ...]
    mu: tuple[float, ...]
    M: float
    K: float

    def __post_init__(self):
        for name in ("p", "q", "mu"):
            object.__setattr__(self, name, tuple(float(v) for v in getattr(self, name)))
        n = len(self.p)
        if n == 0 or len(self.q) != n or len(self.mu) != n:
            raise DomainError("p, q and mu must be non-empty and of equal length")
        if any(v <= 0 for v in self.p):
            raise DomainError("every atom needs strictly positive P-mass")
        if any(v < 0 for v in self.q) or any(v < 0 for v in self.mu):
            raise DomainError("q and mu must be nonnegative")
        if self.M <= 0 or self.K <= 0:
            raise DomainError("M and K must be positive")
        if abs(math.fsum(self.p) - 1.0) > 1e-12:
            raise DomainError(f"p sums to {math.fsum(self.p)}, expected 1")
        if abs(math.fsum(self.q) - self.M) > 1e-9 * max(1.0, self.M):
            raise DomainError(f"q sums to {math.fsum(self.q)}, expected M={self.M}")
        if abs(math.fsum(self.mu) - self.K) > 1e-9 * max(1.0, self.K):
            raise DomainError(f"mu sums to {math.fsum(self.mu)}, expected K={self.K}")

    @property
    def atom_count(self) -> int:
        return len(self.p)

    def dq_dp(self) -> tuple[float, ...]:
        return tuple(q / p for q, p in zip(self.q, self.p))

    def dmu_dp(self) -> tuple[float, ...]:
        return tuple(m / p for m, p in zip(self.mu, self.p))


def bose_multiplicity(k: float, G: float) -> float:
    """ln of C(G + k - 1, k), the ways to put k identical units into G cells."""
    if k < 0 or G < 1:
        raise DomainError(f"need k >= 0 and G >= 1, got k={k}, G={G}")
    if k == 0 or G == 1:
        return 0.0
    return _lg(k + G) - _lg(k + 1.0) - _lg(G)


def boltzmann_multiplicity(k: float, N: float, G: float) -> float:
    """ln of C(N, k) G^k: choose k of N labelled units, each into one of G cells."""
    if G < 1:
        raise DomainError(f"G must be >= 1, got {G}")
    if k < 0 or k > N:
        raise DomainError(f"need 0 <= k <= N, got k={k}, N={N}")
    return _lg(N + 1.0) - _lg(k + 1.0) - _lg(N - k + 1.0) + k * math.log(G)


def entropy_symbol(counts: CountVector, normalized: bool = False) -> float:
    """``(1/M) sum ln Gamma(P_i)``.

    With ``normalized=True`` the Stirling shift ``ln M - 1`` is removed, so
    the value tends to ``sum p_i ln p_i`` as M grows with p fixed.
    """
    if any(v <= 0 for v in counts.P):
        raise DomainError("entropy symbol needs every P_i > 0")
    raw = math.fsum(_lg(v) for v in counts.P) / counts.M
    if normalized:
        return raw - math.log(counts.M) + 1.0
    return raw


def relative_entropy_symbol(t: DiscreteMeasureTriple, normalized: bool = False) -> float:
    """``(1/M) sum_i p_i ln Gamma(q_i / p_i)`` over the atoms.

    ``normalized=True`` adds ``1 - ln M``, which makes the value tend to
    ``(1/M) sum q_i ln(q_i / (M p_i))`` once every density ``q_i/p_i`` is
    large (``ln Gamma(r) ~ r ln r - r``).
    """
    terms = []
    for p, r in zip(t.p, t.dq_dp()):
        if r <= 0:
            raise DomainError("relative entropy symbol needs q_i > 0 at every atom")
        terms.append(p * _lg(r))
    raw = math.fsum(terms) / t.M
    if normalized:
        return raw + 1.0 - math.log(t.M)
    return raw


def kl_limit(t: DiscreteMeasureTriple) -> float:
    """``(1/M) sum q_i ln(q_i / (M p_i))`` with ``0 ln 0 = 0``."""
    terms = [q * math.log(q / (t.M * p)) for p, q in zip(t.p, t.q) if q > 0]
    return math.fsum(terms) / t.M


def bose_relative_entropy(t: DiscreteMeasureTriple) -> float:
    M, K = t.M, t.K
    terms = []
    for p, r, s in zip(t.p, t.dq_dp(), t.dmu_dp()):
        if r <= 0 or s <= 0:
            raise DomainError("Bose relative entropy needs q_i > 0 and mu_i > 0")
        terms.append(p * (_lg(r + s) / (M + K) - _lg(r + 1.0) / M - _lg(s) / K))
    return math.fsum(terms)


def fermi_relative_entropy(t: DiscreteMeasureTriple) -> float:
    M, K = t.M, t.K
    terms = []
    for p, r, s in zip(t.p, t.dq_dp(), t.dmu_dp()):
        free = s - r + 1.0
        if free <= 0:
            raise DomainError(
                f"over-occupation: dQ/dP={r} exceeds dmu/dP + 1 = {s + 1.0}"
            )
        terms.append(p * (_lg(s + 1.0) / K - _lg(r + 1.0) / M - _lg(free) / (K + M)))
    return math.fsum(terms)


def version_count(K: int, G2: int, mode: str = "sum") -> float:
    """ln of the number of ways to split K identical bonds between one
    pyramid and G2 equal banks.

    ``mode="sum"`` sums the stars-and-bars counts over every split
    ``k1 + k2 = K`` (which collapses to C(G2 + K, K)); ``mode="product"``
    multiplies the per-``k2`` counts for ``k2 = 1..K`` instead.
    """
    if K < 1 or G2 < 1:
        raise DomainError(f"need K >= 1 and G2 >= 1, got K={K}, G2={G2}")
    if mode == "sum":
        terms = np.array([bose_multiplicity(k2, G2) for k2 in range(K + 1)])
        top = terms.max()
        return float(top + math.log(np.exp(terms - top).sum()))
    if mode == "product":
        return math.fsum(bose_multiplicity(k2, G2) for k2 in range(1, K + 1))
    raise ValueError(f"unknown mode {mode!r}")
