"""Brute-force ground truth for the deposit optimizer and the counting formulas.

Nothing here calls the gamma-function code: integer log-multiplicities are
accumulated term by term from their product definitions, and allocations
are counted by recursing over individual banks.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .deposit import DepositScenario
from .errors import CapacityError, DomainError

ENUMERATION_BOUND = 10**8
GENERATOR = "numpy.random.PCG64"


def integer_information(s: DepositScenario, kind: str | None = None) -> np.ndarray:
    """ln W(k) for every integer k in 0..N as cumulative sums of log ratios.

    bose:      W(k) = prod_{j=1..k} (G + j - 1) / j
    boltzmann: W(k) = prod_{j=1..k} G (N - j + 1) / j
    """
    kind = s.statistics if kind is None else kind
    j = np.arange(1, s.N + 1, dtype=float)
    if kind == "bose":
        steps = np.log((s.G + j - 1.0) / j)
    elif kind == "boltzmann":
        steps = np.log(s.G * (s.N - j + 1.0) / j)
    else:
        raise DomainError(f"unknown statistics {kind!r}")
    return np.concatenate(([0.0], np.cumsum(steps)))


def integer_incomes(beta: float, s: DepositScenario, kind: str | None = None) -> np.ndarray:
    k = np.arange(s.N + 1, dtype=float)
    return beta * s.lambda1 * s.N - beta * s.delta_lambda * k + integer_information(s, kind)


def brute_force_optimum(beta: float, s: DepositScenario, kind: str | None = None) -> tuple[int, float]:
    """Scan every integer k; ties go to the smaller k."""
    if s.N > 10**6:
        raise CapacityError(f"N={s.N} exceeds the exhaustive-scan bound 10^6")
    incomes = integer_incomes(beta, s, kind)
    k = int(np.argmax(incomes))
    return k, float(incomes[k])


def _check_banks(K: int, banks: Sequence[int]) -> int:
    if K < 1:
        raise DomainError(f"K must be >= 1, got {K}")
    if not banks or any(int(b) != b or b < 1 for b in banks):
        raise DomainError("bank multiplicities must be positive integers")
    return int(sum(banks))


def enumerate_allocations(K: int, banks: Sequence[int]) -> int:
    """Number of ways to place K identical bonds into the listed bank groups.

    Every bank of every group is a separate cell; the count recurses over
    how many bonds the next cell receives.
    """
    cells = _check_banks(K, banks)
    if (K + 1) * cells > ENUMERATION_BOUND:
        raise CapacityError(f"state space (K+1)*cells = {(K + 1) * cells} exceeds {ENUMERATION_BOUND}")

    @lru_cache(maxsize=None)
    def count(remaining: int, cells_left: int) -> int:
        if cells_left == 1:
            return 1
        return sum(count(remaining - j, cells_left - 1) for j in range(remaining + 1))

    # Fill the cache bottom-up so the recursion depth stays at one level.
    for c in range(1, cells + 1):
        for r in range(K + 1):
            count(r, c)
    return count(K, cells)


def iter_allocations(K: int, banks: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Yield every allocation of K identical bonds as a per-cell tuple."""
    cells = _check_banks(K, banks)

    def fill(remaining: int, n: int) -> Iterator[tuple[int, ...]]:
        if n == 1:
            yield (remaining,)
            return
        for j in range(remaining + 1):
            for rest in fill(remaining - j, n - 1):
                yield (j,) + rest

    yield from fill(K, cells)


def group_split_counts(K: int, banks: Sequence[int]) -> dict[tuple[int, ...], int]:
    """Allocations tallied by how many bonds land in each bank group."""
    _check_banks(K, banks)
    bounds = np.cumsum([0, *banks])
    tally: dict[tuple[int, ...], int] = {}
    for alloc in iter_allocations(K, banks):
        key = tuple(sum(alloc[a:b]) for a, b in zip(bounds, bounds[1:]))
        tally[key] = tally.get(key, 0) + 1
    return tally


@dataclass(frozen=True)
class CoinTurnover:
    M: int
    seed: int
    initial_heads: int
    final_heads: int
    generator: str = GENERATOR


def coin_turnover(M: int, seed: int) -> CoinTurnover:
    """M fair +-1 draws; afterwards every tail is turned over to a head."""
    if M < 1:
        raise DomainError(f"M must be >= 1, got {M}")
    rng = np.random.Generator(np.random.PCG64(seed))
    draws = np.where(rng.integers(0, 2, size=M) == 1, 1, -1)
    initial = int(np.count_nonzero(draws == 1))
    turned = np.abs(draws)
    return CoinTurnover(M, seed, initial, int(np.count_nonzero(turned == 1)))
