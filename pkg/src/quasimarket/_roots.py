"""Bracketed bisection used by every monotone solve in the package."""

from __future__ import annotations

from typing import Callable

from .errors import ConvergenceError


def bisect(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    ftol: float = 1e-10,
    max_iter: int = 2000,
) -> float:
    """Root of ``f`` on ``[lo, hi]``; ``f(lo)`` and ``f(hi)`` must differ in sign.

    Iterates until ``|f| <= ftol`` *and* the bracket has shrunk to adjacent
    floats, so the returned point is as accurate as double precision allows.
    Raises ConvergenceError if the best point still misses ``ftol``.
    """
    f_lo = f(lo)
    if f_lo == 0.0:
        return lo
    f_hi = f(hi)
    if f_hi == 0.0:
        return hi
    if (f_lo > 0) == (f_hi > 0):
        raise ConvergenceError(f"root not bracketed: f({lo})={f_lo}, f({hi})={f_hi}")
    best, f_best = (lo, f_lo) if abs(f_lo) < abs(f_hi) else (hi, f_hi)
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        f_mid = f(mid)
        if abs(f_mid) < abs(f_best):
            best, f_best = mid, f_mid
        if f_mid == 0.0:
            return mid
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    if abs(f_best) > ftol:
        raise ConvergenceError(f"bisection stalled at x={best} with residual {f_best}")
    return best
