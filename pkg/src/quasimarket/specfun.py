"""Scalar special functions: log-gamma, digamma, its inverse and the digamma gap.

Everything is restricted to positive real arguments. The large-argument
asymptotic series are applied above ``_ASYMPTOTIC_THRESHOLD``; smaller
arguments are moved there by the recurrence, except ``log_gamma`` near
its zeros at 1 and 2, which uses a Taylor series around those points so
the relative accuracy survives the cancellation.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .errors import ConvergenceError, DomainError

EULER_GAMMA = 0.57721566490153286061

_ASYMPTOTIC_THRESHOLD = 10.0
_HALF_LOG_2PI = 0.91893853320467274178

# B_2n for n = 1..8
_BERNOULLI = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
)

# zeta(k) - 1 for k = 2..30
_ZETA_MINUS_ONE = (
    0.64493406684822643647,
    0.2020569031595942854,
    0.082323233711138191516,
    0.036927755143369926331,
    0.017343061984449139715,
    0.0083492773819228268398,
    0.0040773561979443393787,
    0.0020083928260822144179,
    0.00099457512781808533715,
    0.0004941886041194645587,
    0.00024608655330804829864,
    0.00012271334757848914675,
    0.000061248135058704829259,
    0.000030588236307020493552,
    0.000015282259408651871733,
    0.0000076371976378997622736,
    0.0000038172932649998398565,
    0.0000019082127165539389257,
    0.00000095396203387279611315,
    0.00000047693298678780646312,
    0.00000023845050272773299,
    0.00000011921992596531107307,
    0.000000059608189051259479612,
    0.000000029803503514652280186,
    0.000000014901554828365041235,
    0.000000007450711789835429492,
    0.0000000037253340247884570548,
    0.0000000018626597235130490064,
    0.00000000093132743241966818287,
)


def _check_positive(x: float, name: str = "x") -> float:
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"{name} must be a positive finite real, got {x!r}")
    return x


def _lgamma_taylor(z: float) -> float:
    """Return ln Gamma(2 + z) - z (1 - C) for |z| <= 1/2."""
    total = 0.0
    power = -z
    for k, zm1 in enumerate(_ZETA_MINUS_ONE, start=2):
        power *= -z
        total += zm1 * power / k
    return total


def _lgamma_stirling(x: float) -> float:
    inv = 1.0 / x
    inv2 = inv * inv
    series = 0.0
    power = inv
    for n, b in enumerate(_BERNOULLI, start=1):
        series += b / (2 * n * (2 * n - 1)) * power
        power *= inv2
    return (x - 0.5) * math.log(x) - x + _HALF_LOG_2PI + series


def log_gamma(x: float) -> float:
    """Natural logarithm of the gamma function for ``x > 0``."""
    x = _check_positive(x)
    if x >= _ASYMPTOTIC_THRESHOLD:
        return _lgamma_stirling(x)
    if x < 0.5:
        # ln Gamma(x) = ln Gamma(x + 1) - ln x, with x + 1 in [1, 1.5)
        z = x
        return -math.log1p(z) + z * (1.0 - EULER_GAMMA) + _lgamma_taylor(z) - math.log(x)
    if x < 1.5:
        z = x - 1.0
        return -math.log1p(z) + z * (1.0 - EULER_GAMMA) + _lgamma_taylor(z)
    if x < 2.5:
        z = x - 2.0
        return z * (1.0 - EULER_GAMMA) + _lgamma_taylor(z)
    # 2.5 <= x < 10: step down into [1.5, 2.5)
    prod = 1.0
    while x >= 2.5:
        x -= 1.0
        prod *= x
    z = x - 2.0
    return z * (1.0 - EULER_GAMMA) + _lgamma_taylor(z) + math.log(prod)


def _digamma_asymptotic(x: float) -> float:
    inv2 = 1.0 / (x * x)
    series = 0.0
    power = inv2
    for n, b in enumerate(_BERNOULLI, start=1):
        series += b / (2 * n) * power
        power *= inv2
    return math.log(x) - 0.5 / x - series


def digamma(x: float) -> float:
    """Logarithmic derivative of the gamma function for ``x > 0``."""
    x = _check_positive(x)
    if x >= _ASYMPTOTIC_THRESHOLD:
        return _digamma_asymptotic(x)
    n = math.ceil(_ASYMPTOTIC_THRESHOLD - x)
    # Sum the recurrence terms from the far end so that psi(x) and psi(x + 1)
    # share every partial sum except the last 1/x.
    shift = 0.0
    for j in range(n - 1, -1, -1):
        shift += 1.0 / (x + j)
    return _digamma_asymptotic(x + n) - shift


def _trigamma(x: float) -> float:
    # Only used for Newton steps in inv_digamma.
    acc = 0.0
    while x < _ASYMPTOTIC_THRESHOLD:
        acc += 1.0 / (x * x)
        x += 1.0
    inv = 1.0 / x
    inv2 = inv * inv
    series = 0.0
    power = inv2 * inv
    for b in _BERNOULLI:
        series += b * power
        power *= inv2
    return acc + inv + 0.5 * inv2 + series


def inv_digamma(y: float, max_iter: int = 200) -> float:
    """Return the unique ``x > 0`` with ``digamma(x) == y``.

    Safeguarded Newton iteration: a bracket ``[lo, hi]`` is maintained and
    any step leaving it is replaced by a bisection step.
    """
    y = float(y)
    if not math.isfinite(y):
        raise DomainError(f"y must be finite, got {y!r}")
    # psi(x) < ln x, so the root lies beyond exp(y); past this it overflows.
    if y > 709.0:
        raise DomainError(f"inv_digamma({y}) overflows double precision")

    if y >= -2.22:
        x = math.exp(y) + 0.5
    else:
        x = -1.0 / (y + EULER_GAMMA)

    lo = hi = x
    while digamma(lo) > y:
        lo *= 0.5
    while digamma(hi) < y:
        hi *= 2.0

    tol = max(1e-10, 8.0 * np.finfo(float).eps * abs(y))
    for _ in range(max_iter):
        f = digamma(x) - y
        if f == 0.0:
            return x
        if f < 0.0:
            lo = max(lo, x)
        else:
            hi = min(hi, x)
        step = f / _trigamma(x)
        x_new = x - step
        if not lo < x_new < hi:
            x_new = 0.5 * (lo + hi)
        if abs(x_new - x) <= 4.0 * np.finfo(float).eps * x:
            x = x_new
            break
        x = x_new
    if abs(digamma(x) - y) > tol:
        raise ConvergenceError(f"inv_digamma({y}) did not converge (x={x})")
    return x


@lru_cache(maxsize=None)
def _gauss_legendre(order: int) -> tuple[np.ndarray, np.ndarray]:
    nodes, weights = np.polynomial.legendre.leggauss(order)
    return nodes, weights


def _gap_panels(G: float, k: float) -> list[tuple[float, float]]:
    # After t = exp(-u) the integrand varies on the scales 1/|G - 1|, 1 and
    # 1/(decay rate); panels double in width away from u = 0.
    rate = k + min(G, 1.0)
    upper = 40.0 / rate
    scales = [1.0, 1.0 / rate]
    if G != 1.0:
        scales.append(1.0 / abs(G - 1.0))
    width = 0.5 * min(scales)
    panels = []
    a = 0.0
    while a < upper:
        b = min(a + width, upper)
        panels.append((a, b))
        a = b
        width = b  # next panel is [b, 2b]
    return panels


def _gap_integrand(u: np.ndarray, G: float, k: float) -> np.ndarray:
    # (1 - e^{-(G-1)u}) / (1 - e^{-u}) has the finite limit G - 1 at u = 0.
    ratio = np.expm1(-(G - 1.0) * u) / np.expm1(-u)
    return np.exp(-(k + 1.0) * u) * ratio


def _gap_quadrature(G: float, k: float, order: int) -> float:
    nodes, weights = _gauss_legendre(order)
    total = 0.0
    for a, b in _gap_panels(G, k):
        half = 0.5 * (b - a)
        u = a + half * (nodes + 1.0)
        total += half * float(np.dot(weights, _gap_integrand(u, G, k)))
    return total


_GAP_SUM_MAX = 64.0


def digamma_gap(G: float, k: float, method: str = "closed-form") -> float:
    """Return ``digamma(G + k) - digamma(k + 1)``.

    ``method="quadrature"`` evaluates the integral
    ``int_0^1 (t^k - t^(G+k-1)) / (1 - t) dt`` instead, by composite
    Gauss-Legendre (order 64 per panel) after the substitution
    ``t = exp(-u)``; the integrand's removable singularity at ``t = 1``
    becomes its limit ``G - 1`` at ``u = 0``.
    """
    G = _check_positive(G, "G")
    k = float(k)
    if not math.isfinite(k) or k < 0.0:
        raise DomainError(f"k must be a nonnegative finite real, got {k!r}")
    if method == "closed-form":
        if G == 1.0:
            return 0.0
        if G.is_integer() and G <= _GAP_SUM_MAX:
            # finite harmonic sum, smallest terms first; exact at e.g. G = 2, k = 0
            return math.fsum(1.0 / (k + j) for j in range(int(G) - 1, 0, -1))
        return digamma(G + k) - digamma(k + 1.0)
    if method == "quadrature":
        if G == 1.0:
            return 0.0
        value = _gap_quadrature(G, k, 64)
        check = _gap_quadrature(G, k, 96)
        if abs(value - check) > 1e-11 * max(1.0, abs(value)):
            raise ConvergenceError(
                f"digamma_gap quadrature unconverged for G={G}, k={k}: {value} vs {check}"
            )
        return value
    raise ValueError(f"unknown method {method!r}")
