"""Pure-Python backend for the numerical hot kernels.

Interchangeable with the compiled backend in ``_fast.pyx``; both expose the
same flat function surface and the same conventions:

* ``lngamma``/``gammafn`` never raise, they signal poles with ``nan`` and
  overflow with ``inf`` (callers translate to typed errors),
* ``ml3`` returns ``(value, terms_used, tail_bound)`` with ``terms_used < 0``
  when the term cap was exhausted,
* ``series_sum_many`` evaluates a truncated power series at many points.
"""

from __future__ import annotations

import math

import numpy as np

NAME = "pure"

# Stirling series correction S(y) with Bernoulli numbers,
#   ln Gamma(y) = (y - 1/2) ln y - y + ln sqrt(2 pi) + S(y),
# truncated after the y^-13 term; for y >= 13 the truncation error is
# below 6e-19.  Arguments under 13 are lifted with the recurrence
# Gamma(x) = Gamma(x + k) / (x (x+1) ... (x+k-1)).
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
)
_SQRT_2PI = 2.5066282746310002
_LOG_SQRT_2PI = 0.9189385332046727417803297364056176398


def _stirling_s(y: float) -> float:
    w = 1.0 / (y * y)
    acc = _STIRLING[6]
    for c in _STIRLING[5::-1]:
        acc = acc * w + c
    return acc / y


def _gamma_pos(x: float) -> float:
    """Gamma(x) for x >= 0.5, in linear space.

    The split power keeps intermediates representable right up to the
    double overflow threshold (x ~ 171.62) and avoids the exp(lngamma)
    error amplification (~|lngamma| * eps, i.e. ~1e-13 near x = 170).
    """
    prod = 1.0
    y = x
    while y < 13.0:
        prod *= y
        y += 1.0
    half = math.pow(y, 0.5 * (y - 0.5)) * math.exp(-0.5 * y)
    return _SQRT_2PI * math.exp(_stirling_s(y)) * half * half / prod


def lngamma(x: float) -> float:
    """log Gamma(x) for x > 0; nan otherwise."""
    if not x > 0.0:
        return math.nan
    if x >= 13.0:
        return (x - 0.5) * math.log(x) - x + _LOG_SQRT_2PI + _stirling_s(x)
    if x >= 0.5:
        return math.log(_gamma_pos(x))
    # log Gamma(x) = log(pi / sin(pi x)) - log Gamma(1 - x); sin > 0 on (0, 0.5)
    return math.log(math.pi / math.sin(math.pi * x)) - math.log(_gamma_pos(1.0 - x))


def gammafn(x: float) -> float:
    """Gamma(x) for real x; nan at nonpositive integers, inf on overflow."""
    if x > 0.0:
        if x >= 0.5:
            return _gamma_pos(x)
        # Gamma(x) = pi / (sin(pi x) * Gamma(1 - x)); sin > 0 on (0, 0.5)
        return math.pi / (math.sin(math.pi * x) * _gamma_pos(1.0 - x))
    if x == math.floor(x):
        return math.nan
    # reflection for negative non-integers
    return math.pi / (math.sin(math.pi * x) * _gamma_pos(1.0 - x))


def poch(rho: float, n: int) -> float:
    """Rising factorial (rho)_n = rho (rho+1) ... (rho+n-1); (rho)_0 = 1."""
    acc = 1.0
    for i in range(n):
        acc *= rho + i
    return acc


def ml3(
    rho: float,
    beta: float,
    alpha: float,
    x: float,
    tol: float,
    max_terms: int,
) -> tuple[float, int, float]:
    """Three-parameter Mittag-Leffler series sum_n (rho)_n x^n / (n! G(bn+a)).

    Terms are generated by the recurrence
        t_{n+1} = t_n * (rho+n)/(n+1) * x * G(bn+a)/G(bn+b+a)
    with the gamma ratio computed in log space.  Once the ratio bound

        q_n = max(1, (rho+n)/(n+1)) * |x| * exp(lnG(bn+a) - lnG(bn+b+a))

    drops below 1 the tail is geometrically dominated, because both factors
    of q_n are nonincreasing in n (digamma is increasing, and
    (rho+n)/(n+1) is <= 1 for rho <= 1 and decreasing for rho > 1), so

        |sum_{m>n} t_m| <= |t_n| * q_n / (1 - q_n).

    Returns (value, terms_used, tail_bound); terms_used < 0 means the tail
    bound never fell below tol within max_terms.
    """
    lg = lngamma(alpha)
    term = math.exp(-lg)
    total = term
    ln_g_cur = lg
    for n in range(max_terms):
        ln_g_next = lngamma(beta * (n + 1) + alpha)
        g_ratio = math.exp(ln_g_cur - ln_g_next)
        factor = (rho + n) / (n + 1.0)
        q = max(1.0, factor) * abs(x) * g_ratio
        if q < 1.0:
            tail = abs(term) * q / (1.0 - q)
            if tail <= tol:
                return total, n + 1, tail
        term *= factor * x * g_ratio
        total += term
        ln_g_cur = ln_g_next
    return total, -1, math.inf


def series_sum(coeffs: np.ndarray, u: float) -> float:
    """Horner evaluation of sum_n coeffs[n] * u^n."""
    acc = 0.0
    for c in coeffs[::-1]:
        acc = acc * u + c
    return float(acc)


def series_sum_many(coeffs: np.ndarray, u: np.ndarray, out: np.ndarray) -> None:
    """Horner evaluation at many points; writes into ``out``."""
    if len(coeffs) == 0:
        out[:] = 0.0
        return
    out[:] = coeffs[-1]
    for c in coeffs[-2::-1]:
        out *= u
        out += c
