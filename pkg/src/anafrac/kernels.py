"""Analytic kernels: coefficient sequences A(x) = sum a_n x^n.

A kernel is the weight the generalized operator applies through
A((x - theta)^beta).  Kernels carry a convergence radius and a coefficient
sign status; the inequality checkers only assert theorems for kernels whose
coefficients are all nonnegative, since every proof sums per-n inequalities
with weights a_n.

Coefficients are a total function of n rather than a stored array, so
user-defined kernels need no truncation at construction time.  A probe of
the first ``PROBE_DEPTH`` coefficients backs the sign scan.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

import numpy as np

from . import _backend
from .errors import DivergenceError, DomainError, RadiusError, ToleranceError
from .special import gamma, ln_gamma

PROBE_DEPTH = 512
TERM_CAP = 4096

# consecutive sub-threshold terms required before a series sum is accepted;
# protects against embedded zero coefficients (e.g. even-only series)
_SMALL_RUN = 4


class SignStatus(Enum):
    ALL_NONNEGATIVE = "all-nonnegative"
    MIXED = "mixed"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class FractionalOrder:
    """Order pair (alpha, beta); alpha strictly positive, beta >= 0.

    The inequality theorems state beta > 0, but the Riemann-Liouville and
    classical-integral specializations need beta = 0, so zero is admitted.
    """

    alpha: float
    beta: float = 0.0

    def __post_init__(self) -> None:
        if not self.alpha > 0.0:
            raise DomainError(f"alpha must be > 0, got {self.alpha}")
        if self.beta < 0.0:
            raise DomainError(f"beta must be >= 0, got {self.beta}")


@dataclass(frozen=True)
class Interval:
    """Evaluation interval: a < x <= b.  Left operators integrate [a, x]."""

    a: float
    b: float
    x: float

    def __post_init__(self) -> None:
        if not (self.a < self.x <= self.b):
            raise DomainError(f"need a < x <= b, got a={self.a}, x={self.x}, b={self.b}")


@dataclass(frozen=True)
class AnalyticKernel:
    """Power-series kernel with lazily generated, memoized coefficients.

    ``coeff_ln_fn``, when provided, returns (sign, ln|a_n|) exactly; sums
    that reweight coefficients by Gamma(beta n + alpha) need it to preserve
    the factorial cancellation (a_n alone can underflow to zero while
    a_n * Gamma(beta n + alpha) is still order one).
    """

    name: str
    coeff_fn: Callable[[int], float]
    radius: float = math.inf
    sign_status: SignStatus = SignStatus.UNKNOWN
    coeff_ln_fn: Callable[[int], tuple[float, float]] | None = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def coeff(self, n: int) -> float:
        """a_n; memoized (recomputation under races is idempotent)."""
        v = self._cache.get(n)
        if v is None:
            v = float(self.coeff_fn(n))
            self._cache[n] = v
        return v

    def coeff_ln(self, n: int) -> tuple[float, float]:
        """(sign, ln|a_n|); sign 0 encodes a_n = 0 (ln is -inf then)."""
        if self.coeff_ln_fn is not None:
            return self.coeff_ln_fn(n)
        a = self.coeff(n)
        if a == 0.0:
            return 0.0, -math.inf
        return math.copysign(1.0, a), math.log(abs(a))

    def coefficients_upto(self, u_max: float, tol: float, cap: int = TERM_CAP) -> np.ndarray:
        """Coefficient array long enough that the truncated series is within
        ``tol`` of A(u) for every |u| <= u_max.

        Truncates after ``_SMALL_RUN`` consecutive terms |a_n| u_max^n below
        the per-term threshold; for kernels of finite radius the threshold is
        tightened by the geometric factor (1 - u_max/radius) so that the
        dominated tail stays under ``tol``.
        """
        if u_max >= self.radius:
            raise RadiusError(
                f"kernel {self.name!r} evaluated at |x| = {u_max} >= radius {self.radius}"
            )
        if math.isinf(self.radius):
            threshold = tol / (2.0 * _SMALL_RUN)
        else:
            threshold = tol * (1.0 - u_max / self.radius) / (2.0 * _SMALL_RUN)
        out = []
        run = 0
        pw = 1.0
        for n in range(cap):
            c = self.coeff(n)
            out.append(c)
            if abs(c) * pw <= threshold:
                run += 1
                if run >= _SMALL_RUN:
                    return np.asarray(out, dtype=float)
            else:
                run = 0
            pw *= u_max
        raise ToleranceError(
            f"kernel {self.name!r}: series truncation did not settle within {cap} terms "
            f"at u_max = {u_max}, tol = {tol}"
        )


def make_rl_kernel(alpha: float) -> AnalyticKernel:
    """Constant kernel 1/Gamma(alpha): with beta = 0 the operator reduces to
    the Riemann-Liouville integral of order alpha."""
    if not alpha > 0.0:
        raise DomainError(f"alpha must be > 0, got {alpha}")
    c0 = 1.0 / gamma(alpha)
    ln_c0 = -ln_gamma(alpha)
    return AnalyticKernel(
        name=f"rl(alpha={alpha:g})",
        coeff_fn=lambda n: c0 if n == 0 else 0.0,
        coeff_ln_fn=lambda n: (1.0, ln_c0) if n == 0 else (0.0, -math.inf),
        radius=math.inf,
        sign_status=SignStatus.ALL_NONNEGATIVE,
    )


def make_constant_kernel(c: float) -> AnalyticKernel:
    """Kernel A(x) = c; with alpha = 1, beta = 0 the operator is c times the
    classical integral."""
    if not c > 0.0:
        raise DomainError(f"constant kernel requires c > 0, got {c}")
    ln_c = math.log(c)
    return AnalyticKernel(
        name=f"constant(c={c:g})",
        coeff_fn=lambda n: c if n == 0 else 0.0,
        coeff_ln_fn=lambda n: (1.0, ln_c) if n == 0 else (0.0, -math.inf),
        radius=math.inf,
        sign_status=SignStatus.ALL_NONNEGATIVE,
    )


def make_proportional_kernel(rho: float, alpha: float) -> AnalyticKernel:
    """Kernel A(x) = exp(((rho-1)/rho) x) / (rho^alpha Gamma(alpha)).

    For rho < 1 the coefficients alternate in sign, so the kernel is not
    admissible for inequality assertions (the harness runs it report-only).
    rho = 1 reduces to the Riemann-Liouville kernel.
    """
    if not (0.0 < rho <= 1.0):
        raise DomainError(f"proportional kernel requires rho in (0, 1], got {rho}")
    if not alpha > 0.0:
        raise DomainError(f"alpha must be > 0, got {alpha}")
    lam = (rho - 1.0) / rho
    ln_scale = -alpha * math.log(rho) - ln_gamma(alpha)

    def coeff_ln(n: int) -> tuple[float, float]:
        if n == 0:
            return 1.0, ln_scale
        if lam == 0.0:
            return 0.0, -math.inf
        sign = -1.0 if (lam < 0.0 and n % 2 == 1) else 1.0
        return sign, ln_scale + n * math.log(abs(lam)) - ln_gamma(n + 1.0)

    def coeff(n: int) -> float:
        sign, ln_mag = coeff_ln(n)
        return sign * math.exp(ln_mag) if ln_mag > -745.0 else 0.0

    return AnalyticKernel(
        name=f"proportional(rho={rho:g},alpha={alpha:g})",
        coeff_fn=coeff,
        coeff_ln_fn=coeff_ln,
        radius=math.inf,
        sign_status=SignStatus.ALL_NONNEGATIVE if rho == 1.0 else SignStatus.MIXED,
    )


def make_prabhakar_kernel(rho: float, omega: float, order: FractionalOrder) -> AnalyticKernel:
    """Kernel A(x) = E^rho_{beta,alpha}(omega x), coefficients
    (rho)_n omega^n / (n! Gamma(beta n + alpha)).

    Negative rho or omega would break the nonnegativity every inequality
    proof relies on, so both are rejected.  omega = 0 reduces to the
    Riemann-Liouville kernel.
    """
    if rho < 0.0:
        raise DomainError(f"prabhakar kernel requires rho >= 0, got {rho}")
    if omega < 0.0:
        raise DomainError(f"prabhakar kernel requires omega >= 0, got {omega}")
    beta, alpha = order.beta, order.alpha

    def coeff_ln(n: int) -> tuple[float, float]:
        if n == 0:
            return 1.0, -ln_gamma(alpha)
        if omega == 0.0 or rho == 0.0:
            return 0.0, -math.inf
        # (rho)_n omega^n / (n! Gamma(beta n + alpha)); all factors > 0
        return 1.0, (
            ln_gamma(rho + n)
            - ln_gamma(rho)
            + n * math.log(omega)
            - ln_gamma(n + 1.0)
            - ln_gamma(beta * n + alpha)
        )

    def coeff(n: int) -> float:
        sign, ln_mag = coeff_ln(n)
        return sign * math.exp(ln_mag) if ln_mag > -745.0 else 0.0

    return AnalyticKernel(
        name=f"prabhakar(rho={rho:g},omega={omega:g},beta={beta:g},alpha={alpha:g})",
        coeff_fn=coeff,
        coeff_ln_fn=coeff_ln,
        radius=math.inf,
        sign_status=SignStatus.ALL_NONNEGATIVE,
    )


def make_series_kernel(
    coeff_fn: Callable[[int], float],
    radius: float,
    name: str = "series",
    probe_depth: int = PROBE_DEPTH,
) -> AnalyticKernel:
    """User-defined kernel from an arbitrary coefficient function.

    The sign status is probed over the first ``probe_depth`` coefficients:
    a negative coefficient makes it MIXED, otherwise it stays UNKNOWN (a
    finite probe cannot certify the tail), which the harness treats as
    report-only.
    """
    if not radius > 0.0:
        raise DomainError(f"radius must be > 0, got {radius}")
    status = SignStatus.UNKNOWN
    for n in range(probe_depth):
        if coeff_fn(n) < 0.0:
            status = SignStatus.MIXED
            break
    return AnalyticKernel(name=name, coeff_fn=coeff_fn, radius=radius, sign_status=status)


def kernel_eval(
    k: AnalyticKernel, order: FractionalOrder, x: float, tol: float = 1e-12
) -> float:
    """A(x) = sum a_n x^n within ``tol`` by tail-bound truncation.

    ``order`` is accepted for interface symmetry with kernel_transform_eval;
    the coefficients already close over any (alpha, beta) dependence.
    """
    del order
    coeffs = k.coefficients_upto(abs(x), tol)
    return float(_backend.series_sum(coeffs, x))


def kernel_transform_eval(
    k: AnalyticKernel,
    order: FractionalOrder,
    x: float,
    tol: float = 1e-12,
    cap: int = TERM_CAP,
) -> float:
    """The gamma-weighted transform sum a_n Gamma(beta n + alpha) x^n.

    This is the series that links the kernel to its series-of-RL operator
    representation.  Terms are formed in log space.  The sum stops once a
    run of ``_SMALL_RUN`` identically-zero coefficients appears (polynomial
    kernels) or the geometric tail estimate mag * q / (1 - q), with q the
    largest of the last three term ratios, drops below ``tol``.  Terms that
    grow for 64 consecutive steps, overflow, or fail to settle within
    ``cap`` terms raise DivergenceError.
    """
    beta, alpha = order.beta, order.alpha
    if x == 0.0:
        return k.coeff(0) * gamma(alpha)
    total = 0.0
    zero_run = 0
    prev_mag = 0.0
    ratios: list[float] = []
    grow = 0
    for n in range(cap):
        a_sign, ln_a = k.coeff_ln(n)
        if a_sign == 0.0:
            zero_run += 1
            if zero_run >= _SMALL_RUN:
                return total
            continue
        zero_run = 0
        ln_mag = ln_a + ln_gamma(beta * n + alpha) + n * math.log(abs(x))
        if ln_mag > 700.0:
            raise DivergenceError(
                f"transform series for {k.name!r} overflows at term {n} (x = {x})"
            )
        mag = math.exp(ln_mag)
        sign = a_sign * (-1.0 if (x < 0.0 and n % 2 == 1) else 1.0)
        total += sign * mag
        if prev_mag > 0.0:
            r = mag / prev_mag
            ratios.append(r)
            if len(ratios) > 3:
                ratios.pop(0)
            if r >= 1.0:
                grow += 1
                if grow >= 64:
                    raise DivergenceError(
                        f"transform series terms for {k.name!r} grew for 64 "
                        f"consecutive steps at x = {x}; treating as divergent"
                    )
            else:
                grow = 0
            q = max(ratios)
            if len(ratios) == 3 and q < 1.0 and mag * q / (1.0 - q) <= tol:
                return total
        prev_mag = mag
    raise DivergenceError(
        f"transform series for {k.name!r} did not settle within {cap} terms at x = {x}"
    )


@dataclass(frozen=True)
class KernelValidation:
    """Outcome of validate_kernel; report-returning, never raises."""

    radius_ok: bool
    length_pow_beta: float
    sign_scan_ok: bool
    first_negative_n: int | None
    probed: int
    admissible: bool
    notes: str


def validate_kernel(
    k: AnalyticKernel,
    order: FractionalOrder,
    iv: Interval,
    probe_depth: int = PROBE_DEPTH,
) -> KernelValidation:
    """Check the radius condition radius > (b - a)^beta and scan coefficient
    signs; a kernel is admissible for inequality assertions only when both
    pass and its declared sign status is ALL_NONNEGATIVE."""
    length_pow = (iv.b - iv.a) ** order.beta
    radius_ok = k.radius > length_pow
    first_neg: int | None = None
    for n in range(probe_depth):
        if k.coeff(n) < 0.0:
            first_neg = n
            break
    sign_scan_ok = first_neg is None
    declared_nonneg = k.sign_status is SignStatus.ALL_NONNEGATIVE
    admissible = radius_ok and sign_scan_ok and declared_nonneg
    if not radius_ok:
        notes = f"radius {k.radius} <= (b-a)^beta = {length_pow}"
    elif first_neg is not None:
        notes = f"coefficient a_{first_neg} < 0"
    elif not declared_nonneg:
        notes = f"sign status {k.sign_status.value}: report-only"
    else:
        notes = "admissible"
    return KernelValidation(
        radius_ok=radius_ok,
        length_pow_beta=length_pow,
        sign_scan_ok=sign_scan_ok,
        first_negative_n=first_neg,
        probed=probe_depth,
        admissible=admissible,
        notes=notes,
    )
