"""Checkers for the reverse-Minkowski-type inequality theorems.

Each checker evaluates both sides of one theorem for a Scenario and returns
an InequalityReport with a signed margin (RHS - LHS for one-sided bounds,
the smaller of the two gaps for sandwich bounds), a propagated error
budget, and a verdict:

* holds         margin >= -error_budget
* violated      margin <  -error_budget and the kernel is admissible
* inconclusive  anything else (non-admissible kernel, or an operator value
                too small against its own error estimate to trust the
                power-rule propagation)

Only kernels with all-nonnegative coefficients are admissible: every proof
multiplies per-n inequalities by a_n Gamma(beta n + alpha) and sums, which
needs a_n >= 0.  Mixed or unknown signs run report-only and are never
declared violated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

from .errors import BoxViolation, DomainError, HypothesisViolation, PhiRangeError
from .kernels import AnalyticKernel, FractionalOrder, Interval, validate_kernel
from .operators import (
    OperatorValue,
    QuadratureSpec,
    as_array_function,
    chebyshev_grid,
    frac_integral_direct,
)

HYPOTHESIS_GRID = 1025
ERROR_SAFETY = 10.0
# an operator value u is too small to trust u^(1/p) propagation when
# u < GUARD_FACTOR * (its error estimate)
GUARD_FACTOR = 10.0


class RatioBounds(NamedTuple):
    """Hypothesis bounds 0 < tau1 <= f1/f2 <= tau2."""

    tau1: float
    tau2: float


class BoxBounds(NamedTuple):
    """Pointwise box 0 <= m <= f1 <= M, 0 <= n <= f2 <= N."""

    m: float
    M: float
    n: float
    N: float


class Side(NamedTuple):
    label: str
    value: float
    error: float


@dataclass(frozen=True)
class Scenario:
    """One inequality-checking instance.

    ``bounds`` may be omitted only for box-type scenarios (theorem thm44);
    ``q`` is required by thm41/thm42; ``phi`` by thm43; ``box`` by thm44.
    """

    kernel: AnalyticKernel
    order: FractionalOrder
    iv: Interval
    f1: Callable
    f2: Callable
    p: float = 2.0
    q: float | None = None
    bounds: RatioBounds | None = None
    phi: float | None = None
    box: BoxBounds | None = None
    quad: QuadratureSpec = field(default_factory=QuadratureSpec)
    scenario_id: str = ""
    theorem: str | None = None

    def __post_init__(self) -> None:
        if not self.p >= 1.0:
            raise DomainError(f"p must be >= 1, got {self.p}")
        if self.q is not None and abs(1.0 / self.p + 1.0 / self.q - 1.0) > 1e-12:
            raise DomainError(
                f"q = {self.q} is not the conjugate of p = {self.p} (1/p + 1/q must be 1)"
            )
        if self.bounds is not None:
            t1, t2 = self.bounds
            if not (0.0 < t1 <= t2):
                raise DomainError(f"need 0 < tau1 <= tau2, got {self.bounds}")
        if self.phi is not None:
            if self.bounds is None:
                raise DomainError("phi requires ratio bounds")
            if not (0.0 < self.phi < self.bounds.tau1):
                raise PhiRangeError(
                    f"phi must lie in (0, tau1) = (0, {self.bounds.tau1}), got {self.phi}"
                )
        if self.box is not None:
            m, M, n, N = self.box
            if not (0.0 <= m <= M and 0.0 <= n <= N):
                raise DomainError(f"need 0 <= m <= M and 0 <= n <= N, got {self.box}")


@dataclass(frozen=True)
class HypothesisReport:
    tau1_star: float
    tau2_star: float
    theta_at_tau1: float
    theta_at_tau2: float
    f1_min: float
    f2_min: float
    grid_size: int


@dataclass(frozen=True)
class InequalityReport:
    theorem: str
    sides: tuple[Side, ...]
    margin: float
    relative_margin: float
    error_budget: float
    verdict: str  # "holds" | "violated" | "inconclusive"
    kernel_admissible: bool


def check_hypothesis(s: Scenario, grid_size: int = HYPOTHESIS_GRID) -> HypothesisReport:
    """Verify positivity of f1, f2 and the ratio bounds on a Chebyshev grid.

    Returns the empirically tightest (tau1*, tau2*) with the grid points
    attaining them; raises HypothesisViolation naming the failing theta."""
    if s.bounds is None:
        raise DomainError("scenario has no ratio bounds to check")
    grid = chebyshev_grid(s.iv.a, s.iv.x, grid_size)
    f1v = np.asarray(as_array_function(s.f1, s.iv.a, s.iv.x)(grid), dtype=float)
    f2v = np.asarray(as_array_function(s.f2, s.iv.a, s.iv.x)(grid), dtype=float)
    for name, vals in (("f1", f1v), ("f2", f2v)):
        if not np.all(np.isfinite(vals)):
            raise HypothesisViolation(
                f"{name} is not finite at theta = {grid[~np.isfinite(vals)][0]}"
            )
        if np.any(vals <= 0.0):
            raise HypothesisViolation(
                f"{name} is not positive at theta = {grid[vals <= 0.0][0]}"
            )
    ratio = f1v / f2v
    i_min = int(np.argmin(ratio))
    i_max = int(np.argmax(ratio))
    t1, t2 = s.bounds
    if ratio[i_min] < t1:
        raise HypothesisViolation(
            f"f1/f2 = {ratio[i_min]} < tau1 = {t1} at theta = {grid[i_min]}"
        )
    if ratio[i_max] > t2:
        raise HypothesisViolation(
            f"f1/f2 = {ratio[i_max]} > tau2 = {t2} at theta = {grid[i_max]}"
        )
    return HypothesisReport(
        tau1_star=float(ratio[i_min]),
        tau2_star=float(ratio[i_max]),
        theta_at_tau1=float(grid[i_min]),
        theta_at_tau2=float(grid[i_max]),
        f1_min=float(np.min(f1v)),
        f2_min=float(np.min(f2v)),
        grid_size=grid_size,
    )


def check_box(s: Scenario, grid_size: int = HYPOTHESIS_GRID) -> None:
    """Verify the box bounds pointwise on a Chebyshev grid (theorem thm44)."""
    if s.box is None:
        raise DomainError("scenario has no box bounds to check")
    m, M, n, N = s.box
    grid = chebyshev_grid(s.iv.a, s.iv.x, grid_size)
    f1v = np.asarray(as_array_function(s.f1, s.iv.a, s.iv.x)(grid), dtype=float)
    f2v = np.asarray(as_array_function(s.f2, s.iv.a, s.iv.x)(grid), dtype=float)
    for name, vals, lo, hi in (("f1", f1v, m, M), ("f2", f2v, n, N)):
        if np.any(vals < lo):
            raise BoxViolation(
                f"{name} = {vals[vals < lo][0]} < {lo} at theta = {grid[vals < lo][0]}"
            )
        if np.any(vals > hi):
            raise BoxViolation(
                f"{name} = {vals[vals > hi][0]} > {hi} at theta = {grid[vals > hi][0]}"
            )


def _positivity_guard(fn: Callable, lo: float, hi: float, what: str) -> None:
    """Powers f^p with non-integer p need f > 0; grid-check before integrating."""
    grid = chebyshev_grid(lo, hi, HYPOTHESIS_GRID)
    vals = np.asarray(as_array_function(fn, lo, hi)(grid), dtype=float)
    if np.any(vals < 0.0):
        raise DomainError(
            f"{what} is negative at theta = {grid[vals < 0.0][0]}; "
            "non-integer powers need a nonnegative integrand"
        )


def _integrate(s: Scenario, fn: Callable) -> OperatorValue:
    return frac_integral_direct(s.kernel, s.order, fn, s.iv, s.quad)


def _pow_fn(fn: Callable, p: float) -> Callable:
    if p == 1.0:
        return fn
    if p == 2.0:
        return lambda t: np.asarray(fn(t)) ** 2
    return lambda t: np.asarray(fn(t)) ** p


class _Propagated(NamedTuple):
    value: float
    error: float
    guarded: bool


def _root(u: OperatorValue, p: float) -> _Propagated:
    """u^(1/p) with first-order error |d(u^(1/p))| = (1/p) u^(1/p-1) du.

    Guarded: when u is nonpositive or smaller than GUARD_FACTOR times its
    own error estimate, the propagated value is untrustworthy and the
    report becomes inconclusive."""
    if u.value <= 0.0 or u.value < GUARD_FACTOR * u.error_estimate:
        return _Propagated(math.nan if u.value <= 0.0 else u.value ** (1.0 / p), math.inf, True)
    val = u.value ** (1.0 / p)
    err = (1.0 / p) * u.value ** (1.0 / p - 1.0) * u.error_estimate
    return _Propagated(val, err, False)


def _scale(c: float, x: _Propagated) -> _Propagated:
    return _Propagated(c * x.value, abs(c) * x.error, x.guarded)


def _add(*xs: _Propagated) -> _Propagated:
    return _Propagated(
        sum(x.value for x in xs),
        sum(x.error for x in xs),
        any(x.guarded for x in xs),
    )


def _mul(x: _Propagated, y: _Propagated) -> _Propagated:
    err = abs(y.value) * x.error + abs(x.value) * y.error
    return _Propagated(x.value * y.value, err, x.guarded or y.guarded)


def _of(u: OperatorValue) -> _Propagated:
    return _Propagated(u.value, u.error_estimate, False)


def _finish(
    theorem: str,
    s: Scenario,
    sides: list[Side],
    gaps: list[tuple[float, float]],
    guarded: bool,
) -> InequalityReport:
    """Assemble the report: margin is the smallest gap, the budget is the
    safety-scaled sum of the propagated side errors."""
    admissible = validate_kernel(s.kernel, s.order, s.iv).admissible
    margin = min(g for g, _ in gaps)
    budget = ERROR_SAFETY * sum(e for _, e in gaps)
    scale = max([abs(v) for _, v, _ in sides] + [1e-300])
    if guarded or not math.isfinite(margin):
        verdict = "inconclusive"
    elif margin >= -budget:
        verdict = "holds"
    elif admissible:
        verdict = "violated"
    else:
        verdict = "inconclusive"
    return InequalityReport(
        theorem=theorem,
        sides=tuple(sides),
        margin=margin,
        relative_margin=margin / scale,
        error_budget=budget,
        verdict=verdict,
        kernel_admissible=admissible,
    )


def _require_bounds(s: Scenario) -> RatioBounds:
    if s.bounds is None:
        raise DomainError("this theorem needs ratio bounds (tau1, tau2)")
    return s.bounds


def _maybe_guard_powers(s: Scenario, *powers: float) -> None:
    for fn, name in ((s.f1, "f1"), (s.f2, "f2")):
        if any(p != math.floor(p) for p in powers):
            _positivity_guard(fn, s.iv.a, s.iv.x, name)
            break


def thm31_reverse_minkowski(s: Scenario) -> InequalityReport:
    """(I f1^p)^(1/p) + (I f2^p)^(1/p)
    <= (1 + tau2(tau1+2)) / ((tau1+1)(tau2+1)) * (I (f1+f2)^p)^(1/p)."""
    t1, t2 = _require_bounds(s)
    check_hypothesis(s)
    _maybe_guard_powers(s, s.p)
    c = (1.0 + t2 * (t1 + 2.0)) / ((t1 + 1.0) * (t2 + 1.0))
    u1 = _root(_integrate(s, _pow_fn(s.f1, s.p)), s.p)
    u2 = _root(_integrate(s, _pow_fn(s.f2, s.p)), s.p)
    both = _root(
        _integrate(s, _pow_fn(lambda t: np.asarray(s.f1(t)) + np.asarray(s.f2(t)), s.p)),
        s.p,
    )
    lhs = _add(u1, u2)
    rhs = _scale(c, both)
    sides = [
        Side("lhs", lhs.value, lhs.error),
        Side("rhs", rhs.value, rhs.error),
        Side("rhs_constant", c, 0.0),
    ]
    gaps = [(rhs.value - lhs.value, rhs.error + lhs.error)]
    return _finish("thm31", s, sides, gaps, lhs.guarded or rhs.guarded)


def thm32_product_bound(s: Scenario) -> InequalityReport:
    """(I f1^p)^(2/p) + (I f2^p)^(2/p)
    >= ((1+tau2)(tau1+1)/tau2 - 2) * (I f1^p)^(1/p) (I f2^p)^(1/p)."""
    t1, t2 = _require_bounds(s)
    check_hypothesis(s)
    _maybe_guard_powers(s, s.p)
    c = (1.0 + t2) * (t1 + 1.0) / t2 - 2.0
    r1 = _root(_integrate(s, _pow_fn(s.f1, s.p)), s.p)
    r2 = _root(_integrate(s, _pow_fn(s.f2, s.p)), s.p)
    lhs = _add(_mul(r1, r1), _mul(r2, r2))
    rhs = _scale(c, _mul(r1, r2))
    sides = [
        Side("lhs", lhs.value, lhs.error),
        Side("rhs", rhs.value, rhs.error),
        Side("rhs_constant", c, 0.0),
    ]
    gaps = [(lhs.value - rhs.value, lhs.error + rhs.error)]
    return _finish("thm32", s, sides, gaps, lhs.guarded or rhs.guarded)


def thm41_holder_type(s: Scenario) -> InequalityReport:
    """(I f1)^(1/p) (I f2)^(1/q)
    <= (tau2/tau1)^(1/(pq)) * I(f1^(1/p) f2^(1/q))."""
    t1, t2 = _require_bounds(s)
    if s.q is None:
        raise DomainError("thm41 needs the conjugate exponent q")
    check_hypothesis(s)
    p, qq = s.p, s.q
    c = (t2 / t1) ** (1.0 / (p * qq))
    lhs = _mul(_root(_integrate(s, s.f1), p), _root(_integrate(s, s.f2), qq))
    mixed = _integrate(
        s, lambda t: np.asarray(s.f1(t)) ** (1.0 / p) * np.asarray(s.f2(t)) ** (1.0 / qq)
    )
    rhs = _scale(c, _of(mixed))
    sides = [
        Side("lhs", lhs.value, lhs.error),
        Side("rhs", rhs.value, rhs.error),
        Side("rhs_constant", c, 0.0),
    ]
    gaps = [(rhs.value - lhs.value, rhs.error + lhs.error)]
    return _finish("thm41", s, sides, gaps, lhs.guarded or rhs.guarded)


def thm42_young_type(s: Scenario) -> InequalityReport:
    """I(f1 f2) <= C1 I((f1+f2)^p) + C2 I((f1+f2)^q),
    C1 = 2^(p-1) tau2^p / (p (tau2+1)^p), C2 = 2^(q-1) / (q (tau1+1)^q)."""
    t1, t2 = _require_bounds(s)
    if s.q is None:
        raise DomainError("thm42 needs the conjugate exponent q")
    check_hypothesis(s)
    p, qq = s.p, s.q
    _maybe_guard_powers(s, p, qq)
    c1 = 2.0 ** (p - 1.0) * t2**p / (p * (t2 + 1.0) ** p)
    c2 = 2.0 ** (qq - 1.0) / (qq * (t1 + 1.0) ** qq)
    both = lambda t: np.asarray(s.f1(t)) + np.asarray(s.f2(t))  # noqa: E731
    lhs = _of(_integrate(s, lambda t: np.asarray(s.f1(t)) * np.asarray(s.f2(t))))
    rhs = _add(
        _scale(c1, _of(_integrate(s, _pow_fn(both, p)))),
        _scale(c2, _of(_integrate(s, _pow_fn(both, qq)))),
    )
    sides = [
        Side("lhs", lhs.value, lhs.error),
        Side("rhs", rhs.value, rhs.error),
        Side("c1", c1, 0.0),
        Side("c2", c2, 0.0),
    ]
    gaps = [(rhs.value - lhs.value, rhs.error + lhs.error)]
    return _finish("thm42", s, sides, gaps, lhs.guarded or rhs.guarded)


def thm43_shifted_sandwich(s: Scenario) -> InequalityReport:
    """(tau2+1)/(tau2-phi) (I (f1-phi f2)^p)^(1/p)
    <= (I f1^p)^(1/p) + (I f2^p)^(1/p)
    <= (tau1+1)/(tau1-phi) (I (f1-phi f2)^p)^(1/p)."""
    t1, t2 = _require_bounds(s)
    if s.phi is None:
        raise PhiRangeError("thm43 needs phi in (0, tau1)")
    phi = s.phi
    if not (0.0 < phi < t1):
        raise PhiRangeError(f"phi must lie in (0, tau1) = (0, {t1}), got {phi}")
    check_hypothesis(s)
    _maybe_guard_powers(s, s.p)
    shifted = lambda t: np.asarray(s.f1(t)) - phi * np.asarray(s.f2(t))  # noqa: E731
    core = _root(_integrate(s, _pow_fn(shifted, s.p)), s.p)
    middle = _add(
        _root(_integrate(s, _pow_fn(s.f1, s.p)), s.p),
        _root(_integrate(s, _pow_fn(s.f2, s.p)), s.p),
    )
    lower = _scale((t2 + 1.0) / (t2 - phi), core)
    upper = _scale((t1 + 1.0) / (t1 - phi), core)
    sides = [
        Side("lower", lower.value, lower.error),
        Side("middle", middle.value, middle.error),
        Side("upper", upper.value, upper.error),
    ]
    gaps = [
        (middle.value - lower.value, middle.error + lower.error),
        (upper.value - middle.value, upper.error + middle.error),
    ]
    return _finish("thm43", s, sides, gaps, middle.guarded or core.guarded)


def thm44_boxed_minkowski(s: Scenario) -> InequalityReport:
    """(I f1^p)^(1/p) + (I f2^p)^(1/p) <= C3 (I (f1+f2)^p)^(1/p),
    C3 = (M(m+N) + N(n+M)) / ((m+N)(n+M))."""
    if s.box is None:
        raise DomainError("thm44 needs box bounds (m, M, n, N)")
    check_box(s)
    _maybe_guard_powers(s, s.p)
    m, M, n, N = s.box
    c3 = (M * (m + N) + N * (n + M)) / ((m + N) * (n + M))
    lhs = _add(
        _root(_integrate(s, _pow_fn(s.f1, s.p)), s.p),
        _root(_integrate(s, _pow_fn(s.f2, s.p)), s.p),
    )
    both = lambda t: np.asarray(s.f1(t)) + np.asarray(s.f2(t))  # noqa: E731
    rhs = _scale(c3, _root(_integrate(s, _pow_fn(both, s.p)), s.p))
    sides = [
        Side("lhs", lhs.value, lhs.error),
        Side("rhs", rhs.value, rhs.error),
        Side("rhs_constant", c3, 0.0),
    ]
    gaps = [(rhs.value - lhs.value, rhs.error + lhs.error)]
    return _finish("thm44", s, sides, gaps, lhs.guarded or rhs.guarded)


def thm45_product_sandwich(s: Scenario) -> InequalityReport:
    """(1/tau2) I(f1 f2) <= I((f1+f2)^2) / ((tau1+1)(tau2+1)) <= (1/tau1) I(f1 f2)."""
    t1, t2 = _require_bounds(s)
    check_hypothesis(s)
    prod = _of(_integrate(s, lambda t: np.asarray(s.f1(t)) * np.asarray(s.f2(t))))
    both2 = _of(
        _integrate(s, lambda t: (np.asarray(s.f1(t)) + np.asarray(s.f2(t))) ** 2)
    )
    lower = _scale(1.0 / t2, prod)
    middle = _scale(1.0 / ((t1 + 1.0) * (t2 + 1.0)), both2)
    upper = _scale(1.0 / t1, prod)
    sides = [
        Side("lower", lower.value, lower.error),
        Side("middle", middle.value, middle.error),
        Side("upper", upper.value, upper.error),
    ]
    gaps = [
        (middle.value - lower.value, middle.error + lower.error),
        (upper.value - middle.value, upper.error + middle.error),
    ]
    return _finish("thm45", s, sides, gaps, False)


def upsilon(v1, v2, bounds: RatioBounds):
    """Pointwise dominating functional
    max{ tau2 [((tau2/tau1)+1) v1 - tau2 v2], ((tau2+tau1) v2 - v1) / tau1 }.

    Accepts floats or numpy arrays elementwise."""
    t1, t2 = bounds
    first = t2 * ((t2 / t1 + 1.0) * np.asarray(v1) - t2 * np.asarray(v2))
    second = ((t2 + t1) * np.asarray(v2) - np.asarray(v1)) / t1
    out = np.maximum(first, second)
    return float(out) if out.ndim == 0 else out


def thm46_max_functional(s: Scenario) -> InequalityReport:
    """(I f1^p)^(1/p) + (I f2^p)^(1/p) <= 2 (I Upsilon^p(f1,f2))^(1/p)."""
    bounds = _require_bounds(s)
    check_hypothesis(s)
    _maybe_guard_powers(s, s.p)
    lhs = _add(
        _root(_integrate(s, _pow_fn(s.f1, s.p)), s.p),
        _root(_integrate(s, _pow_fn(s.f2, s.p)), s.p),
    )
    ups = lambda t: upsilon(s.f1(t), s.f2(t), bounds)  # noqa: E731
    rhs = _scale(2.0, _root(_integrate(s, _pow_fn(ups, s.p)), s.p))
    sides = [
        Side("lhs", lhs.value, lhs.error),
        Side("rhs", rhs.value, rhs.error),
    ]
    gaps = [(rhs.value - lhs.value, rhs.error + lhs.error)]
    return _finish("thm46", s, sides, gaps, lhs.guarded or rhs.guarded)


CHECKERS: dict[str, Callable[[Scenario], InequalityReport]] = {
    "thm31": thm31_reverse_minkowski,
    "thm32": thm32_product_bound,
    "thm41": thm41_holder_type,
    "thm42": thm42_young_type,
    "thm43": thm43_shifted_sandwich,
    "thm44": thm44_boxed_minkowski,
    "thm45": thm45_product_sandwich,
    "thm46": thm46_max_functional,
}


def applicable_theorems(s: Scenario) -> list[str]:
    """Theorems whose extra hypotheses the scenario supplies."""
    out = []
    for name in CHECKERS:
        if name == "thm44":
            if s.box is not None:
                out.append(name)
            continue
        if s.bounds is None:
            continue
        if name in ("thm41", "thm42") and s.q is None:
            continue
        if name == "thm43" and s.phi is None:
            continue
        out.append(name)
    return out
