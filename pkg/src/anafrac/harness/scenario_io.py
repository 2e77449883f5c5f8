"""Scenario file loading.

Files are INI-style key = value blocks:

    [kernel]
    type = prabhakar        # rl | constant | proportional | prabhakar | series
    rho = 1.2
    omega = 0.3

    [order]
    alpha = 1.0
    beta = 0.8

    [interval]
    a = 1.0
    x = 2.0
    # b defaults to x

    [functions]
    f1 = theta + 1
    f2 = theta

    [hypothesis]
    p = 2.0
    # q derived from p when absent
    tau1 = 1.0              # both optional: auto-tightened from the grid
    tau2 = 2.0
    # phi = 0.5
    # box = 0, 1, 0, 1      # m, M, n, N

    [tolerances]
    abs_tol = 1e-9
    rel_tol = 1e-9
    max_subdivisions = 4096

A ``series`` kernel takes ``coeff`` (an expression in the free variable n)
and ``radius`` (a float or ``inf``).
"""

from __future__ import annotations

import configparser
import math
import os

import numpy as np

from .. import funclang
from ..errors import AnafracError, ConstraintError, ParseError
from ..inequalities import BoxBounds, RatioBounds, Scenario
from ..kernels import (
    AnalyticKernel,
    FractionalOrder,
    Interval,
    make_constant_kernel,
    make_prabhakar_kernel,
    make_proportional_kernel,
    make_rl_kernel,
    make_series_kernel,
)
from ..operators import QuadratureSpec, as_array_function, chebyshev_grid

_AUTO_TAU_SLACK = 1e-9
_AUTO_TAU_GRID = 1025


def _get(cp: configparser.ConfigParser, section: str, key: str, default=None):
    if not cp.has_section(section):
        return default
    return cp.get(section, key, fallback=default)


def _float(cp, section, key, default=None, required=False) -> float | None:
    raw = _get(cp, section, key, None)
    if raw is None:
        if required:
            raise ConstraintError(f"missing required field [{section}] {key}")
        return default
    try:
        return float(raw)
    except ValueError:
        raise ConstraintError(f"field [{section}] {key} = {raw!r} is not a number") from None


def build_kernel(cp: configparser.ConfigParser, order: FractionalOrder) -> AnalyticKernel:
    ktype = _get(cp, "kernel", "type", None)
    if ktype is None:
        raise ConstraintError("missing required field [kernel] type")
    ktype = ktype.strip().lower()
    if ktype == "rl":
        return make_rl_kernel(order.alpha)
    if ktype == "constant":
        return make_constant_kernel(_float(cp, "kernel", "c", required=True))
    if ktype == "proportional":
        return make_proportional_kernel(
            _float(cp, "kernel", "rho", required=True), order.alpha
        )
    if ktype == "prabhakar":
        return make_prabhakar_kernel(
            _float(cp, "kernel", "rho", required=True),
            _float(cp, "kernel", "omega", required=True),
            order,
        )
    if ktype == "series":
        src = _get(cp, "kernel", "coeff", None)
        if src is None:
            raise ConstraintError("missing required field [kernel] coeff for series kernel")
        raw_radius = _get(cp, "kernel", "radius", None)
        if raw_radius is None:
            raise ConstraintError("missing required field [kernel] radius for series kernel")
        radius = math.inf if raw_radius.strip().lower() in ("inf", "infinity") else float(raw_radius)
        expr = funclang.parse(src, free_var="n")
        return make_series_kernel(lambda n: expr(float(n)), radius, name=f"series({src})")
    raise ConstraintError(
        f"field [kernel] type = {ktype!r}; expected rl, constant, proportional, "
        "prabhakar, or series"
    )


def _auto_bounds(f1, f2, iv: Interval) -> RatioBounds:
    """Tightest grid ratio bounds, widened by a relative slack so the later
    hypothesis check (possibly on a different grid) cannot fail by rounding."""
    grid = chebyshev_grid(iv.a, iv.x, _AUTO_TAU_GRID)
    f1v = np.asarray(as_array_function(f1, iv.a, iv.x)(grid), dtype=float)
    f2v = np.asarray(as_array_function(f2, iv.a, iv.x)(grid), dtype=float)
    if np.any(f2v <= 0.0) or np.any(f1v <= 0.0):
        raise ConstraintError(
            "[hypothesis] tau bounds cannot be derived: f1 or f2 is not positive "
            "on the grid"
        )
    ratio = f1v / f2v
    return RatioBounds(
        float(np.min(ratio)) * (1.0 - _AUTO_TAU_SLACK),
        float(np.max(ratio)) * (1.0 + _AUTO_TAU_SLACK),
    )


def load_scenario(source: str, scenario_id: str | None = None) -> Scenario:
    """Load a scenario from a file path or from raw config text."""
    if "\n" not in source:
        if not os.path.exists(source):
            raise ParseError(f"scenario file not found: {source}")
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
        if scenario_id is None:
            scenario_id = os.path.splitext(os.path.basename(source))[0]
    else:
        text = source
        if scenario_id is None:
            scenario_id = "scenario"

    cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ParseError(f"scenario text is not valid key = value blocks: {exc}") from exc

    # collect every violated constraint, then report them all at once
    problems: list[str] = []

    def attempt(fn, where: str):
        try:
            return fn()
        except AnafracError as exc:
            problems.append(f"{where}: {exc}" if where else str(exc))
            return None

    order = attempt(
        lambda: FractionalOrder(
            _float(cp, "order", "alpha", required=True),
            _float(cp, "order", "beta", default=0.0),
        ),
        "[order]",
    )

    def build_interval():
        a = _float(cp, "interval", "a", required=True)
        x = _float(cp, "interval", "x", required=True)
        return Interval(a, _float(cp, "interval", "b", default=x), x)

    iv = attempt(build_interval, "[interval]")

    def parse_fn(key: str):
        src = _get(cp, "functions", key, None)
        if src is None:
            raise ConstraintError(f"missing required field [functions] {key}")
        return funclang.parse(src)

    f1 = attempt(lambda: parse_fn("f1"), "")
    f2 = attempt(lambda: parse_fn("f2"), "")
    kernel = attempt(lambda: build_kernel(cp, order), "") if order is not None else None

    p = attempt(lambda: _float(cp, "hypothesis", "p", default=2.0), "[hypothesis]")
    q = attempt(lambda: _float(cp, "hypothesis", "q", default=None), "[hypothesis]")
    if q is None and p is not None and p > 1.0:
        q = p / (p - 1.0)

    def build_bounds():
        tau1 = _float(cp, "hypothesis", "tau1", default=None)
        tau2 = _float(cp, "hypothesis", "tau2", default=None)
        if (tau1 is None) != (tau2 is None):
            raise ConstraintError("[hypothesis] tau1 and tau2 must be given together")
        if tau1 is not None:
            return RatioBounds(tau1, tau2)
        if f1 is None or f2 is None or iv is None:
            return None
        return _auto_bounds(f1, f2, iv)

    bounds = attempt(build_bounds, "")
    phi = attempt(lambda: _float(cp, "hypothesis", "phi", default=None), "[hypothesis]")

    def build_box():
        raw_box = _get(cp, "hypothesis", "box", None)
        if raw_box is None:
            return None
        parts = [s.strip() for s in raw_box.split(",")]
        if len(parts) != 4:
            raise ConstraintError("[hypothesis] box must be four numbers: m, M, n, N")
        try:
            return BoxBounds(*(float(s) for s in parts))
        except ValueError:
            raise ConstraintError(f"[hypothesis] box = {raw_box!r} is not numeric") from None

    box = attempt(build_box, "")

    quad = attempt(
        lambda: QuadratureSpec(
            abs_tol=_float(cp, "tolerances", "abs_tol", default=1e-9),
            rel_tol=_float(cp, "tolerances", "rel_tol", default=1e-9),
            max_subdivisions=int(
                _float(cp, "tolerances", "max_subdivisions", default=4096)
            ),
        ),
        "[tolerances]",
    )

    scenario = None
    if not problems:
        scenario = attempt(
            lambda: Scenario(
                kernel=kernel,
                order=order,
                iv=iv,
                f1=f1,
                f2=f2,
                p=p,
                q=q,
                bounds=bounds,
                phi=phi,
                box=box,
                quad=quad,
                scenario_id=scenario_id,
            ),
            "[hypothesis]",
        )
    if problems:
        raise ConstraintError("; ".join(problems))
    return scenario
