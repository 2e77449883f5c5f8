"""The eight worked examples as canned scenarios.

Examples 1-5, 7, 8 use f1 = theta + ell and f2 = theta on x > a >= 1, which
gives ratio bounds tau1 = 1, tau2 = ell + 1 (the displayed inequalities fix
f2 = theta; ell only shifts f1).  Example 6 uses f1 = sin^2, f2 = cos^2 with
the box (0, 1, 0, 1).  Defaults: a = 1, x = 2, ell = 1, phi = 0.5, p = 2.
"""

from __future__ import annotations

from .. import funclang
from ..errors import ConstraintError, RangeError
from ..inequalities import BoxBounds, RatioBounds, Scenario
from ..kernels import AnalyticKernel, FractionalOrder, Interval, make_rl_kernel
from ..operators import QuadratureSpec

EXAMPLE_THEOREM = {
    1: "thm31",
    2: "thm32",
    3: "thm41",
    4: "thm42",
    5: "thm43",
    6: "thm44",
    7: "thm45",
    8: "thm46",
}


def worked_example(
    example_id: int,
    ell: float = 1.0,
    order: FractionalOrder | None = None,
    kernel: AnalyticKernel | None = None,
    iv: Interval | None = None,
    p: float = 2.0,
    phi: float = 0.5,
    quad: QuadratureSpec | None = None,
) -> Scenario:
    """Build the scenario for one worked example, bound to its theorem."""
    if example_id not in EXAMPLE_THEOREM:
        raise RangeError(f"example id must be 1..8, got {example_id}")
    if order is None:
        order = FractionalOrder(1.0, 0.0)
    if kernel is None:
        kernel = make_rl_kernel(order.alpha)
    if iv is None:
        iv = Interval(1.0, 2.0, 2.0)
    if quad is None:
        quad = QuadratureSpec()
    theorem = EXAMPLE_THEOREM[example_id]
    sid = f"example-{example_id}(ell={ell:g},p={p:g})[{kernel.name}]"

    if example_id == 6:
        return Scenario(
            kernel=kernel,
            order=order,
            iv=iv,
            f1=funclang.parse("sin(theta)^2"),
            f2=funclang.parse("cos(theta)^2"),
            p=p,
            box=BoxBounds(0.0, 1.0, 0.0, 1.0),
            quad=quad,
            scenario_id=sid,
            theorem=theorem,
        )

    if not iv.a >= 1.0:
        raise ConstraintError(
            f"examples 1-5, 7, 8 need a >= 1 (tau2 = ell + 1 relies on it), got a = {iv.a}"
        )
    if not ell > 0.0:
        raise ConstraintError(f"ell must be > 0, got {ell}")
    q = None
    if example_id in (3, 4):
        if p <= 1.0:
            raise ConstraintError(
                f"example {example_id} needs the conjugate exponent; p must be > 1, got {p}"
            )
        q = p / (p - 1.0)
    return Scenario(
        kernel=kernel,
        order=order,
        iv=iv,
        f1=funclang.parse(f"theta + {ell!r}"),
        f2=funclang.parse("theta"),
        p=p,
        q=q,
        bounds=RatioBounds(1.0, ell + 1.0),
        phi=phi if example_id == 5 else None,
        quad=quad,
        scenario_id=sid,
        theorem=theorem,
    )


def all_examples(**kwargs) -> list[Scenario]:
    return [worked_example(i, **kwargs) for i in EXAMPLE_THEOREM]
