"""Seeded random scenario generation.

Scenarios are built to satisfy the ratio hypothesis by construction:
f2 is a positive quadratic and f1 = r(theta) f2(theta) with

    r(theta) = tau1 + (tau2 - tau1) (1 + sin(w theta + phase)) / 2

so r ranges inside [tau1, tau2].  The declared bounds carry a relative
slack of 1e-9 outward, because the float rounding of r * f2 followed by
the checker's division can nudge the observed ratio past the exact bound
by an ulp.  Both functions are emitted as expression source, so every
generated scenario is reproducible and serializable.
"""

from __future__ import annotations

import math

import numpy as np

from .. import funclang
from ..errors import DomainError
from ..inequalities import BoxBounds, RatioBounds, Scenario
from ..kernels import (
    FractionalOrder,
    make_constant_kernel,
    make_prabhakar_kernel,
    make_proportional_kernel,
    make_rl_kernel,
)
from ..operators import QuadratureSpec, chebyshev_grid

FAMILIES = ("rl", "constant", "prabhakar", "proportional-report-only")
ADMISSIBLE_FAMILIES = ("rl", "constant", "prabhakar")

_TAU_SLACK = 1e-9
_BOX_SLACK = 0.01
_BOX_GRID = 2049


def random_scenario(seed: int, family: str = "rl") -> Scenario:
    """Deterministic-in-seed scenario for the given kernel family."""
    if family not in FAMILIES:
        raise DomainError(f"family must be one of {FAMILIES}, got {family!r}")
    rng = np.random.default_rng(np.random.PCG64(seed))

    alpha = rng.uniform(0.3, 2.5)
    beta = 0.0 if family in ("rl", "constant") else rng.uniform(0.0, 1.5)
    if family == "proportional-report-only":
        beta = 1.0
    order = FractionalOrder(alpha, beta)

    a = rng.uniform(0.2, 2.5)
    x = a + rng.uniform(0.2, 2.0)
    from ..kernels import Interval

    iv = Interval(a, x, x)

    tau1 = rng.uniform(0.2, 2.0)
    tau2 = tau1 + rng.uniform(0.0, 3.0)
    # q-th powers of f1+f2 overflow for p too close to 1; resample within [1, 4]
    p = rng.uniform(1.0, 4.0)
    while p < 1.01:
        p = rng.uniform(1.0, 4.0)
    q = p / (p - 1.0)

    c0 = rng.uniform(0.2, 2.0)
    c1 = rng.uniform(0.0, 1.5)
    c2 = rng.uniform(0.0, 1.5)
    w = rng.uniform(0.5, 3.0)
    phase = rng.uniform(0.0, 2.0 * math.pi)
    f2_src = f"{c0!r} + {c1!r}*theta + {c2!r}*theta^2"
    r_src = f"({tau1!r} + {(tau2 - tau1)!r}*(1 + sin({w!r}*theta + {phase!r}))/2)"
    f1_src = f"{r_src} * ({f2_src})"
    f1 = funclang.parse(f1_src)
    f2 = funclang.parse(f2_src)

    if family == "rl":
        kernel = make_rl_kernel(alpha)
    elif family == "constant":
        kernel = make_constant_kernel(rng.uniform(0.5, 2.0))
    elif family == "prabhakar":
        kernel = make_prabhakar_kernel(rng.uniform(0.3, 2.0), rng.uniform(0.0, 0.9), order)
    else:
        kernel = make_proportional_kernel(rng.uniform(0.3, 0.9), alpha)

    bounds = RatioBounds(tau1 * (1.0 - _TAU_SLACK), tau2 * (1.0 + _TAU_SLACK))
    phi = bounds.tau1 / 2.0

    grid = chebyshev_grid(a, x, _BOX_GRID)
    f1v = f1(grid)
    f2v = f2(grid)
    box = BoxBounds(
        float(np.min(f1v)) * (1.0 - _BOX_SLACK),
        float(np.max(f1v)) * (1.0 + _BOX_SLACK),
        float(np.min(f2v)) * (1.0 - _BOX_SLACK),
        float(np.max(f2v)) * (1.0 + _BOX_SLACK),
    )

    return Scenario(
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
        quad=QuadratureSpec(),
        scenario_id=f"seed{seed}[{family}]",
    )


def scenario_batch(seed0: int, count: int, family: str = "mixed") -> list[Scenario]:
    """Scenarios for seeds seed0 .. seed0+count-1.

    ``family`` may be one of FAMILIES or "mixed", which cycles through the
    admissible families deterministically by seed index."""
    out = []
    for i in range(count):
        fam = ADMISSIBLE_FAMILIES[i % len(ADMISSIBLE_FAMILIES)] if family == "mixed" else family
        out.append(random_scenario(seed0 + i, fam))
    return out
