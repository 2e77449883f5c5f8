"""Backend selection: compiled extension when available, pure Python otherwise.

The active backend's functions are re-exported as module attributes here.
Hot code paths grab a local reference at call time (``_backend.series_sum_many``)
so that ``use_backend`` can swap implementations for benchmarks and tests.

Set ``ANAFRAC_BACKEND=pure`` or ``ANAFRAC_BACKEND=compiled`` to force a choice;
forcing ``compiled`` raises if the extension was not built.
"""

from __future__ import annotations

import os

from . import pure as _pure

try:
    from . import _fast as _compiled
except ImportError:
    _compiled = None

_EXPORTED = ("lngamma", "gammafn", "poch", "ml3", "series_sum", "series_sum_many")

BACKEND = "pure"


def available_backends() -> tuple[str, ...]:
    return ("pure", "compiled") if _compiled is not None else ("pure",)


def use_backend(name: str) -> str:
    """Bind the named backend's functions onto this module. Returns the name."""
    global BACKEND
    if name == "pure":
        impl = _pure
    elif name == "compiled":
        if _compiled is None:
            raise ImportError("compiled backend requested but the extension is not built")
        impl = _compiled
    else:
        raise ValueError(f"unknown backend {name!r}; expected 'pure' or 'compiled'")
    for fn in _EXPORTED:
        globals()[fn] = getattr(impl, fn)
    BACKEND = name
    return name


_forced = os.environ.get("ANAFRAC_BACKEND", "").strip().lower()
if _forced and _forced not in ("pure", "compiled"):
    raise ImportError(f"ANAFRAC_BACKEND={_forced!r} is not 'pure' or 'compiled'")
use_backend(_forced or ("compiled" if _compiled is not None else "pure"))
