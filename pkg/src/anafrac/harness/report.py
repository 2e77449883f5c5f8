"""Report emission: CSV, margin-scatter SVG, and plain text."""

from __future__ import annotations

import csv
import io
import math

from .suite import SuiteResult, SuiteRow

CSV_COLUMNS = [
    "scenario_id",
    "theorem",
    "side_labels",
    "side_values",
    "margin",
    "relative_margin",
    "error_budget",
    "verdict",
    "kernel_admissible",
]


def _row_record(row: SuiteRow) -> dict:
    if row.report is None:
        return {
            "scenario_id": row.scenario_id,
            "theorem": row.theorem,
            "side_labels": "error",
            "side_values": row.error or "",
            "margin": "nan",
            "relative_margin": "nan",
            "error_budget": "nan",
            "verdict": row.verdict,
            "kernel_admissible": "",
        }
    r = row.report
    return {
        "scenario_id": row.scenario_id,
        "theorem": r.theorem,
        "side_labels": ";".join(s.label for s in r.sides),
        "side_values": ";".join(repr(s.value) for s in r.sides),
        "margin": repr(r.margin),
        "relative_margin": repr(r.relative_margin),
        "error_budget": repr(r.error_budget),
        "verdict": r.verdict,
        "kernel_admissible": str(r.kernel_admissible).lower(),
    }


def render_csv(result: SuiteResult) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in result.rows:
        writer.writerow(_row_record(row))
    return buf.getvalue()


def render_text(result: SuiteResult) -> str:
    lines = []
    for row in result.rows:
        if row.report is None:
            lines.append(f"{row.scenario_id} {row.theorem}: ERROR {row.error}")
            continue
        r = row.report
        lines.append(
            f"{row.scenario_id} {r.theorem}: {r.verdict}  "
            f"margin={r.margin:.6e} (rel {r.relative_margin:.2e}, "
            f"budget {r.error_budget:.2e})"
            + ("" if r.kernel_admissible else "  [report-only kernel]")
        )
    lines.append(result.summary_line())
    return "\n".join(lines) + "\n"


def _margins(result: SuiteResult) -> list[float]:
    out = []
    for row in result.rows:
        m = row.report.margin if row.report is not None else math.nan
        out.append(m)
    return out


def render_svg(result: SuiteResult, width: int = 720, height: int = 360) -> str:
    """Margin-vs-scenario scatter with a zero line.

    Points at or above zero are drawn dark, below-zero points red; rows whose
    checker failed are skipped."""
    pad = 40
    margins = [m for m in _margins(result) if not math.isnan(m)]
    lo = min(margins + [0.0]) if margins else -1.0
    hi = max(margins + [0.0]) if margins else 1.0
    if hi == lo:
        hi = lo + 1.0
    span = hi - lo
    lo -= 0.05 * span
    hi += 0.05 * span

    def ypix(v: float) -> float:
        return pad + (hi - v) / (hi - lo) * (height - 2 * pad)

    def xpix(i: int, n: int) -> float:
        if n <= 1:
            return width / 2.0
        return pad + i * (width - 2 * pad) / (n - 1)

    n = len(result.rows)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{pad}" y1="{ypix(0.0):.2f}" x2="{width - pad}" y2="{ypix(0.0):.2f}" '
        'stroke="black" stroke-dasharray="4 3" stroke-width="1"/>',
        f'<text x="{pad}" y="{ypix(0.0) - 5:.2f}" font-size="11" fill="black">margin = 0</text>',
        f'<text x="{pad}" y="18" font-size="12" fill="black">'
        f"margin by (scenario, theorem), {result.summary_line()}</text>",
    ]
    for i, row in enumerate(result.rows):
        if row.report is None:
            continue
        m = row.report.margin
        if math.isnan(m):
            continue
        color = "#c22" if m < 0.0 else "#226"
        parts.append(
            f'<circle cx="{xpix(i, n):.2f}" cy="{ypix(m):.2f}" r="3" fill="{color}">'
            f"<title>{row.scenario_id} {row.theorem}: {m!r}</title></circle>"
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def emit_report(result: SuiteResult, fmt: str, path: str) -> str:
    """Write the suite result to ``path`` in the given format
    (csv | svg-margins | text); returns the path."""
    if fmt == "csv":
        payload = render_csv(result)
    elif fmt == "svg-margins":
        payload = render_svg(result)
    elif fmt == "text":
        payload = render_text(result)
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(payload)
    return path
