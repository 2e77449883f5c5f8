"""Suite execution: run checkers over scenarios, canonicalize, count."""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from ..inequalities import CHECKERS, InequalityReport, Scenario, applicable_theorems

VERDICTS = ("holds", "violated", "inconclusive")


@dataclass(frozen=True)
class SuiteRow:
    scenario_id: str
    theorem: str
    report: InequalityReport | None
    error: str | None = None

    @property
    def verdict(self) -> str:
        # captured failures cannot decide the inequality either way
        return self.report.verdict if self.report is not None else "inconclusive"


@dataclass
class SuiteResult:
    rows: list[SuiteRow] = field(default_factory=list)
    counts: dict = field(default_factory=lambda: {v: 0 for v in VERDICTS})
    seed: int | None = None
    wall_time: float = 0.0

    @property
    def any_violation(self) -> bool:
        return self.counts["violated"] > 0

    @property
    def any_error(self) -> bool:
        return any(r.error is not None for r in self.rows)

    def summary_line(self) -> str:
        c = self.counts
        return f"holds={c['holds']} violated={c['violated']} inconclusive={c['inconclusive']}"


def _select_theorems(s: Scenario, theorems) -> list[str]:
    applicable = applicable_theorems(s)
    if theorems == "auto":
        if s.theorem is not None:
            return [s.theorem]
        return applicable
    if theorems == "all":
        return applicable
    return [t for t in theorems if t in applicable]


def _run_pair(s: Scenario, theorem: str) -> SuiteRow:
    try:
        report = CHECKERS[theorem](s)
        return SuiteRow(s.scenario_id, theorem, report)
    except Exception as exc:  # captured per-pair, the suite never aborts
        return SuiteRow(s.scenario_id, theorem, None, f"{type(exc).__name__}: {exc}")


def run_suite(
    scenarios: list[Scenario],
    theorems="auto",
    parallelism: int = 1,
    seed: int | None = None,
    fail_fast: bool = False,
) -> SuiteResult:
    """Run every applicable (scenario, theorem) pair.

    ``theorems`` is "auto" (the scenario's bound theorem if any, otherwise
    all applicable), "all", or an explicit list.  Rows are canonicalized by
    (scenario_id, theorem) so the output is deterministic for any
    parallelism.  With ``fail_fast`` the suite stops submitting work after
    the first admissible violation (rows collected so far are returned).
    """
    t0 = time.perf_counter()
    tasks = [(s, t) for s in scenarios for t in _select_theorems(s, theorems)]
    rows: list[SuiteRow] = []
    if parallelism <= 1:
        for s, t in tasks:
            row = _run_pair(s, t)
            rows.append(row)
            if fail_fast and row.verdict == "violated":
                break
    else:
        with ThreadPoolExecutor(max_workers=parallelism) as ex:
            futures = [ex.submit(_run_pair, s, t) for s, t in tasks]
            for fut in futures:
                row = fut.result()
                rows.append(row)
                if fail_fast and row.verdict == "violated":
                    ex.shutdown(cancel_futures=True)
                    break
    rows.sort(key=lambda r: (r.scenario_id, r.theorem))
    result = SuiteResult(rows=rows, seed=seed, wall_time=time.perf_counter() - t0)
    for row in rows:
        result.counts[row.verdict] += 1
    return result
