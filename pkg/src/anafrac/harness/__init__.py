from .examples import EXAMPLE_THEOREM, all_examples, worked_example
from .fuzz import ADMISSIBLE_FAMILIES, FAMILIES, random_scenario, scenario_batch
from .report import emit_report, render_csv, render_svg, render_text
from .scenario_io import load_scenario
from .suite import SuiteResult, SuiteRow, run_suite

__all__ = [
    "EXAMPLE_THEOREM",
    "ADMISSIBLE_FAMILIES",
    "FAMILIES",
    "SuiteResult",
    "SuiteRow",
    "all_examples",
    "emit_report",
    "load_scenario",
    "worked_example",
    "random_scenario",
    "render_csv",
    "render_svg",
    "render_text",
    "run_suite",
    "scenario_batch",
]
