"""Batch experiments, rank-sum statistics and report/plot-data emission."""

from .experiment import (
    DEFAULT_SEEDS,
    BatchResult,
    ExperimentPlan,
    RunFailure,
    SummaryRow,
    execute_plan,
    parse_seeds,
    run_experiment,
)
from .plotdata import emit_plot_data
from .report import render_report, report_directory
from .stats import WTL, rank_sum_test, wilcoxon_rank_sum, wtl_table

__all__ = [
    "BatchResult",
    "DEFAULT_SEEDS",
    "ExperimentPlan",
    "RunFailure",
    "SummaryRow",
    "WTL",
    "emit_plot_data",
    "execute_plan",
    "parse_seeds",
    "rank_sum_test",
    "render_report",
    "report_directory",
    "run_experiment",
    "wilcoxon_rank_sum",
    "wtl_table",
]
