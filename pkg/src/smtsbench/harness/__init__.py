"""Experiment harness: configuration, method resolution, runners, file
formats, and reporting."""

from .config import METRICS, PARAM_MODES, ExperimentConfig, load_config
from .io import (
    MATRIX_MAGIC,
    RESULT_HEADER,
    ResultRecord,
    load_labeled_csv,
    read_matrix,
    read_results_csv,
    write_dataset_csv,
    write_manifest,
    write_matrix,
    write_partition_csv,
    write_results_csv,
)
from .methods import (
    FULL_GRIDS,
    RETAINED_GRIDS,
    expand_paradigms,
    paradigm_matrix,
    resolve_method,
)
from .report import (
    convergence_table,
    rank_table,
    report,
    scatter_table,
    score_matrix,
    summary_table,
    sweep_table,
    write_figures_data,
)
from .runner import build_datasets, execute, run_stage1, run_stage2, run_sweep, scenario_label

__all__ = [
    "METRICS",
    "PARAM_MODES",
    "ExperimentConfig",
    "load_config",
    "MATRIX_MAGIC",
    "RESULT_HEADER",
    "ResultRecord",
    "load_labeled_csv",
    "read_matrix",
    "read_results_csv",
    "write_dataset_csv",
    "write_manifest",
    "write_matrix",
    "write_partition_csv",
    "write_results_csv",
    "FULL_GRIDS",
    "RETAINED_GRIDS",
    "expand_paradigms",
    "paradigm_matrix",
    "resolve_method",
    "convergence_table",
    "rank_table",
    "report",
    "scatter_table",
    "score_matrix",
    "summary_table",
    "sweep_table",
    "write_figures_data",
    "build_datasets",
    "execute",
    "run_stage1",
    "run_stage2",
    "run_sweep",
    "scenario_label",
]
