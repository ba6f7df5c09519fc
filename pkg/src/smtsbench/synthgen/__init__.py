"""Synthetic daily-load-profile generation: shape catalogue, the three-stage
generator, scenario builders, and the cluster-pair conflict map."""

from .conflict import CONFLICT_CATEGORIES, ConflictMap, conflict_map
from .generator import (
    BASELINE_PARAMS,
    StarParams,
    downsample_and_normalize,
    draw_outlier_spec,
    gen_dlp,
    gen_outlier,
    simulate_star,
)
from .scenarios import (
    BALANCE_MODES,
    BASELINE_SIGMA_H,
    BASELINE_SIGMA_L,
    KCOUNT_GRID,
    MAGNITUDE_GRID,
    N_CLUSTERS,
    NOISE_GRID,
    OUTLIER_GRID,
    SIZE_GRID,
    TIMING_GRID,
    WIDTH_GRID,
    ScenarioSpec,
    build_scenario,
    separation_dataset,
)
from .shapes import (
    GaussianPeak,
    LogisticStep,
    PVDip,
    ShapeSpec,
    gen_characteristic_curve,
    load_catalogue,
)

__all__ = [
    "CONFLICT_CATEGORIES",
    "ConflictMap",
    "conflict_map",
    "BASELINE_PARAMS",
    "StarParams",
    "downsample_and_normalize",
    "draw_outlier_spec",
    "gen_dlp",
    "gen_outlier",
    "simulate_star",
    "BALANCE_MODES",
    "BASELINE_SIGMA_H",
    "BASELINE_SIGMA_L",
    "KCOUNT_GRID",
    "MAGNITUDE_GRID",
    "N_CLUSTERS",
    "NOISE_GRID",
    "OUTLIER_GRID",
    "SIZE_GRID",
    "TIMING_GRID",
    "WIDTH_GRID",
    "ScenarioSpec",
    "build_scenario",
    "separation_dataset",
    "GaussianPeak",
    "LogisticStep",
    "PVDip",
    "ShapeSpec",
    "gen_characteristic_curve",
    "load_catalogue",
]
