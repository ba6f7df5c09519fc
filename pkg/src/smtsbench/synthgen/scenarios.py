"""Scenario dataset builders: baseline datasets and every property sweep.

Labels are always sampled first, then series are generated per label in index
order, so a dataset is a pure function of its ScenarioSpec and rng stream.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..core import OUTLIER_LABEL, LabeledDataset
from ..errors import InvalidScenarioParams
from .generator import gen_dlp, gen_outlier
from .shapes import GaussianPeak, ShapeSpec, load_catalogue

BASELINE_SIGMA_L = 0.12
BASELINE_SIGMA_H = 0.1
N_CLUSTERS = 20

NOISE_GRID = (0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35)
SIZE_GRID = (500, 1000, 2000, 4000)
KCOUNT_GRID = (8, 12, 16, 20)
BALANCE_MODES = ("rare", "dominant", "balanced")
OUTLIER_GRID = (0, 25, 50, 100, 250, 500, 1000)

TIMING_GRID = tuple(
    [round(0.05 * i, 2) for i in range(40)] + [round(2.0 + 0.1 * i, 1) for i in range(20)] + [4.0, 4.5, 5.0]
)
MAGNITUDE_GRID = tuple(range(100, -1, -1))
WIDTH_GRID = tuple(range(0, 81))

# Cluster-size histogram for the real-data emulation scenario: 268 clustered
# series over 16 clusters plus 97 outliers, skewed like field data with a few
# dominant patterns and a long tail of small clusters.
EMULATE_REAL_CLUSTER_COUNTS = (60, 40, 30, 25, 20, 15, 12, 10, 9, 8, 8, 7, 7, 6, 6, 5)
EMULATE_REAL_N_OUTLIERS = 97
EMULATE_REAL_SIGMA = 0.105


@dataclass(frozen=True)
class ScenarioSpec:
    """One scenario dataset request.

    kind ∈ {baseline, noise, size, kcount, balance, outliers, separation,
    emulate_real}; params are kind-specific (see build_scenario).
    """

    kind: str
    params: dict = field(default_factory=dict)
    replicates: int = 1


def _fixed_sigmas(spec: ScenarioSpec) -> tuple[float, float]:
    if spec.kind == "noise":
        sigma = spec.params["sigma"]
        return sigma, sigma
    if spec.kind == "emulate_real":
        return EMULATE_REAL_SIGMA, EMULATE_REAL_SIGMA
    sigma = spec.params.get("sigma")
    if sigma is not None:
        return float(sigma), float(sigma)
    return BASELINE_SIGMA_L, BASELINE_SIGMA_H


def _generate_series(labels, sigma_l, sigma_h, rng, catalogue) -> np.ndarray:
    series = np.empty((len(labels), 48), dtype=np.float64)
    for i, lab in enumerate(labels):
        if lab == OUTLIER_LABEL:
            series[i] = gen_outlier(rng)
        else:
            series[i] = gen_dlp(int(lab), sigma_l, sigma_h, rng, catalogue=catalogue)
    return series


def _uniform_labels(n: int, cluster_ids, rng) -> np.ndarray:
    cluster_ids = np.asarray(cluster_ids, dtype=np.int64)
    return cluster_ids[rng.integers(0, len(cluster_ids), n)]


def _balance_labels(mode: str, n: int, rng) -> np.ndarray:
    if mode == "balanced":
        return rng.integers(0, N_CLUSTERS, n).astype(np.int64)
    special_size = 5 if mode == "rare" else 500
    special = int(rng.integers(0, N_CLUSTERS))
    others = [c for c in range(N_CLUSTERS) if c != special]
    floor = 10
    rest = n - special_size - floor * len(others)
    if rest < 0:
        raise InvalidScenarioParams(f"n={n} too small for balance mode {mode!r}")
    labels = [special] * special_size
    for c in others:
        labels.extend([c] * floor)
    labels.extend(int(others[j]) for j in rng.integers(0, len(others), rest))
    labels = np.asarray(labels, dtype=np.int64)
    rng.shuffle(labels)
    return labels


def build_scenario(spec: ScenarioSpec, rng) -> LabeledDataset:
    """Build one labeled dataset for a scenario.

    Supported kinds and params:
      baseline: n (default 1000), assignment "uniform"|"exact", sigma (optional)
      noise: sigma (sets both noise levels), n (default 1000)
      size: n ∈ {500, 1000, 2000, 4000}
      kcount: k ∈ {8, 12, 16, 20}; n = 50k, labels over k clusters drawn
              without replacement (relabeled 0..k-1; original ids in meta)
      balance: mode ∈ {rare, dominant, balanced}; n = 1000
      outliers: n_outliers ∈ {0, 25, 50, 100, 250, 500, 1000} added to 1000
                uniformly labeled series; outliers carry label -1
      separation: scenario ∈ {timing, magnitude, width}, level (see
                  separation_dataset)
      emulate_real: fixed 16-cluster size histogram (268 series) + 97
                    outliers, sigma 0.105
    """
    catalogue = load_catalogue(spec.params.get("catalogue_path"))
    sigma_l, sigma_h = _fixed_sigmas(spec)
    meta = {"scenario": spec.kind, "sigma_l": sigma_l, "sigma_h": sigma_h, "params": dict(spec.params)}

    if spec.kind == "baseline" or spec.kind == "noise" or spec.kind == "size":
        n = int(spec.params.get("n", 1000))
        if spec.kind == "noise" and spec.params["sigma"] not in NOISE_GRID:
            raise InvalidScenarioParams(f"sigma {spec.params['sigma']} not in noise grid")
        if spec.kind == "size" and n not in SIZE_GRID:
            raise InvalidScenarioParams(f"n {n} not in size grid")
        if spec.params.get("assignment", "uniform") == "exact":
            if n % N_CLUSTERS:
                raise InvalidScenarioParams(f"exact assignment needs n divisible by {N_CLUSTERS}")
            labels = np.repeat(np.arange(N_CLUSTERS, dtype=np.int64), n // N_CLUSTERS)
        else:
            labels = rng.integers(0, N_CLUSTERS, n).astype(np.int64)
        meta["k"] = N_CLUSTERS
    elif spec.kind == "kcount":
        k = int(spec.params["k"])
        if k not in KCOUNT_GRID:
            raise InvalidScenarioParams(f"k {k} not in cluster-count grid")
        selected = np.sort(rng.choice(N_CLUSTERS, size=k, replace=False)).astype(np.int64)
        labels = rng.integers(0, k, 50 * k).astype(np.int64)
        meta["k"] = k
        meta["selected_clusters"] = selected.tolist()
        series = _generate_series(selected[labels], sigma_l, sigma_h, rng, catalogue)
        return LabeledDataset(series=series, labels=labels, meta=meta)
    elif spec.kind == "balance":
        mode = spec.params["mode"]
        if mode not in BALANCE_MODES:
            raise InvalidScenarioParams(f"unknown balance mode {mode!r}")
        labels = _balance_labels(mode, int(spec.params.get("n", 1000)), rng)
        meta["k"] = N_CLUSTERS
    elif spec.kind == "outliers":
        n_o = int(spec.params["n_outliers"])
        if n_o not in OUTLIER_GRID:
            raise InvalidScenarioParams(f"n_outliers {n_o} not in outlier grid")
        n = int(spec.params.get("n", 1000))
        labels = np.concatenate(
            [rng.integers(0, N_CLUSTERS, n).astype(np.int64), np.full(n_o, OUTLIER_LABEL, dtype=np.int64)]
        )
        meta["k"] = N_CLUSTERS
    elif spec.kind == "separation":
        return separation_dataset(spec.params["scenario"], spec.params["level"], rng,
                                  sigma_l=sigma_l, sigma_h=sigma_h)
    elif spec.kind == "emulate_real":
        selected = np.sort(rng.choice(N_CLUSTERS, size=16, replace=False)).astype(np.int64)
        counts = np.array(EMULATE_REAL_CLUSTER_COUNTS, dtype=np.int64)
        rng.shuffle(counts)
        labels = np.concatenate(
            [np.repeat(np.arange(16, dtype=np.int64), counts),
             np.full(EMULATE_REAL_N_OUTLIERS, OUTLIER_LABEL, dtype=np.int64)]
        )
        rng.shuffle(labels)
        meta["k"] = 16
        meta["selected_clusters"] = selected.tolist()
        meta["cluster_counts"] = counts.tolist()
        mapped = np.where(labels >= 0, selected[np.clip(labels, 0, 15)], OUTLIER_LABEL)
        series = _generate_series(mapped, sigma_l, sigma_h, rng, catalogue)
        return LabeledDataset(series=series, labels=labels, meta=meta)
    else:
        raise InvalidScenarioParams(f"unknown scenario kind {spec.kind!r}")

    series = _generate_series(labels, sigma_l, sigma_h, rng, catalogue)
    return LabeledDataset(series=series, labels=labels, meta=meta)


# Separation scenarios morph a copy of a fixed cluster along one axis.
# Timing: an early single peak (like catalogue cluster 0, with +-0.75 h of
# location variance) whose copy is shifted by `level` hours.
_TIMING_BASE = ShapeSpec(
    cluster_id=0,
    components=(GaussianPeak((6.5, 7.5), (0.5, 0.7), 1.0),),
    label="separation timing base",
)
# Magnitude: the double-peak cluster 4; the copy's second peak is scaled to
# `level` percent of its original magnitude.
_MAGNITUDE_BASE = ShapeSpec(
    cluster_id=0,
    components=(
        GaussianPeak((6.5, 7.5), (0.6, 0.8), 0.95),
        GaussianPeak((17.5, 18.5), (0.6, 0.8), 1.0),
    ),
    label="separation magnitude base",
)
# Width: the wide hump of cluster 9 centralised at noon; the copy gains
# `level` units of variance (hours squared) on its peak.
_WIDTH_BASE = ShapeSpec(
    cluster_id=0,
    components=(GaussianPeak((11.5, 12.5), (1.8, 2.2), 0.9),),
    label="separation width base",
)


def _separation_specs(scenario: str, level) -> tuple[ShapeSpec, ShapeSpec]:
    if scenario == "timing":
        if not any(abs(level - g) < 1e-9 for g in TIMING_GRID):
            raise InvalidScenarioParams(f"timing level {level} not in grid")
        peak = _TIMING_BASE.components[0]
        lo, hi = peak.loc_range
        moved = GaussianPeak((lo + level, hi + level), peak.scale_range, peak.magnitude)
        return _TIMING_BASE, _TIMING_BASE.with_components((moved,))
    if scenario == "magnitude":
        if int(level) != level or not 0 <= int(level) <= 100:
            raise InvalidScenarioParams(f"magnitude level {level} not in grid")
        first, second = _MAGNITUDE_BASE.components
        scaled = GaussianPeak(second.loc_range, second.scale_range, second.magnitude * int(level) / 100.0)
        return _MAGNITUDE_BASE, _MAGNITUDE_BASE.with_components((first, scaled))
    if scenario == "width":
        if int(level) != level or not 0 <= int(level) <= 80:
            raise InvalidScenarioParams(f"width level {level} not in grid")
        peak = _WIDTH_BASE.components[0]
        lo, hi = peak.scale_range
        widened = GaussianPeak(
            peak.loc_range,
            (float(np.sqrt(lo**2 + level)), float(np.sqrt(hi**2 + level))),
            peak.magnitude,
        )
        return _WIDTH_BASE, _WIDTH_BASE.with_components((widened,))
    raise InvalidScenarioParams(f"unknown separation scenario {scenario!r}")


def separation_dataset(scenario: str, level, rng,
                       sigma_l: float = BASELINE_SIGMA_L,
                       sigma_h: float = BASELINE_SIGMA_H) -> LabeledDataset:
    """Two 50-series clusters: A fixed, B displaced by `level` along one axis.

    scenario "timing" shifts B's peak location by `level` hours; "magnitude"
    scales B's second peak to `level` percent; "width" adds `level` units of
    variance (hours squared) to B's peak.
    """
    spec_a, spec_b = _separation_specs(scenario, level)
    labels = np.repeat(np.array([0, 1], dtype=np.int64), 50)
    catalogue = {0: spec_a, 1: spec_b}
    series = _generate_series(labels, sigma_l, sigma_h, rng, catalogue)
    meta = {
        "scenario": f"separation_{scenario}",
        "sigma_l": sigma_l,
        "sigma_h": sigma_h,
        "params": {"scenario": scenario, "level": level},
        "k": 2,
    }
    return LabeledDataset(series=series, labels=labels, meta=meta)
