"""Experiment runners: stage one (1NN accuracy), stage two (clustering EVIs
with expected-performance averaging), and the scenario sweeps. Tasks fan out
over a thread pool but results are assembled in task order, so output files
are byte-identical at any thread count."""

from __future__ import annotations

import hashlib
import json
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from ..clustering import cluster, embed_rows
from ..core import OUTLIER_LABEL, LabeledDataset, SeedSpec, make_rng
from ..evaluation import EVI_FUNCS, filter_outliers, loo_1nn
from ..synthgen import ScenarioSpec, build_scenario
from .config import ExperimentConfig
from .io import ResultRecord, write_manifest, write_results_csv
from .methods import paradigm_matrix, resolve_method

_EVI_METRIC_NAMES = {"ari": "ARI", "ami": "AMI", "one_minus_nvd": "NVD1m", "psi": "PSI"}


def scenario_label(kind: str, params: dict) -> str:
    if not params:
        return kind
    inner = ",".join(
        f"{k}={v:g}" if isinstance(v, float) else f"{k}={v}" for k, v in sorted(params.items())
    )
    return f"{kind}({inner})"


def dataset_stream(kind: str, params: dict, replicate: int) -> tuple:
    """Seed stream for one scenario dataset; recorded in the manifest so any
    record is attributable back to its exact dataset."""
    return ("scenario", kind, json.dumps(params, sort_keys=True), replicate)


def build_datasets(config: ExperimentConfig, kind: str | None = None, params: dict | None = None) -> list[dict]:
    kind = config.scenario if kind is None else kind
    params = dict(config.scenario_params if params is None else params)
    out = []
    for rep in range(config.replicates):
        stream = dataset_stream(kind, params, rep)
        rng = make_rng(SeedSpec(config.seed, stream))
        dataset = build_scenario(ScenarioSpec(kind, params), rng)
        out.append(
            {
                "scenario": scenario_label(kind, params),
                "index": rep,
                "dataset": dataset,
                "stream": list(stream),
            }
        )
    return out


def _method_seed(master_seed: int, *parts) -> int:
    digest = hashlib.sha256(repr((master_seed, *parts)).encode()).hexdigest()
    return int(digest[:16], 16)


def _run_tasks(tasks: list, worker, threads: int) -> list:
    """Run worker(task) over all tasks, preserving task order in the output."""
    if threads <= 1:
        return [worker(t) for t in tasks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(worker, tasks))


def _fail_context(entry: dict, method: str, exc: Exception) -> RuntimeError:
    return RuntimeError(
        f"method {method!r} failed on {entry['scenario']} dataset {entry['index']}: {exc}"
    )


# ------------------------------------------------------------------ stage 1


def _stage1_records(entry: dict, pid: str) -> list[ResultRecord]:
    dataset: LabeledDataset = entry["dataset"]
    keep = dataset.labels != OUTLIER_LABEL
    try:
        matrix = paradigm_matrix(pid, dataset.series[keep])
        scores = loo_1nn(matrix, dataset.labels[keep])
    except Exception as exc:  # abort with context per the runner contract
        raise _fail_context(entry, pid, exc) from exc
    params = pid.split("(", 1)[1].rstrip(")") if "(" in pid else ""
    records = [
        ResultRecord(entry["scenario"], entry["index"], pid, params, "acc_overall", scores["overall"])
    ]
    for label, acc in sorted(scores["per_cluster"].items()):
        records.append(
            ResultRecord(entry["scenario"], entry["index"], pid, params, f"acc_cluster_{label}", acc)
        )
    return records


def run_stage1(config: ExperimentConfig, datasets: list[dict] | None = None) -> list[ResultRecord]:
    datasets = build_datasets(config) if datasets is None else datasets
    paradigms = []
    for method in config.methods:
        resolved = resolve_method(method, config.param_mode)
        if resolved["algo"] is not None:
            raise ValueError(f"stage one takes paradigms only, got {method!r}")
        paradigms.extend(resolved["paradigms"])
    tasks = [(entry, pid) for entry in datasets for pid in paradigms]
    batches = _run_tasks(tasks, lambda t: _stage1_records(*t), config.threads)
    return [rec for batch in batches for rec in batch]


# ------------------------------------------------------------------ stage 2


def _stage2_records(entry: dict, method: str, resolved: dict, master_seed: int) -> list[ResultRecord]:
    dataset: LabeledDataset = entry["dataset"]
    k = int(dataset.meta["k"])
    seed = _method_seed(master_seed, entry["scenario"], entry["index"], method)
    try:
        if resolved["raw"]:
            partitions = [cluster(resolved["algo"], k, vectors=dataset.series, seed=seed)]
        else:
            partitions = []
            for pid in resolved["paradigms"]:
                matrix = paradigm_matrix(pid, dataset)
                algo = resolved["algo"]
                if algo.needs_matrix:
                    partitions.append(cluster(algo, k, matrix=matrix, seed=seed))
                else:
                    partitions.append(cluster(algo, k, vectors=embed_rows(matrix), seed=seed))
    except Exception as exc:
        raise _fail_context(entry, method, exc) from exc
    params = ";".join(resolved["paradigms"])
    records = []
    for name, fn in EVI_FUNCS.items():
        values = []
        for part in partitions:
            truth, pred = filter_outliers(dataset.labels, part)
            values.append(fn(pred, truth))
        records.append(
            ResultRecord(
                entry["scenario"], entry["index"], method, params,
                _EVI_METRIC_NAMES[name], float(np.mean(values)),
            )
        )
    return records


def run_stage2(config: ExperimentConfig, datasets: list[dict] | None = None) -> list[ResultRecord]:
    datasets = build_datasets(config) if datasets is None else datasets
    methods = [(m, resolve_method(m, config.param_mode)) for m in config.methods]
    tasks = [(entry, m, resolved) for entry in datasets for m, resolved in methods]
    batches = _run_tasks(
        tasks, lambda t: _stage2_records(t[0], t[1], t[2], config.seed), config.threads
    )
    return [rec for batch in batches for rec in batch]


# ------------------------------------------------------------------ sweeps


def _sweep_levels() -> dict[str, list[dict]]:
    from ..synthgen import BALANCE_MODES, KCOUNT_GRID, NOISE_GRID, OUTLIER_GRID, SIZE_GRID

    return {
        "noise": [{"sigma": s} for s in NOISE_GRID],
        "size": [{"n": n} for n in SIZE_GRID],
        "kcount": [{"k": k} for k in KCOUNT_GRID],
        "balance": [{"mode": m} for m in BALANCE_MODES],
        "outliers": [{"n_outliers": n} for n in OUTLIER_GRID],
    }


def run_sweep(kind: str, config: ExperimentConfig) -> list[ResultRecord]:
    """Sweep one scenario axis; separation uses the stage-one 1NN protocol,
    the rest run the stage-two pipeline per level."""
    if kind == "separation":
        return _run_separation(config)
    if kind == "emulate_real":
        datasets = build_datasets(config, "emulate_real", {})
        return run_stage2(config, datasets)
    levels_by_kind = _sweep_levels()
    if kind not in levels_by_kind:
        raise ValueError(f"unknown sweep kind {kind!r}")
    records = []
    swept_key = next(iter(levels_by_kind[kind][0]))
    base_params = {
        k: v for k, v in config.scenario_params.items() if k not in (swept_key, "levels")
    }
    levels = config.scenario_params.get("levels")
    if levels is not None:
        level_dicts = [{swept_key: lv} for lv in levels]
    else:
        level_dicts = levels_by_kind[kind]
    for level in level_dicts:
        datasets = build_datasets(config, kind, {**base_params, **level})
        records.extend(run_stage2(config, datasets))
    return records


def _run_separation(config: ExperimentConfig) -> list[ResultRecord]:
    from ..synthgen import MAGNITUDE_GRID, TIMING_GRID, WIDTH_GRID

    grids = {"timing": TIMING_GRID, "magnitude": MAGNITUDE_GRID, "width": WIDTH_GRID}
    scenario = config.scenario_params.get("scenario", "timing")
    if scenario not in grids:
        raise ValueError(f"unknown separation scenario {scenario!r}")
    levels = config.scenario_params.get("levels")
    levels = grids[scenario] if levels is None else list(levels)
    records = []
    for level in levels:
        params = {"scenario": scenario, "level": float(level)}
        datasets = build_datasets(config, "separation", params)
        records.extend(run_stage1(config, datasets))
    return records


# ------------------------------------------------------------------ entry


def execute(kind: str, config: ExperimentConfig, sweep_kind: str | None = None) -> Path:
    """Run one pipeline and persist results.csv + manifest.json; returns the
    results path."""
    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    if kind == "stage1":
        records = run_stage1(config)
        seeds = {scenario_label(config.scenario, config.scenario_params): [
            list(dataset_stream(config.scenario, dict(config.scenario_params), r))
            for r in range(config.replicates)
        ]}
    elif kind == "stage2":
        records = run_stage2(config)
        seeds = {scenario_label(config.scenario, config.scenario_params): [
            list(dataset_stream(config.scenario, dict(config.scenario_params), r))
            for r in range(config.replicates)
        ]}
    elif kind == "sweep":
        records = run_sweep(sweep_kind, config)
        seeds = {}
        for rec in records:
            seeds.setdefault(rec.scenario, [])
    else:
        raise ValueError(f"unknown pipeline {kind!r}")
    results_path = out_dir / "results.csv"
    write_results_csv(results_path, records)
    write_manifest(out_dir, config, seeds)
    return results_path
