"""Reporting: aggregate results.csv into summary tables and the delimited
files under figures_data/ that the plotting component consumes. The report
path also renders figures next to those files when the plotting subpackage
is available; everything else works without it."""

from __future__ import annotations

import csv
import json
import re
import warnings
from collections import defaultdict
from pathlib import Path

import numpy as np

from ..errors import MissingCells
from ..stats import bonferroni, cliques, friedman, mean_ranks, wilcoxon_signed_rank
from .io import ResultRecord, read_results_csv

_FMT = "%.12g"


def _fmt(v) -> str:
    return _FMT % v if isinstance(v, float) else str(v)


def _write_csv(path: Path, header: list[str], rows: list[tuple]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) for v in row])


def pick_metric(records: list[ResultRecord]) -> str:
    metrics = {r.metric for r in records}
    return "ARI" if "ARI" in metrics else "acc_overall"


def summary_table(records: list[ResultRecord], metric: str) -> list[tuple]:
    """Rows (scenario, method_id, metric, mean, std, n) over replicates,
    averaging grid members of the same method first."""
    cells = defaultdict(list)
    for r in records:
        if r.metric == metric:
            cells[(r.scenario, r.method_id, r.dataset_index)].append(r.value)
    per_dataset = {k: float(np.mean(v)) for k, v in cells.items()}
    groups = defaultdict(list)
    for (scenario, method, _), value in sorted(per_dataset.items()):
        groups[(scenario, method)].append(value)
    rows = []
    for (scenario, method), vals in sorted(groups.items()):
        arr = np.asarray(vals)
        rows.append((scenario, method, metric, float(arr.mean()), float(arr.std(ddof=0)), len(arr)))
    return rows


def score_matrix(records: list[ResultRecord], metric: str):
    """Methods x datasets score matrix (grid members averaged per dataset).
    Raises MissingCells when any method lacks a score on any dataset."""
    cells = defaultdict(list)
    for r in records:
        if r.metric == metric:
            cells[(r.method_id, (r.scenario, r.dataset_index))].append(r.value)
    methods = sorted({m for m, _ in cells})
    datasets = sorted({d for _, d in cells})
    missing = [(m, d) for m in methods for d in datasets if (m, d) not in cells]
    if missing:
        raise MissingCells(f"no {metric} score for {len(missing)} method/dataset cells: {missing[:5]}")
    scores = np.array([[np.mean(cells[(m, d)]) for d in datasets] for m in methods])
    return methods, datasets, scores


def rank_table(records: list[ResultRecord], metric: str, alpha: float = 0.05):
    """Mean ranks plus Friedman test and the non-significance cliques from
    Bonferroni-corrected pairwise Wilcoxon tests (higher score = better)."""
    methods, datasets, scores = score_matrix(records, metric)
    ranks = mean_ranks(scores)
    stat, p = friedman(scores)
    m = len(methods)
    adjacency = np.ones((m, m), dtype=bool)
    n_tests = m * (m - 1) // 2
    for i in range(m):
        for j in range(i + 1, m):
            try:
                p_ij = bonferroni([wilcoxon_signed_rank(scores[i], scores[j])], n_tests)[0]
            except Exception:
                p_ij = 1.0
            adjacency[i, j] = adjacency[j, i] = p_ij >= alpha
    groups = cliques(adjacency, order=ranks)
    return {
        "methods": methods,
        "mean_ranks": ranks,
        "friedman_stat": stat,
        "friedman_p": p,
        "cliques": groups,
    }


_LEVEL_RE = re.compile(r"^(?P<kind>[a-z_]+)\((?P<inner>.*)\)$")


def split_scenario(scenario: str) -> tuple[str, str]:
    """("noise(sigma=0.15)") -> ("noise", "0.15"); bare labels get level ""."""
    m = _LEVEL_RE.match(scenario)
    if not m:
        return scenario, ""
    kind = m.group("kind")
    params = dict(p.split("=", 1) for p in m.group("inner").split(",") if "=" in p)
    for key in ("sigma", "n", "k", "n_outliers", "mode", "level"):
        if key in params:
            return kind, params[key]
    return kind, m.group("inner")


def sweep_table(records: list[ResultRecord], metric: str) -> list[tuple]:
    """Rows (kind, level, method_id, mean, std, n) per sweep level."""
    rows = []
    for scenario, method, _metric, mean, std, n in summary_table(records, metric):
        kind, level = split_scenario(scenario)
        rows.append((kind, level, method, mean, std, n))
    return rows


def scatter_table(records: list[ResultRecord], metric: str) -> list[tuple]:
    """Per-method (x, y) pairs from two disjoint replicate batches (even vs
    odd dataset index), used for self-consistency scatter plots."""
    batches = {0: defaultdict(list), 1: defaultdict(list)}
    for r in records:
        if r.metric == metric:
            batches[r.dataset_index % 2][r.method_id].append(r.value)
    methods = sorted(set(batches[0]) & set(batches[1]))
    if not methods:
        raise MissingCells("scatter table needs records in both replicate batches")
    return [(m, float(np.mean(batches[0][m])), float(np.mean(batches[1][m]))) for m in methods]


def convergence_table(records: list[ResultRecord], threshold: float = 0.99) -> list[tuple]:
    """First sweep level whose mean accuracy exceeds the threshold, per
    method; levels are walked in grid (record) order."""
    order: dict[tuple, None] = {}
    acc = defaultdict(list)
    for r in records:
        if r.metric != "acc_overall":
            continue
        kind, level = split_scenario(r.scenario)
        key = (kind, r.method_id, level)
        order.setdefault(key, None)
        acc[key].append(r.value)
    firsts = {}
    for kind, method, level in order:
        pair = (kind, method)
        if pair in firsts:
            continue
        if float(np.mean(acc[(kind, method, level)])) > threshold:
            try:
                firsts[pair] = float(level)
            except ValueError:  # categorical sweep level (e.g. balance mode)
                firsts[pair] = level
    return [(kind, method, level) for (kind, method), level in sorted(firsts.items())]


def write_figures_data(out_dir: Path, records: list[ResultRecord], metric: str | None = None) -> Path:
    out_dir = Path(out_dir)
    fig_dir = out_dir / "figures_data"
    metric = pick_metric(records) if metric is None else metric
    _write_csv(
        fig_dir / "heatmap.csv",
        ["scenario", "method_id", "metric", "mean", "std", "n"],
        summary_table(records, metric),
    )
    _write_csv(
        fig_dir / "sweep.csv",
        ["kind", "level", "method_id", "mean", "std", "n"],
        sweep_table(records, metric),
    )
    try:
        info = rank_table(records, metric)
        clique_of = ["" for _ in info["methods"]]
        for gi, group in enumerate(info["cliques"]):
            for idx in group:
                clique_of[idx] = (clique_of[idx] + "|" if clique_of[idx] else "") + str(gi)
        _write_csv(
            fig_dir / "rank_diagram.csv",
            ["method_id", "mean_rank", "cliques"],
            list(zip(info["methods"], info["mean_ranks"].tolist(), clique_of)),
        )
        with open(fig_dir / "rank_stats.json", "w") as fh:
            json.dump(
                {"friedman_stat": info["friedman_stat"], "friedman_p": info["friedman_p"], "metric": metric},
                fh, indent=2, sort_keys=True,
            )
    except Exception as exc:
        warnings.warn(f"rank diagram skipped: {exc}")
    try:
        _write_csv(fig_dir / "scatter.csv", ["method_id", "x", "y"], scatter_table(records, metric))
    except MissingCells:
        pass
    conv = convergence_table(records)
    if conv:
        _write_csv(fig_dir / "convergence.csv", ["kind", "method_id", "level"], conv)
    return fig_dir


def render_figures(fig_dir: Path) -> list[Path]:
    """Render plots next to the delimited files; silently skipped when the
    plotting subpackage is absent."""
    try:
        from .. import figures
    except ImportError:
        return []
    if not hasattr(figures, "render"):
        return []
    rendered = []
    fig_dir = Path(fig_dir)
    for name, kind in (
        ("heatmap", "heatmap"),
        ("sweep", "sweep_lines"),
        ("rank_diagram", "rank_diagram"),
        ("scatter", "scatter"),
    ):
        src = fig_dir / f"{name}.csv"
        if not src.exists():
            continue
        out = fig_dir / f"{name}.png"
        figures.render(kind, src, out)
        rendered.append(out)
    return rendered


def report(out_dir: Path, metric: str | None = None) -> Path:
    out_dir = Path(out_dir)
    records = read_results_csv(out_dir / "results.csv")
    fig_dir = write_figures_data(out_dir, records, metric)
    render_figures(fig_dir)
    return fig_dir
