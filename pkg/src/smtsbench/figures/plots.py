"""The four report figure kinds: score heatmap, sweep line plot, mean-rank
diagram with non-significance cliques, and batch-consistency scatter."""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .io import FigureDataError, as_float, read_rows, write_geometry


def _finish(fig, out_path: Path) -> Path:
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out_path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return out_path


def heatmap(csv_path: str | Path, out_path: str | Path) -> Path:
    """Method x scenario grid of mean scores."""
    rows = read_rows(csv_path, ("scenario", "method_id", "metric", "mean"))
    methods = sorted({r["method_id"] for r in rows})
    scenarios = sorted({r["scenario"] for r in rows})
    grid = np.full((len(methods), len(scenarios)), np.nan)
    for r in rows:
        i = methods.index(r["method_id"])
        j = scenarios.index(r["scenario"])
        grid[i, j] = as_float(r, "mean", csv_path)
    fig, ax = plt.subplots(figsize=(max(4, 1 + 0.6 * len(scenarios)), max(3, 0.4 * len(methods) + 1)))
    im = ax.imshow(grid, aspect="auto", cmap="viridis", vmin=np.nanmin(grid), vmax=np.nanmax(grid))
    ax.set_xticks(range(len(scenarios)), scenarios, rotation=45, ha="right", fontsize=8)
    ax.set_yticks(range(len(methods)), methods, fontsize=8)
    for i in range(len(methods)):
        for j in range(len(scenarios)):
            if not math.isnan(grid[i, j]):
                ax.text(j, i, f"{grid[i, j]:.2f}", ha="center", va="center", fontsize=7,
                        color="white" if im.norm(grid[i, j]) < 0.6 else "black")
    ax.set_xlabel("scenario")
    fig.colorbar(im, ax=ax, label=rows[0]["metric"])
    out = _finish(fig, Path(out_path))
    write_geometry(out, {
        "kind": "heatmap",
        "methods": methods,
        "scenarios": scenarios,
        "values": [[None if math.isnan(v) else v for v in row] for row in grid.tolist()],
    })
    return out


def sweep_lines(csv_path: str | Path, out_path: str | Path) -> Path:
    """One line per method across sweep levels, with std shading."""
    rows = read_rows(csv_path, ("kind", "level", "method_id", "mean", "std"))
    methods = sorted({r["method_id"] for r in rows})
    fig, ax = plt.subplots(figsize=(6, 4))
    geometry = {"kind": "sweep_lines", "series": {}}
    for m in methods:
        pts = [r for r in rows if r["method_id"] == m]
        levels, means, stds = [], [], []
        for r in pts:
            try:
                levels.append(float(r["level"]))
            except ValueError:
                levels.append(len(levels))  # categorical level (e.g. balance mode)
            means.append(as_float(r, "mean", csv_path))
            stds.append(as_float(r, "std", csv_path))
        order = np.argsort(levels)
        lv = np.asarray(levels)[order]
        mu = np.asarray(means)[order]
        sd = np.asarray(stds)[order]
        ax.plot(lv, mu, marker="o", markersize=3, label=m)
        ax.fill_between(lv, mu - sd, mu + sd, alpha=0.15)
        geometry["series"][m] = {"levels": lv.tolist(), "means": mu.tolist(), "stds": sd.tolist()}
    ax.set_xlabel(rows[0]["kind"])
    ax.set_ylabel("score")
    ax.legend(fontsize=7)
    out = _finish(fig, Path(out_path))
    write_geometry(out, geometry)
    return out


def rank_diagram(csv_path: str | Path, out_path: str | Path) -> Path:
    """Methods on a mean-rank axis; methods sharing a clique id are joined
    by a horizontal bar (not statistically significantly different)."""
    rows = read_rows(csv_path, ("method_id", "mean_rank", "cliques"))
    rows = sorted(rows, key=lambda r: float(r["mean_rank"]))
    names = [r["method_id"] for r in rows]
    ranks = [as_float(r, "mean_rank", csv_path) for r in rows]
    clique_sets: dict[str, list[int]] = {}
    for i, r in enumerate(rows):
        for cid in filter(None, r["cliques"].split("|")):
            clique_sets.setdefault(cid, []).append(i)
    fig, ax = plt.subplots(figsize=(6, 1.2 + 0.35 * len(names)))
    for i, (name, rank) in enumerate(zip(names, ranks)):
        ax.plot([rank], [i], "o", color="black", markersize=4)
        ax.annotate(f"{name} ({rank:.2f})", (rank, i), textcoords="offset points",
                    xytext=(6, -3), fontsize=8)
    bars = []
    for bar_idx, (cid, members) in enumerate(sorted(clique_sets.items())):
        if len(members) < 2:
            continue
        y = len(names) - 0.5 + 0.25 * len(bars)
        lo, hi = min(ranks[i] for i in members), max(ranks[i] for i in members)
        ax.plot([lo, hi], [y, y], linewidth=3, solid_capstyle="round")
        bars.append({"clique": cid, "members": [names[i] for i in members], "lo": lo, "hi": hi})
    ax.set_yticks([])
    ax.set_xlabel("mean rank (lower is better)")
    ax.invert_yaxis()
    out = _finish(fig, Path(out_path))
    write_geometry(out, {"kind": "rank_diagram", "methods": names, "mean_ranks": ranks, "cliques": bars})
    return out


def _pearson(x: np.ndarray, y: np.ndarray) -> float:
    xc = x - x.mean()
    yc = y - y.mean()
    denom = math.sqrt(float(xc @ xc) * float(yc @ yc))
    if denom == 0.0:
        raise FigureDataError("scatter annotation undefined: zero-variance axis")
    return float(xc @ yc) / denom


def _spearman(x: np.ndarray, y: np.ndarray) -> float:
    def ranks(v):
        order = np.argsort(v, kind="stable")
        r = np.empty(len(v))
        sv = v[order]
        i = 0
        while i < len(v):
            j = i
            while j + 1 < len(v) and sv[j + 1] == sv[i]:
                j += 1
            r[order[i:j + 1]] = (i + j) / 2 + 1
            i = j + 1
        return r

    return _pearson(ranks(x), ranks(y))


def scatter(csv_path: str | Path, out_path: str | Path) -> Path:
    """Per-method (x, y) scores with a least-squares fitted line and a
    correlation annotation (Pearson r and Spearman rho, 3 decimals)."""
    rows = read_rows(csv_path, ("method_id", "x", "y"))
    names = [r["method_id"] for r in rows]
    x = np.array([as_float(r, "x", csv_path) for r in rows])
    y = np.array([as_float(r, "y", csv_path) for r in rows])
    r_p = _pearson(x, y)
    r_s = _spearman(x, y)
    annotation = f"r={r_p:.3f}, rho={r_s:.3f}"
    slope, intercept = np.polyfit(x, y, 1)
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.scatter(x, y, s=18)
    for name, xi, yi in zip(names, x, y):
        ax.annotate(name, (xi, yi), textcoords="offset points", xytext=(4, 4), fontsize=7)
    pad = 0.05 * (x.max() - x.min() or 1.0)
    xs = np.array([x.min() - pad, x.max() + pad])
    ax.plot(xs, slope * xs + intercept, linestyle="--", color="gray", linewidth=1)
    ax.annotate(annotation, (0.05, 0.95), xycoords="axes fraction", va="top", fontsize=9)
    ax.set_xlabel("batch A")
    ax.set_ylabel("batch B")
    out = _finish(fig, Path(out_path))
    write_geometry(out, {
        "kind": "scatter",
        "methods": names,
        "x": x.tolist(),
        "y": y.tolist(),
        "pearson_r": r_p,
        "spearman_rho": r_s,
        "fit_slope": float(slope),
        "fit_intercept": float(intercept),
        "annotation": annotation,
    })
    return out


RENDERERS = {
    "heatmap": heatmap,
    "sweep_lines": sweep_lines,
    "rank_diagram": rank_diagram,
    "scatter": scatter,
}


def render(kind: str, csv_path: str | Path, out_path: str | Path) -> Path:
    try:
        fn = RENDERERS[kind]
    except KeyError:
        raise FigureDataError(f"unknown figure kind {kind!r}; expected one of {sorted(RENDERERS)}")
    return fn(csv_path, out_path)
