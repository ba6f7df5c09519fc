"""Tests for the figure-rendering subpackage."""

import csv
import json
from pathlib import Path

import numpy as np
import pytest

from smtsbench import figures
from smtsbench.figures import FigureDataError
from smtsbench.figures.cli import main as figures_main
from smtsbench.stats import correlation


def _write_csv(path: Path, header, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


@pytest.fixture
def heatmap_csv(tmp_path):
    path = tmp_path / "heatmap.csv"
    _write_csv(
        path,
        ["scenario", "method_id", "metric", "mean", "std", "n"],
        [
            ["baseline(n=100)", "ed+hac(ward)", "ARI", "0.91", "0.02", "5"],
            ["baseline(n=100)", "kmeans", "ARI", "0.78", "0.05", "5"],
            ["noise(sigma=0.2)", "ed+hac(ward)", "ARI", "0.62", "0.04", "5"],
            ["noise(sigma=0.2)", "kmeans", "ARI", "0.55", "0.06", "5"],
        ],
    )
    return path


@pytest.fixture
def sweep_csv(tmp_path):
    path = tmp_path / "sweep.csv"
    rows = []
    for lv, a, b in [(0.05, 0.95, 0.80), (0.10, 0.90, 0.82), (0.15, 0.84, 0.79)]:
        rows.append(["noise", f"{lv}", "dtw_exp+hac(ward)", f"{a}", "0.01", "5"])
        rows.append(["noise", f"{lv}", "sbd+hac(ward)", f"{b}", "0.02", "5"])
    _write_csv(path, ["kind", "level", "method_id", "mean", "std", "n"], rows)
    return path


@pytest.fixture
def rank_csv(tmp_path):
    path = tmp_path / "rank_diagram.csv"
    _write_csv(
        path,
        ["method_id", "mean_rank", "cliques"],
        [
            ["dtw_exp+hac(ward)", "1.2", "0"],
            ["sbd+kmedoids", "2.1", "0|1"],
            ["kmeans", "2.9", "1"],
            ["kshape", "3.8", ""],
        ],
    )
    return path


@pytest.fixture
def scatter_csv(tmp_path):
    path = tmp_path / "scatter.csv"
    _write_csv(
        path,
        ["method_id", "x", "y"],
        [
            ["ed+hac(ward)", "0.91", "0.88"],
            ["kmeans", "0.74", "0.79"],
            ["kshape", "0.55", "0.50"],
            ["sbd+kmedoids", "0.86", "0.87"],
            ["dtw_exp+hac(ward)", "0.95", "0.96"],
        ],
    )
    return path


def _geometry(img_path: Path) -> dict:
    sidecar = img_path.with_suffix(".json")
    assert sidecar.exists()
    return json.loads(sidecar.read_text())


def test_heatmap_renders_and_geometry_matches(heatmap_csv, tmp_path):
    out = figures.render("heatmap", heatmap_csv, tmp_path / "heatmap.png")
    assert out.exists() and out.stat().st_size > 0
    geo = _geometry(out)
    assert geo["kind"] == "heatmap"
    assert geo["methods"] == ["ed+hac(ward)", "kmeans"]
    assert geo["scenarios"] == ["baseline(n=100)", "noise(sigma=0.2)"]
    assert geo["values"] == [[0.91, 0.62], [0.78, 0.55]]


def test_sweep_lines_geometry_sorted_by_level(sweep_csv, tmp_path):
    out = figures.render("sweep_lines", sweep_csv, tmp_path / "sweep.png")
    geo = _geometry(out)
    series = geo["series"]["dtw_exp+hac(ward)"]
    assert series["levels"] == [0.05, 0.10, 0.15]
    assert series["means"] == [0.95, 0.90, 0.84]
    assert geo["series"]["sbd+hac(ward)"]["stds"] == [0.02, 0.02, 0.02]


def test_rank_diagram_cliques(rank_csv, tmp_path):
    out = figures.render("rank_diagram", rank_csv, tmp_path / "ranks.png")
    geo = _geometry(out)
    assert geo["methods"] == ["dtw_exp+hac(ward)", "sbd+kmedoids", "kmeans", "kshape"]
    assert geo["mean_ranks"] == [1.2, 2.1, 2.9, 3.8]
    by_id = {bar["clique"]: bar for bar in geo["cliques"]}
    assert by_id["0"]["members"] == ["dtw_exp+hac(ward)", "sbd+kmedoids"]
    assert by_id["1"]["members"] == ["sbd+kmedoids", "kmeans"]
    assert by_id["0"]["lo"] == 1.2 and by_id["0"]["hi"] == 2.1


def test_scatter_annotation_matches_correlation(scatter_csv, tmp_path):
    out = figures.render("scatter", scatter_csv, tmp_path / "scatter.png")
    geo = _geometry(out)
    x = np.array(geo["x"])
    y = np.array(geo["y"])
    r_ref, _ = correlation(x, y, kind="pearson")
    rho_ref, _ = correlation(x, y, kind="spearman")
    assert geo["annotation"] == f"r={r_ref:.3f}, rho={rho_ref:.3f}"
    assert abs(geo["pearson_r"] - r_ref) < 5e-4
    assert abs(geo["spearman_rho"] - rho_ref) < 5e-4


def test_scatter_rejects_constant_axis(tmp_path):
    path = tmp_path / "bad.csv"
    _write_csv(path, ["method_id", "x", "y"], [["a", "1", "2"], ["b", "1", "3"]])
    with pytest.raises(FigureDataError, match="zero-variance"):
        figures.render("scatter", path, tmp_path / "bad.png")


def test_unknown_kind_and_missing_columns(tmp_path, heatmap_csv):
    with pytest.raises(FigureDataError, match="unknown figure kind"):
        figures.render("pie", heatmap_csv, tmp_path / "x.png")
    bad = tmp_path / "short.csv"
    _write_csv(bad, ["method_id"], [["a"]])
    with pytest.raises(FigureDataError, match="missing"):
        figures.render("scatter", bad, tmp_path / "y.png")
    empty = tmp_path / "empty.csv"
    _write_csv(empty, ["method_id", "x", "y"], [])
    with pytest.raises(FigureDataError):
        figures.render("scatter", empty, tmp_path / "z.png")


def test_cli_renders_and_reports_errors(scatter_csv, tmp_path, capsys):
    out = tmp_path / "cli.png"
    assert figures_main(["scatter", "--in", str(scatter_csv), "--out", str(out)]) == 0
    assert out.exists()
    assert str(out) in capsys.readouterr().out
    rc = figures_main(["scatter", "--in", str(tmp_path / "nope.csv"), "--out", str(out)])
    assert rc == 1
    assert "error:" in capsys.readouterr().err
