"""End-to-end acceptance suite.

One test per acceptance criterion. These run the benchmark pipeline at
desk scale (reduced replicate counts with correspondingly widened
tolerances) and intentionally take several minutes in total; the heavy
pipeline runs are shared through module-scoped fixtures.
"""

import csv
import json
import time
from pathlib import Path

import numpy as np
import pytest

import smtsbench.harness as h
from smtsbench.core import SeedSpec, make_rng
from smtsbench.dissimilarity import dissimilarity, pairwise_matrix
from smtsbench.evaluation import EVI_FUNCS, ari, loo_1nn
from smtsbench.harness.methods import paradigm_matrix
from smtsbench.stats import correlation, friedman, mean_ranks, wilcoxon_signed_rank
from smtsbench.synthgen import MAGNITUDE_GRID, TIMING_GRID
from smtsbench.synthgen.scenarios import ScenarioSpec, build_scenario


SEED = 20260826


def _ari_by_method(records):
    by = {}
    for r in records:
        if r.metric == "ARI":
            by.setdefault(r.method_id, {})[(r.scenario, r.dataset_index)] = r.value
    return {m: {k: d[k] for k in sorted(d)} for m, d in by.items()}


def _means(by):
    return {m: float(np.mean(list(d.values()))) for m, d in by.items()}


# ---------------------------------------------------------------------------
# Equivalence oracles
# ---------------------------------------------------------------------------


def test_equivalence_oracles():
    rng = np.random.default_rng(SEED)
    t0 = time.time()
    for _ in range(1000):
        x, y = rng.random(48), rng.random(48)
        assert dissimilarity("mm(p=1)", x, y) == dissimilarity("md", x, y)
        assert dissimilarity("mm(p=2)", x, y) == dissimilarity("ed", x, y)
    assert time.time() - t0 < 1.0

    t0 = time.time()
    for _ in range(1000):
        x, y = rng.random(48), rng.random(48)
        assert abs(dissimilarity("mpd(w=48)", x, y) - dissimilarity("ed", x, y)) < 1e-9
    assert time.time() - t0 < 1.0

    t0 = time.time()
    ds = build_scenario(ScenarioSpec("baseline", {"n": 100}), make_rng(SeedSpec(SEED, ("equiv",))))
    raw = loo_1nn(paradigm_matrix("ed", ds), ds.labels)["overall"]
    assert loo_1nn(paradigm_matrix("paa(w=1)", ds), ds.labels)["overall"] == raw
    assert loo_1nn(paradigm_matrix("pca(n_c=48)", ds), ds.labels)["overall"] == raw
    assert time.time() - t0 < 1.0


# ---------------------------------------------------------------------------
# LCSS default-parameter degenerate artifact
# ---------------------------------------------------------------------------


def test_lcss_default_artifact():
    t0 = time.time()
    accuracies = []
    for i in range(10):
        rng = make_rng(SeedSpec(SEED, ("lcss", i)))
        ds = build_scenario(ScenarioSpec("baseline", {"n": 200, "assignment": "exact"}), rng)
        matrix = pairwise_matrix("lcss(eps=1)", ds.series)
        assert np.all(matrix == 0.0)
        accuracies.append(loo_1nn(matrix, ds.labels)["overall"])
    assert accuracies == [0.05] * 10
    assert float(np.var(accuracies)) == 0.0
    assert time.time() - t0 < 60.0


# ---------------------------------------------------------------------------
# Stage one: 1NN paradigm screening on 20 baseline datasets
# ---------------------------------------------------------------------------


@pytest.fixture(scope="module")
def stage1_records():
    cfg = h.ExperimentConfig(
        scenario="baseline",
        scenario_params={"n": 200, "assignment": "exact"},
        methods=tuple(
            [f"dtw(w={w})" for w in range(1, 7)]
            + [f"ksd(w={w})" for w in range(1, 4)]
            + ["sbd", "dtw"]
        ),
        replicates=20,
        seed=SEED,
        threads=4,
    )
    return h.run_stage1(cfg)


def test_stage_one_ordinal_reproduction(stage1_records):
    acc = {}
    for r in stage1_records:
        if r.metric == "acc_overall":
            acc.setdefault(r.method_id, []).append(r.value)
    means = {m: float(np.mean(v)) for m, v in acc.items()}
    best_dtw = max(means[f"dtw(w={w})"] for w in range(1, 7))
    best_ksd = max(means[f"ksd(w={w})"] for w in range(1, 4))
    assert best_dtw >= 0.98
    assert best_ksd >= 0.98
    assert 0.94 <= means["sbd"] <= 1.0
    assert means["dtw(w=48)"] <= means["sbd"] - 0.10


# ---------------------------------------------------------------------------
# Stage two: clustering combinations on 10 baseline datasets of 1000 series
# ---------------------------------------------------------------------------


@pytest.fixture(scope="module")
def stage2_by_method():
    cfg = h.ExperimentConfig(
        scenario="baseline",
        scenario_params={"n": 1000},
        methods=("dtw_exp+hac(ward)", "kmeans", "sbd+kmedoids", "kshape"),
        replicates=10,
        seed=SEED,
        threads=4,
    )
    return _ari_by_method(h.run_stage2(cfg))


def test_stage_two_reproduction(stage2_by_method):
    means = _means(stage2_by_method)
    assert means["dtw_exp+hac(ward)"] >= 0.93
    assert 0.65 <= means["kmeans"] <= 0.92
    dtw = stage2_by_method["dtw_exp+hac(ward)"]
    kmn = stage2_by_method["kmeans"]
    wins = sum(dtw[k] > kmn[k] for k in dtw)
    assert wins >= 9
    assert means["kshape"] <= means["sbd+kmedoids"] - 0.3


# ---------------------------------------------------------------------------
# Noise sweep monotonicity / interior maximum
# ---------------------------------------------------------------------------


def test_noise_sweep_properties():
    cfg = h.ExperimentConfig(
        scenario="noise",
        methods=("dtw_exp+hac(ward)", "sbd+hac(ward)"),
        replicates=10,
        seed=SEED,
        threads=4,
    )
    by = _ari_by_method(h.run_sweep("noise", cfg))
    sigmas = [0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35]

    def profile(method):
        per_level = {}
        for (scenario, _), v in by[method].items():
            per_level.setdefault(scenario, []).append(v)
        return [float(np.mean(per_level[f"noise(sigma={s:g})"])) for s in sigmas]

    dtw = profile("dtw_exp+hac(ward)")
    assert all(b <= a + 0.02 for a, b in zip(dtw, dtw[1:]))

    sbd = profile("sbd+hac(ward)")
    peak = int(np.argmax(sbd))
    assert 0 < peak < len(sbd) - 1


# ---------------------------------------------------------------------------
# Separation convergence
# ---------------------------------------------------------------------------


def _convergence(scenario, methods, levels, replicates=20):
    cfg = h.ExperimentConfig(
        scenario="separation",
        scenario_params={"scenario": scenario, "levels": list(levels)},
        methods=methods,
        replicates=replicates,
        seed=SEED,
        threads=4,
    )
    records = h.run_sweep("separation", cfg)
    table = h.convergence_table(records, threshold=0.99)
    return {method: level for _, method, level in table}


def test_separation_convergence():
    timing = _convergence("timing", ("dtw(w=1)", "dtw(w=6)"), TIMING_GRID)
    assert abs(timing["dtw(w=1)"] - 1.75) <= 0.5
    assert abs(timing["dtw(w=6)"] - 4.5) <= 0.75

    magnitude = _convergence("magnitude", ("dtw(w=1)", "ksd(w=1)"), MAGNITUDE_GRID)
    assert abs(magnitude["dtw(w=1)"] - 65) <= 8
    assert abs(magnitude["ksd(w=1)"] - 65) <= 8


# ---------------------------------------------------------------------------
# Statistics oracles
# ---------------------------------------------------------------------------


def test_statistics_oracles():
    # Friedman against the hand-computed chi-square of a tie-free fixture.
    scores = np.array(
        [
            [9.0, 9.5, 5.0, 7.5],
            [7.0, 6.5, 7.0, 6.0],
            [6.0, 5.5, 4.0, 5.0],
        ]
    )
    ranks = np.array([[1, 1, 2, 1], [2, 2, 1, 2], [3, 3, 3, 3]], dtype=float)
    n, k = 4, 3
    chi_hand = 12 / (n * k * (k + 1)) * ((ranks.sum(axis=1) - n * (k + 1) / 2) ** 2).sum()
    stat, _ = friedman(scores)
    assert abs(stat - chi_hand) < 1e-6

    # Wilcoxon against exhaustive sign-flip enumeration.
    import itertools

    rng = np.random.default_rng(SEED)
    a, b = rng.random(6), rng.random(6)
    diff = a - b
    ranks_abs = np.argsort(np.argsort(np.abs(diff))) + 1.0
    w_obs = ranks_abs[diff > 0].sum()
    mean_w = ranks_abs.sum() / 2
    count = sum(
        1
        for signs in itertools.product([0, 1], repeat=6)
        if abs(np.dot(signs, ranks_abs) - mean_w) >= abs(w_obs - mean_w) - 1e-12
    )
    assert abs(wilcoxon_signed_rank(a, b) - count / 64) < 1e-6

    # ARI pair-counting oracle.
    assert ari([0, 0, 1, 1], [0, 1, 0, 1]) == -0.5

    # Every external validity index is 1 on identical partitions.
    labels = np.array([0, 0, 1, 1, 2, 2, 2])
    for name, fn in EVI_FUNCS.items():
        assert fn(labels, labels) == pytest.approx(1.0), name


# ---------------------------------------------------------------------------
# Determinism
# ---------------------------------------------------------------------------


def test_determinism_across_thread_counts(tmp_path):
    outputs = []
    for threads in (1, 2, 4, 2):
        cfg = h.ExperimentConfig(
            scenario="baseline",
            scenario_params={"n": 60},
            methods=("ed+hac(ward)", "dtw(w=2)+kmedoids", "kmeans"),
            replicates=3,
            seed=SEED,
            out_dir=str(tmp_path / f"run_t{threads}_{len(outputs)}"),
            threads=threads,
        )
        path = h.execute("stage2", cfg)
        outputs.append(Path(path).read_bytes())
    assert all(blob == outputs[0] for blob in outputs[1:])


# ---------------------------------------------------------------------------
# EmulateReal self-consistency (desk-scale substitute for the real-data
# correlation study): method mean-ranks agree across disjoint replicate
# batches.
# ---------------------------------------------------------------------------


def test_emulate_real_rank_self_consistency():
    methods = (
        "ed+hac(ward)",
        "ed+hac(single)",
        "ed+kmedoids",
        "sbd+hac(ward)",
        "sbd+kmedoids",
        "dtw(w=2)+hac(ward)",
        "ksd(w=1)+kmedoids",
        "ed+genie(g=0.3)",
        "ed+birch",
        "kmeans",
        "kshape",
    )
    cfg = h.ExperimentConfig(
        scenario="emulate_real",
        methods=methods,
        replicates=60,
        seed=55,
        threads=4,
    )
    records = h.run_stage2(cfg)
    _, datasets, scores = h.score_matrix(records, "ARI")
    even = [i for i, d in enumerate(datasets) if d[1] % 2 == 0]
    odd = [i for i, d in enumerate(datasets) if d[1] % 2 == 1]
    rho, _ = correlation(mean_ranks(scores[:, even]), mean_ranks(scores[:, odd]), "spearman")
    assert rho >= 0.8


# ---------------------------------------------------------------------------
# Figures (secondary component)
# ---------------------------------------------------------------------------


def _write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def test_figures_render_from_fixtures(tmp_path):
    figures = pytest.importorskip("smtsbench.figures")

    heat = tmp_path / "heatmap.csv"
    _write_csv(
        heat,
        ["scenario", "method_id", "metric", "mean", "std", "n"],
        [
            ["baseline(n=100)", "ed+hac(ward)", "ARI", "0.91", "0.02", "5"],
            ["baseline(n=100)", "kmeans", "ARI", "0.78", "0.05", "5"],
            ["noise(sigma=0.2)", "ed+hac(ward)", "ARI", "0.62", "0.04", "5"],
            ["noise(sigma=0.2)", "kmeans", "ARI", "0.55", "0.06", "5"],
        ],
    )
    out = figures.render("heatmap", heat, tmp_path / "heatmap.png")
    assert out.exists() and out.stat().st_size > 0
    geo = json.loads(out.with_suffix(".json").read_text())
    assert geo["values"] == [[0.91, 0.62], [0.78, 0.55]]

    sweep = tmp_path / "sweep.csv"
    _write_csv(
        sweep,
        ["kind", "level", "method_id", "mean", "std", "n"],
        [["noise", "0.05", "kmeans", "0.9", "0.01", "5"], ["noise", "0.1", "kmeans", "0.8", "0.01", "5"]],
    )
    out = figures.render("sweep_lines", sweep, tmp_path / "sweep.png")
    assert out.exists() and out.stat().st_size > 0
    geo = json.loads(out.with_suffix(".json").read_text())
    assert geo["series"]["kmeans"]["means"] == [0.9, 0.8]

    rank = tmp_path / "rank_diagram.csv"
    _write_csv(
        rank,
        ["method_id", "mean_rank", "cliques"],
        [["a", "1.5", "0"], ["b", "2.0", "0"], ["c", "3.5", ""]],
    )
    out = figures.render("rank_diagram", rank, tmp_path / "ranks.png")
    assert out.exists() and out.stat().st_size > 0
    geo = json.loads(out.with_suffix(".json").read_text())
    assert geo["mean_ranks"] == [1.5, 2.0, 3.5]
    assert geo["cliques"][0]["members"] == ["a", "b"]

    scatter = tmp_path / "scatter.csv"
    _write_csv(
        scatter,
        ["method_id", "x", "y"],
        [["a", "0.9", "0.85"], ["b", "0.7", "0.75"], ["c", "0.5", "0.45"], ["d", "0.3", "0.4"]],
    )
    out = figures.render("scatter", scatter, tmp_path / "scatter.png")
    assert out.exists() and out.stat().st_size > 0
    geo = json.loads(out.with_suffix(".json").read_text())
    assert geo["x"] == [0.9, 0.7, 0.5, 0.3] and geo["y"] == [0.85, 0.75, 0.45, 0.4]
    r_ref, _ = correlation(geo["x"], geo["y"], "pearson")
    rho_ref, _ = correlation(geo["x"], geo["y"], "spearman")
    assert geo["annotation"] == f"r={r_ref:.3f}, rho={rho_ref:.3f}"


def test_primary_pipeline_runs_without_figures(tmp_path, monkeypatch):
    cfg = h.ExperimentConfig(
        scenario="baseline",
        scenario_params={"n": 40},
        methods=("ed+hac(ward)", "kmeans"),
        replicates=2,
        seed=SEED,
        out_dir=str(tmp_path),
        threads=2,
    )
    h.execute("stage2", cfg)
    import smtsbench.figures as figures_pkg

    monkeypatch.delattr(figures_pkg, "render")
    fig_dir = h.report(tmp_path)
    assert (fig_dir / "heatmap.csv").exists()
    assert not list(fig_dir.glob("*.png"))
