"""Generator and scenario oracles: recurrence algebra, frequency checks,
near-zero-noise separability, and scenario composition rules."""

import numpy as np
import pytest

from smtsbench import CURVE_LEN, OUTLIER_LABEL, SeedSpec, make_rng
from smtsbench.errors import InvalidScenarioParams, SpecOutOfBounds
from smtsbench.synthgen import (
    CONFLICT_CATEGORIES,
    N_CLUSTERS,
    GaussianPeak,
    ScenarioSpec,
    ShapeSpec,
    StarParams,
    build_scenario,
    conflict_map,
    downsample_and_normalize,
    draw_outlier_spec,
    gen_characteristic_curve,
    gen_dlp,
    gen_outlier,
    load_catalogue,
    separation_dataset,
    simulate_star,
)
from smtsbench.synthgen.generator import OUTLIER_PEAK_COUNTS, OUTLIER_PEAK_PROBS


def _loo_1nn_accuracy_ed(series, labels):
    d = np.sqrt(((series[:, None, :] - series[None, :, :]) ** 2).sum(-1))
    np.fill_diagonal(d, np.inf)
    return float((labels[d.argmin(axis=1)] == labels).mean())


class TestCharacteristicCurve:
    def test_zero_components_is_constant_zero(self):
        spec = ShapeSpec(cluster_id=0, components=(), base=0.0)
        curve = gen_characteristic_curve(spec, make_rng(0))
        np.testing.assert_array_equal(curve, np.zeros(CURVE_LEN))

    def test_single_peak_max_at_location(self):
        spec = ShapeSpec(0, (GaussianPeak((12.0, 12.0), (1.0, 1.0), 0.8),))
        curve = gen_characteristic_curve(spec, make_rng(0))
        assert curve.argmax() == 240  # hour 12 on the 480-point day grid
        assert curve.max() == pytest.approx(0.8)

    def test_fixed_seed_reproduces(self):
        spec = load_catalogue()[4]
        a = gen_characteristic_curve(spec, make_rng(SeedSpec(9, ("c",))))
        b = gen_characteristic_curve(spec, make_rng(SeedSpec(9, ("c",))))
        np.testing.assert_array_equal(a, b)

    def test_bounds(self):
        for cid, spec in load_catalogue().items():
            curve = gen_characteristic_curve(spec, make_rng(cid))
            assert curve.min() >= 0.0 and curve.max() <= 1.0
            assert curve.shape == (CURVE_LEN,)

    def test_excessive_clipping_raises(self):
        spec = ShapeSpec(0, (GaussianPeak((12.0, 12.0), (3.0, 3.0), 3.0),))
        with pytest.raises(SpecOutOfBounds):
            gen_characteristic_curve(spec, make_rng(0))


class TestStarRecurrence:
    def test_degenerate_recurrence_returns_curve(self):
        # theta1 = theta2 = 0 and zero noise reduce the recurrence to Y_t = C_t
        curve = gen_characteristic_curve(load_catalogue()[2], make_rng(1))
        p = StarParams(theta1=0.0, theta2=0.0, sigma_l=0.0, sigma_h=0.0)
        y = simulate_star(curve, p, "low", make_rng(1))
        np.testing.assert_allclose(y[1:], curve[1:])

    def test_zero_curve_is_ar1(self):
        # with C == 0 the recurrence is AR(1) with coefficient -0.1; the
        # pooled lag-1 autocorrelation over ~1.2e5 points must match
        curve = np.zeros(CURVE_LEN)
        p = StarParams()
        rng = make_rng(SeedSpec(3, ("ar1",)))
        num = den = 0.0
        for _ in range(250):
            y = simulate_star(curve, p, "low", rng)
            y = y - y.mean()
            num += (y[1:] * y[:-1]).sum()
            den += (y * y).sum()
        assert num / den == pytest.approx(-0.1, abs=0.01)

    def test_fixed_seed_reproduces(self):
        curve = gen_characteristic_curve(load_catalogue()[0], make_rng(5))
        a = simulate_star(curve, StarParams(), "low", make_rng(SeedSpec(5, ("s",))))
        b = simulate_star(curve, StarParams(), "low", make_rng(SeedSpec(5, ("s",))))
        np.testing.assert_array_equal(a, b)

    def test_y0_modes_differ_in_start(self):
        curve = np.zeros(CURVE_LEN)
        lows = [simulate_star(curve, StarParams(), "low", make_rng(i))[0] for i in range(50)]
        highs = [simulate_star(curve, StarParams(), "high", make_rng(i))[0] for i in range(50)]
        assert np.mean(lows) == pytest.approx(0.0, abs=0.1)
        assert np.mean(highs) == pytest.approx(1.5, abs=0.1)


class TestDownsample:
    def test_ramp_closed_form(self):
        # for a pure ramp every offset yields the same normalized output
        y = np.arange(CURVE_LEN, dtype=float)
        out = downsample_and_normalize(y, make_rng(0))
        np.testing.assert_allclose(out, np.arange(48) * 10 / 470.0)

    def test_offset_frequencies(self):
        # identify the drawn offset by matching against the 10 candidates
        y = np.arange(CURVE_LEN, dtype=float) ** 2
        candidates = [tuple(np.round((y[u::10][:48] - u * u) / (y[u::10][47] - u * u), 12)) for u in range(10)]
        rng = make_rng(SeedSpec(11, ("u-freq",)))
        counts = np.zeros(10)
        n = 100_000
        for _ in range(n):
            out = downsample_and_normalize(y, rng)
            counts[candidates.index(tuple(np.round(out, 12)))] += 1
        np.testing.assert_allclose(counts / n, 0.1, atol=0.004)

    def test_fixed_seed_reproduces(self):
        y = make_rng(1).normal(size=CURVE_LEN)
        a = downsample_and_normalize(y, make_rng(SeedSpec(2, ("d",))))
        b = downsample_and_normalize(y, make_rng(SeedSpec(2, ("d",))))
        np.testing.assert_array_equal(a, b)


class TestGenDlp:
    def test_invariants_and_determinism(self):
        for cid in range(N_CLUSTERS):
            a = gen_dlp(cid, 0.12, 0.1, make_rng(SeedSpec(7, ("dlp", cid))))
            b = gen_dlp(cid, 0.12, 0.1, make_rng(SeedSpec(7, ("dlp", cid))))
            np.testing.assert_array_equal(a, b)
            assert a.shape == (48,)
            assert a.min() == 0.0 and a.max() == 1.0

    def test_near_zero_noise_loo_accuracy_is_one(self):
        ds = build_scenario(
            ScenarioSpec("baseline", {"n": 400, "sigma": 0.001, "assignment": "exact"}),
            make_rng(SeedSpec(0, ("oracle", "loo"))),
        )
        assert _loo_1nn_accuracy_ed(ds.series, ds.labels) == 1.0

    def test_near_zero_noise_pairwise_separation(self):
        # mean within-cluster ED below mean cross-cluster ED for every pair
        rng = make_rng(SeedSpec(7, ("oracle", "pairs")))
        draws = {c: np.array([gen_dlp(c, 0.001, 0.001, rng) for _ in range(40)]) for c in range(N_CLUSTERS)}
        for a in range(N_CLUSTERS):
            da = np.sqrt(((draws[a][:, None] - draws[a][None]) ** 2).sum(-1))
            within = da[np.triu_indices(40, 1)].mean()
            for b in range(N_CLUSTERS):
                if b == a:
                    continue
                cross = np.sqrt(((draws[a][:, None] - draws[b][None]) ** 2).sum(-1)).mean()
                assert within < cross, (a, b)


class TestGenOutlier:
    def test_fixed_seed_reproduces(self):
        a = gen_outlier(make_rng(SeedSpec(1, ("o",))))
        b = gen_outlier(make_rng(SeedSpec(1, ("o",))))
        np.testing.assert_array_equal(a, b)
        assert a.min() == 0.0 and a.max() == 1.0

    def test_peak_count_frequencies(self):
        rng = make_rng(SeedSpec(2, ("o-freq",)))
        counts = {k: 0 for k in OUTLIER_PEAK_COUNTS}
        n = 10_000
        for _ in range(n):
            spec = draw_outlier_spec(rng)
            n_peaks = sum(isinstance(c, GaussianPeak) for c in spec.components)
            counts[n_peaks] += 1
        for k, p in zip(OUTLIER_PEAK_COUNTS, OUTLIER_PEAK_PROBS):
            assert counts[k] / n == pytest.approx(p, abs=0.02)


class TestScenarios:
    def test_baseline_uniform(self):
        ds = build_scenario(ScenarioSpec("baseline", {"n": 1000}), make_rng(0))
        ds.validate()
        assert len(ds) == 1000
        assert set(np.unique(ds.labels)) <= set(range(N_CLUSTERS))

    def test_regeneration_is_bit_identical(self):
        spec = ScenarioSpec("balance", {"mode": "dominant"})
        seed = SeedSpec(99, ("balance", 0))
        assert build_scenario(spec, make_rng(seed)) == build_scenario(spec, make_rng(seed))

    def test_balance_rare(self):
        ds = build_scenario(ScenarioSpec("balance", {"mode": "rare"}), make_rng(3))
        sizes = np.bincount(ds.labels, minlength=N_CLUSTERS)
        assert len(ds) == 1000
        assert (sizes == 5).sum() == 1
        assert np.all(sizes[sizes != 5] >= 10)

    def test_balance_dominant(self):
        ds = build_scenario(ScenarioSpec("balance", {"mode": "dominant"}), make_rng(4))
        sizes = np.bincount(ds.labels, minlength=N_CLUSTERS)
        assert len(ds) == 1000
        assert (sizes == 500).sum() == 1
        assert np.all(sizes[sizes != 500] >= 10)

    def test_kcount(self):
        ds = build_scenario(ScenarioSpec("kcount", {"k": 8}), make_rng(5))
        ds.validate()
        assert len(ds) == 400
        assert len(np.unique(ds.labels)) == 8
        assert len(ds.meta["selected_clusters"]) == 8

    def test_outliers_sum_exact(self):
        ds = build_scenario(ScenarioSpec("outliers", {"n_outliers": 250}), make_rng(6))
        assert len(ds) == 1250
        assert (ds.labels == OUTLIER_LABEL).sum() == 250

    def test_emulate_real_composition(self):
        ds = build_scenario(ScenarioSpec("emulate_real", {}), make_rng(7))
        ds.validate()
        assert len(ds) == 365
        assert (ds.labels == OUTLIER_LABEL).sum() == 97
        sizes = np.bincount(ds.labels[ds.labels >= 0], minlength=16)
        assert sizes.sum() == 268
        assert len(sizes) == 16 and np.all(sizes > 0)
        assert ds.meta["sigma_l"] == 0.105

    def test_invalid_params_raise(self):
        with pytest.raises(InvalidScenarioParams):
            build_scenario(ScenarioSpec("noise", {"sigma": 0.17}), make_rng(0))
        with pytest.raises(InvalidScenarioParams):
            build_scenario(ScenarioSpec("size", {"n": 123}), make_rng(0))
        with pytest.raises(InvalidScenarioParams):
            build_scenario(ScenarioSpec("nope", {}), make_rng(0))
        with pytest.raises(InvalidScenarioParams):
            separation_dataset("timing", 2.07, make_rng(0))


class TestSeparation:
    def test_level_zero_is_indistinguishable(self):
        accs = [
            _loo_1nn_accuracy_ed(d.series, d.labels)
            for d in (separation_dataset("timing", 0.0, make_rng(SeedSpec(i, ("sep0",)))) for i in range(10))
        ]
        assert 0.3 < np.mean(accs) < 0.7

    def test_magnitude_level_100_specs_identical(self):
        ds = separation_dataset("magnitude", 100, make_rng(8))
        ds.validate()
        assert len(ds) == 100 and np.bincount(ds.labels).tolist() == [50, 50]

    def test_timing_five_hours_separates(self):
        accs = [
            _loo_1nn_accuracy_ed(d.series, d.labels)
            for d in (separation_dataset("timing", 5.0, make_rng(SeedSpec(i, ("sep5",)))) for i in range(5))
        ]
        assert np.mean(accs) > 0.99


class TestConflictMap:
    def test_symmetric_lookup(self):
        cm = conflict_map()
        for (a, b), tags in cm.pairs().items():
            assert cm.tags(a, b) == cm.tags(b, a) == tags

    def test_pair_5_7_relative_magnitude(self):
        assert "RelativeMagnitude" in conflict_map().tags(5, 7)

    def test_tags_in_categories(self):
        for tags in conflict_map().pairs().values():
            assert tags <= CONFLICT_CATEGORIES
