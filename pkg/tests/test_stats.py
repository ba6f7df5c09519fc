"""Oracles for the rank-comparison machinery."""

import itertools

import numpy as np
import pytest

from smtsbench.errors import DegenerateRanks, TooFewPairs, ZeroVariance
from smtsbench.stats import (
    bonferroni,
    cliques,
    correlation,
    friedman,
    mean_ranks,
    wilcoxon_signed_rank,
)


class TestMeanRanks:
    def test_strictly_best_method_rank_one(self):
        scores = np.array([[0.9, 0.8, 0.95], [0.5, 0.4, 0.6], [0.2, 0.3, 0.1]])
        assert mean_ranks(scores)[0] == 1.0

    def test_tied_methods_share_average_rank(self):
        scores = np.array([[0.5, 0.5], [0.5, 0.5], [0.1, 0.1]])
        np.testing.assert_allclose(mean_ranks(scores), [1.5, 1.5, 3.0])

    def test_three_by_three_hand_fixture(self):
        # dataset 1 ranks: A=1 B=2 C=3; dataset 2: B=1 C=2 A=3; dataset 3: A=1 C=2 B=3
        scores = np.array(
            [
                [0.9, 0.1, 0.8],
                [0.5, 0.9, 0.2],
                [0.1, 0.5, 0.5],
            ]
        )
        np.testing.assert_allclose(mean_ranks(scores), [(1 + 3 + 1) / 3, (2 + 1 + 3) / 3, (3 + 2 + 2) / 3])


class TestFriedman:
    def test_identical_methods_no_evidence(self):
        scores = np.tile([0.4, 0.6, 0.5], (4, 1))
        stat, p = friedman(scores)
        assert stat == 0.0 and p == 1.0

    def test_textbook_fixture(self):
        # classic 3-treatment, 4-block example with no ties:
        # ranks per block are clean permutations; statistic computed by hand
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
        stat, p = friedman(scores)
        assert stat == pytest.approx(chi_hand, abs=1e-6)
        assert 0.0 < p < 0.1

    def test_dataset_order_invariance(self):
        rng = np.random.default_rng(0)
        scores = rng.random((5, 8))
        base = friedman(scores)
        shuffled = friedman(scores[:, rng.permutation(8)])
        assert base == pytest.approx(shuffled, abs=1e-12)

    def test_monotone_transform_invariance(self):
        rng = np.random.default_rng(1)
        scores = rng.random((4, 6))
        base = friedman(scores)
        transformed = friedman(np.exp(3 * scores))  # strictly monotone per-column
        assert base == pytest.approx(transformed, abs=1e-12)

    def test_identical_columns_degenerate(self):
        scores = np.tile(np.array([[0.9], [0.5], [0.1]]), (1, 6))
        with pytest.raises(DegenerateRanks):
            friedman(scores)


class TestWilcoxon:
    def test_equal_samples_p_one(self):
        a = np.array([0.1, 0.2, 0.3, 0.4, 0.5, 0.6])
        assert wilcoxon_signed_rank(a, a) == 1.0

    def test_exact_matches_exhaustive_enumeration(self):
        rng = np.random.default_rng(2)
        a = rng.random(6)
        b = rng.random(6)
        diff = a - b
        ranks_abs = np.argsort(np.argsort(np.abs(diff))) + 1.0
        w_obs = ranks_abs[diff > 0].sum()
        mean_w = ranks_abs.sum() / 2
        count = sum(
            1
            for signs in itertools.product([0, 1], repeat=6)
            if abs(np.dot(signs, ranks_abs) - mean_w) >= abs(w_obs - mean_w) - 1e-12
        )
        assert wilcoxon_signed_rank(a, b) == pytest.approx(count / 64, abs=1e-12)

    def test_exact_vs_approx_agree_at_boundary(self):
        # same data pushed through both branches by nudging the sample size
        rng = np.random.default_rng(3)
        for _ in range(20):
            a = rng.random(15)
            b = rng.random(15)
            exact = wilcoxon_signed_rank(a, b)
            # force the approximation on the same 15 pairs
            from smtsbench import stats as stats_mod

            orig = stats_mod.EXACT_LIMIT
            stats_mod.EXACT_LIMIT = 0
            try:
                approx = wilcoxon_signed_rank(a, b)
            finally:
                stats_mod.EXACT_LIMIT = orig
            assert abs(exact - approx) < 0.01

    def test_too_few_pairs(self):
        with pytest.raises(TooFewPairs):
            wilcoxon_signed_rank([1.0, 2.0, 3.0, 4.0], [1.0, 2.0, 3.0, 5.0])

    def test_strong_effect_small_p(self):
        a = np.arange(20, dtype=float)
        b = a + 1.0
        assert wilcoxon_signed_rank(a, b) < 0.001


class TestBonferroni:
    def test_clipped_at_one(self):
        np.testing.assert_allclose(bonferroni([0.01], m=703), [1.0])

    def test_multiplies_by_m(self):
        np.testing.assert_allclose(bonferroni([0.001, 0.01], m=10), [0.01, 0.1])

    def test_output_dominates_input(self):
        rng = np.random.default_rng(4)
        p = rng.random(20)
        adj = bonferroni(p, m=5)
        assert np.all(adj >= p) and np.all(adj <= 1.0)


class TestCliques:
    def test_fully_connected_single_clique(self):
        adj = np.ones((4, 4), dtype=bool)
        assert cliques(adj) == [(0, 1, 2, 3)]

    def test_empty_graph_singletons(self):
        adj = np.eye(3, dtype=bool)
        assert sorted(cliques(adj)) == [(0,), (1,), (2,)]

    def test_five_node_fixture_matches_bruteforce(self):
        rng = np.random.default_rng(5)
        adj = rng.random((5, 5)) < 0.5
        adj = adj | adj.T
        np.fill_diagonal(adj, True)
        found = set(cliques(adj))
        # brute force: maximal subsets whose members are pairwise connected
        all_cliques = set()
        for r in range(1, 6):
            for sub in itertools.combinations(range(5), r):
                if all(adj[a, b] for a, b in itertools.combinations(sub, 2)):
                    all_cliques.add(sub)
        maximal = {
            c for c in all_cliques
            if not any(set(c) < set(other) for other in all_cliques)
        }
        assert found == maximal

    def test_ordered_by_best_rank(self):
        adj = np.eye(4, dtype=bool)
        adj[0, 1] = adj[1, 0] = True
        adj[2, 3] = adj[3, 2] = True
        ranks = np.array([3.0, 4.0, 1.0, 2.0])
        out = cliques(adj, order=ranks)
        assert out[0] == (2, 3)


class TestCorrelation:
    def test_perfect_positive_and_negative(self):
        x = np.arange(10, dtype=float)
        r, p = correlation(x, x)
        assert r == 1.0 and p == 0.0
        r, _ = correlation(x, -x)
        assert r == -1.0

    def test_ten_point_hand_fixture(self):
        x = np.arange(10, dtype=float)
        y = np.array([1.0, 3.0, 2.0, 5.0, 4.0, 7.0, 6.0, 9.0, 8.0, 10.0])
        r, _ = correlation(x, y)
        r_hand = np.cov(x, y, bias=True)[0, 1] / (x.std() * y.std())
        assert r == pytest.approx(r_hand, abs=1e-9)
        rho, _ = correlation(x, y, kind="spearman")
        from scipy.stats import rankdata

        rx, ry = rankdata(x), rankdata(y)
        rho_hand = np.cov(rx, ry, bias=True)[0, 1] / (rx.std() * ry.std())
        assert rho == pytest.approx(rho_hand, abs=1e-9)

    def test_spearman_monotone_transform_invariance(self):
        rng = np.random.default_rng(6)
        x = rng.random(30)
        y = rng.random(30)
        base = correlation(x, y, kind="spearman")
        transformed = correlation(np.exp(x), y, kind="spearman")
        assert base == pytest.approx(transformed, abs=1e-12)

    def test_zero_variance_rejected(self):
        with pytest.raises(ZeroVariance):
            correlation(np.ones(5), np.arange(5.0))

    def test_matches_scipy_pvalues(self):
        from scipy.stats import pearsonr, spearmanr

        rng = np.random.default_rng(7)
        x = rng.random(25)
        y = x + rng.normal(0, 0.5, 25)
        r, p = correlation(x, y)
        ref = pearsonr(x, y)
        assert r == pytest.approx(ref.statistic, abs=1e-12)
        assert p == pytest.approx(ref.pvalue, abs=1e-9)
        rho, ps = correlation(x, y, kind="spearman")
        ref_s = spearmanr(x, y)
        assert rho == pytest.approx(ref_s.statistic, abs=1e-12)
