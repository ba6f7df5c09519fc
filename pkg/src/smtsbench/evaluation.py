"""Leave-one-out 1NN scoring and external validity indices (ARI, AMI,
1-NVD, PSI), outlier filtering, and conflict-tag confusion aggregation."""

from __future__ import annotations

import numpy as np
from scipy.optimize import linear_sum_assignment
from sklearn.metrics import adjusted_mutual_info_score, adjusted_rand_score

from .core import OUTLIER_LABEL, check_dissimilarity_matrix
from .errors import EmptyInput, LengthMismatch


def _check_pair(p, g) -> tuple[np.ndarray, np.ndarray]:
    p = np.asarray(p, dtype=np.int64)
    g = np.asarray(g, dtype=np.int64)
    if p.shape != g.shape:
        raise LengthMismatch(f"label vectors differ in length: {p.shape} vs {g.shape}")
    if p.size == 0:
        raise EmptyInput("cannot score empty label vectors")
    return p, g


def loo_1nn(matrix: np.ndarray, labels) -> dict:
    """Leave-one-out 1NN accuracy; nearest-neighbor ties break at the
    smallest index. Returns {"overall": acc, "per_cluster": {label: acc}}."""
    matrix = np.asarray(matrix, dtype=np.float64)
    check_dissimilarity_matrix(matrix)
    labels = np.asarray(labels, dtype=np.int64)
    if len(labels) != len(matrix):
        raise LengthMismatch(f"{len(labels)} labels for a {len(matrix)}-point matrix")
    if len(labels) < 2:
        raise EmptyInput("leave-one-out needs at least two points")
    work = matrix.copy()
    np.fill_diagonal(work, np.inf)
    nearest = np.argmin(work, axis=1)  # argmin returns the smallest tied index
    hits = labels[nearest] == labels
    per_cluster = {
        int(lab): float(hits[labels == lab].mean()) for lab in np.unique(labels)
    }
    return {"overall": float(hits.mean()), "per_cluster": per_cluster}


def contingency(p: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Contingency table n_ij = |cluster i of p ∩ cluster j of g|."""
    pi = np.unique(p, return_inverse=True)[1]
    gi = np.unique(g, return_inverse=True)[1]
    table = np.zeros((pi.max() + 1, gi.max() + 1), dtype=np.int64)
    np.add.at(table, (pi, gi), 1)
    return table


def ari(p, g) -> float:
    """Adjusted Rand index (pair counting, hypergeometric expectation)."""
    p, g = _check_pair(p, g)
    return float(adjusted_rand_score(g, p))


def ami(p, g) -> float:
    """Adjusted mutual information, arithmetic-mean normalization."""
    p, g = _check_pair(p, g)
    return float(adjusted_mutual_info_score(g, p, average_method="arithmetic"))


def one_minus_nvd(p, g) -> float:
    """1 minus the normalized van Dongen distance."""
    p, g = _check_pair(p, g)
    table = contingency(p, g)
    n = len(p)
    nvd = (2 * n - table.max(axis=1).sum() - table.max(axis=0).sum()) / (2 * n)
    return float(1.0 - nvd)


def psi(p, g) -> float:
    """Pair sets index: Hungarian-matched cluster similarity with a
    pessimistic (sorted-sizes) chance correction.

    S sums s_ij = n_ij / max(|p_i|, |g_j|) over the maximizing one-to-one
    matching; its expectation pairs the size lists sorted descending;
    the result is (S - E) / (max(k_p, k_g) - E), clamped at 0.
    """
    p, g = _check_pair(p, g)
    table = contingency(p, g).astype(np.float64)
    sizes_p = table.sum(axis=1)
    sizes_g = table.sum(axis=0)
    sim = table / np.maximum(sizes_p[:, None], sizes_g[None, :])
    rows, cols = linear_sum_assignment(sim, maximize=True)
    s = float(sim[rows, cols].sum())
    sp = np.sort(sizes_p)[::-1]
    sg = np.sort(sizes_g)[::-1]
    m = min(len(sp), len(sg))
    expected = float((sp[:m] * sg[:m] / (len(p) * np.maximum(sp[:m], sg[:m]))).sum())
    denom = max(len(sizes_p), len(sizes_g)) - expected
    if denom <= 0.0:
        return 1.0  # both partitions all-singletons of one cluster
    return float(max(0.0, (s - expected) / denom))


EVI_FUNCS = {"ari": ari, "ami": ami, "one_minus_nvd": one_minus_nvd, "psi": psi}


def filter_outliers(labels, partition) -> tuple[np.ndarray, np.ndarray]:
    """Drop positions whose true label marks an outlier from both vectors."""
    labels = np.asarray(labels, dtype=np.int64)
    partition = np.asarray(partition, dtype=np.int64)
    if labels.shape != partition.shape:
        raise LengthMismatch(f"label vectors differ in length: {labels.shape} vs {partition.shape}")
    keep = labels != OUTLIER_LABEL
    return labels[keep], partition[keep]


def confusion_matrix(truth, pred, k: int) -> np.ndarray:
    """Counts[t, p] over true label t and predicted label p, both < k."""
    truth = np.asarray(truth, dtype=np.int64)
    pred = np.asarray(pred, dtype=np.int64)
    table = np.zeros((k, k), dtype=np.int64)
    np.add.at(table, (truth, pred), 1)
    return table


def confusion_by_conflict(confusion: np.ndarray, conflict_map) -> dict[str, float]:
    """Aggregate off-diagonal confusion mass per conflict tag of each cluster
    pair. A pair carrying several tags contributes its full mass to each of
    them (documented multi-tag counting); pairs with no tags land in
    "Untagged" so the buckets jointly account for every error."""
    confusion = np.asarray(confusion, dtype=np.float64)
    n = len(confusion)
    mass: dict[str, float] = {"Untagged": 0.0}
    for a in range(n):
        for b in range(a + 1, n):
            pair_mass = float(confusion[a, b] + confusion[b, a])
            if pair_mass == 0.0:
                continue
            tags = conflict_map.tags(a, b)
            if not tags:
                mass["Untagged"] += pair_mass
            for tag in tags:
                mass[tag] = mass.get(tag, 0.0) + pair_mass
    return mass
