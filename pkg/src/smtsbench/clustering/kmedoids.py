"""Partitioning Around Medoids on a precomputed dissimilarity matrix:
k-medoids++ seeding, best-swap descent, best of 30 restarts by total
within-cluster dissimilarity to the medoid."""

from __future__ import annotations

import numpy as np

from ..core import check_dissimilarity_matrix
from .partition import relabel

N_RESTARTS = 30
MAX_ITER = 200


def _plusplus_init(matrix: np.ndarray, k: int, rng: np.random.Generator) -> list[int]:
    n = len(matrix)
    medoids = [int(rng.integers(n))]
    for _ in range(k - 1):
        d = matrix[:, medoids].min(axis=1)
        weights = d * d
        total = weights.sum()
        if total == 0.0:  # all remaining points coincide with a medoid
            candidates = [i for i in range(n) if i not in medoids]
            medoids.append(candidates[0])
            continue
        medoids.append(int(rng.choice(n, p=weights / total)))
    return medoids


def _nearest_two(matrix: np.ndarray, medoids: list[int]):
    sub = matrix[:, medoids]  # (n, k)
    order = np.argsort(sub, axis=1, kind="stable")
    n1 = order[:, 0]
    d1 = sub[np.arange(len(sub)), n1]
    d2 = sub[np.arange(len(sub)), order[:, 1]] if len(medoids) > 1 else np.full(len(sub), np.inf)
    return d1, d2, n1


def _swap_descent(matrix: np.ndarray, medoids: list[int]) -> list[int]:
    n = len(matrix)
    for _ in range(MAX_ITER):
        d1, d2, n1 = _nearest_two(matrix, medoids)
        gain = np.minimum(matrix - d1[:, None], 0.0)  # (i, h): change if i keeps its medoid
        total_gain = gain.sum(axis=0)  # over all i, per candidate h
        best = (0.0, None, None)
        for j in range(len(medoids)):
            mask = n1 == j
            # points losing medoid j move to min(second-nearest, the new h)
            reassign = (np.minimum(matrix[mask], d2[mask, None]) - d1[mask, None]).sum(axis=0)
            delta = total_gain - gain[mask].sum(axis=0) + reassign
            delta[medoids] = 0.0  # swapping in an existing medoid is a no-op
            h = int(np.argmin(delta))
            if delta[h] < best[0] - 1e-12:
                best = (float(delta[h]), j, h)
        if best[1] is None:
            break
        medoids[best[1]] = best[2]
    return medoids


def _cost(matrix: np.ndarray, medoids: list[int]) -> float:
    return float(matrix[:, medoids].min(axis=1).sum())


def kmedoids(matrix: np.ndarray, k: int, seed: int) -> np.ndarray:
    matrix = np.asarray(matrix, dtype=np.float64)
    check_dissimilarity_matrix(matrix)
    n = len(matrix)
    if not 1 <= k <= n:
        raise ValueError(f"k {k} outside 1..{n}")
    best_cost, best_medoids = np.inf, None
    for restart in range(N_RESTARTS):
        rng = np.random.default_rng([seed, restart])
        medoids = _swap_descent(matrix, _plusplus_init(matrix, k, rng))
        cost = _cost(matrix, medoids)
        if cost < best_cost - 1e-12 or (
            abs(cost - best_cost) <= 1e-12 and best_medoids is not None and sorted(medoids) < sorted(best_medoids)
        ):
            best_cost, best_medoids = cost, medoids
    labels = np.argmin(matrix[:, best_medoids], axis=1)
    return relabel(labels)
