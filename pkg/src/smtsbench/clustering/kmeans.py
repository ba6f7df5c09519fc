"""Lloyd's k-means with k-means++ starts: best of 30 initializations by
within-cluster sum of squares, convergence when every center moves less than
1e-5, empty clusters re-seeded at the point farthest from its center."""

from __future__ import annotations

import numpy as np
from scipy.spatial.distance import cdist

from .partition import relabel

N_INITS = 30
MAX_ITER = 200
TOL = 1e-5


def _plusplus_centers(x: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = len(x)
    centers = [x[int(rng.integers(n))]]
    for _ in range(k - 1):
        d2 = cdist(x, np.array(centers)).min(axis=1) ** 2
        total = d2.sum()
        if total == 0.0:
            centers.append(x[int(rng.integers(n))])
            continue
        centers.append(x[int(rng.choice(n, p=d2 / total))])
    return np.array(centers)


def _lloyd(x: np.ndarray, centers: np.ndarray, history: list | None = None) -> tuple[np.ndarray, float]:
    for _ in range(MAX_ITER):
        dist = cdist(x, centers)
        labels = np.argmin(dist, axis=1)
        if history is not None:
            history.append(float((dist[np.arange(len(x)), labels] ** 2).sum()))
        new_centers = centers.copy()
        for j in range(len(centers)):
            members = x[labels == j]
            if len(members) == 0:
                # re-seed at the point farthest from its assigned center
                farthest = int(np.argmax(dist[np.arange(len(x)), labels]))
                new_centers[j] = x[farthest]
                labels[farthest] = j
            else:
                new_centers[j] = members.mean(axis=0)
        shift = np.sqrt(((new_centers - centers) ** 2).sum(axis=1)).max()
        centers = new_centers
        if shift < TOL:
            break
    dist = cdist(x, centers)
    labels = np.argmin(dist, axis=1)
    wcss = float((dist[np.arange(len(x)), labels] ** 2).sum())
    return labels, wcss


def kmeans(vectors: np.ndarray, k: int, seed: int) -> np.ndarray:
    x = np.asarray(vectors, dtype=np.float64)
    if not 1 <= k <= len(x):
        raise ValueError(f"k {k} outside 1..{len(x)}")
    best_wcss, best_labels = np.inf, None
    for init in range(N_INITS):
        rng = np.random.default_rng([seed, init])
        labels, wcss = _lloyd(x, _plusplus_centers(x, k, rng))
        if wcss < best_wcss - 1e-12:
            best_wcss, best_labels = wcss, labels
    return relabel(best_labels)
