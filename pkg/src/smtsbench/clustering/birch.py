"""BIRCH: CF-tree compression of the vectors to leaf subcluster centroids
(scikit-learn's tree), then global HAC-Ward over the centroids. If the tree
yields fewer leaf entries than k the threshold is divided by 10 and the tree
rebuilt; after 10 reductions the data are considered pathological."""

from __future__ import annotations

import warnings

import numpy as np
from scipy.spatial.distance import cdist, squareform, pdist
from sklearn.cluster import Birch as _SkBirch

from ..errors import ThresholdUnderflow
from .hac import hac
from .partition import relabel

_MAX_REDUCTIONS = 10


def birch(vectors: np.ndarray, k: int, branching: int = 50, tau0: float = 0.1) -> np.ndarray:
    x = np.asarray(vectors, dtype=np.float64)
    if not 1 <= k <= len(x):
        raise ValueError(f"k {k} outside 1..{len(x)}")
    tau = tau0
    centers = None
    for _ in range(_MAX_REDUCTIONS + 1):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            tree = _SkBirch(threshold=tau, branching_factor=branching, n_clusters=None).fit(x)
        centers = tree.subcluster_centers_
        if len(centers) >= k:
            break
        tau /= 10.0
    else:
        raise ThresholdUnderflow(
            f"CF tree still has fewer than {k} leaf entries after {_MAX_REDUCTIONS} threshold reductions"
        )
    center_labels = hac("ward", squareform(pdist(centers), checks=False), k)
    nearest_center = np.argmin(cdist(x, centers), axis=1)
    labels = center_labels[nearest_center]
    # nearest-centroid reassignment can empty a global cluster; repair by
    # pulling in the point closest to that cluster's centroids
    for j in range(k):
        if not np.any(labels == j):
            dist_j = cdist(x, centers[center_labels == j]).min(axis=1)
            labels[int(np.argmin(dist_j))] = j
    return relabel(labels)
