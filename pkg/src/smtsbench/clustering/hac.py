"""Agglomerative hierarchical clustering on a precomputed dissimilarity
matrix via Lance-Williams updates (scipy linkage), cut to exactly k clusters.

Ward uses scipy's recurrence, which applies the Lance-Williams Ward update to
squared dissimilarities and reports square-rooted merge heights; the merge
order is therefore that of Ward-on-squared-entries.
"""

from __future__ import annotations

import numpy as np
from scipy.cluster.hierarchy import cut_tree, linkage
from scipy.spatial.distance import squareform

from ..core import check_dissimilarity_matrix
from .partition import HAC_LINKAGES, relabel


def hac(linkage_name: str, matrix: np.ndarray, k: int) -> np.ndarray:
    if linkage_name not in HAC_LINKAGES:
        raise ValueError(f"unknown linkage {linkage_name!r}; expected one of {HAC_LINKAGES}")
    matrix = np.asarray(matrix, dtype=np.float64)
    check_dissimilarity_matrix(matrix)
    n = len(matrix)
    if not 1 <= k <= n:
        raise ValueError(f"k {k} outside 1..{n}")
    condensed = squareform(matrix, checks=False)
    tree = linkage(condensed, method=linkage_name)
    return relabel(cut_tree(tree, n_clusters=k).ravel())
