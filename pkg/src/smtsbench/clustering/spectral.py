"""Spectral clustering on a precomputed dissimilarity matrix.

Affinity is a Gaussian kernel exp(-d^2 / (2 sigma^2)). The schedule parameter
delta names a percentile of the off-diagonal dissimilarities: the kernel
width sigma is the delta-th percentile, and on a degenerate embedding delta
is incremented by 20 (20, 40, ..., 100) before giving up. This keeps the
published schedule while staying meaningful for dissimilarities of any scale.
"""

from __future__ import annotations

import numpy as np

from ..core import check_dissimilarity_matrix
from ..errors import EigenFailure
from .kmeans import kmeans
from .partition import relabel

_SCHEDULE_STEP = 20.0
_MAX_DELTA = 100.0


def _embedding(matrix: np.ndarray, k: int, delta: float) -> np.ndarray | None:
    off_diag = matrix[~np.eye(len(matrix), dtype=bool)]
    sigma = float(np.percentile(off_diag, delta))
    if sigma <= 0.0:
        return None
    affinity = np.exp(-(matrix**2) / (2.0 * sigma**2))
    degree = affinity.sum(axis=1)
    inv_sqrt = 1.0 / np.sqrt(degree)
    laplacian = np.eye(len(matrix)) - inv_sqrt[:, None] * affinity * inv_sqrt[None, :]
    try:
        eigvals, eigvecs = np.linalg.eigh(laplacian)
    except np.linalg.LinAlgError:
        return None
    rows = eigvecs[:, :k]  # k smallest-eigenvalue eigenvectors
    norms = np.sqrt((rows**2).sum(axis=1))
    if np.any(norms <= 1e-12):
        return None
    rows = rows / norms[:, None]
    if len(np.unique(np.round(rows, 10), axis=0)) < k:
        return None  # fewer distinct embedded points than clusters
    return rows


def spectral(matrix: np.ndarray, k: int, delta0: float = 20.0, *, seed: int = 0) -> np.ndarray:
    matrix = np.asarray(matrix, dtype=np.float64)
    check_dissimilarity_matrix(matrix)
    if not 1 <= k <= len(matrix):
        raise ValueError(f"k {k} outside 1..{len(matrix)}")
    delta = delta0
    while delta <= _MAX_DELTA:
        rows = _embedding(matrix, k, delta)
        if rows is not None:
            return relabel(kmeans(rows, k, seed))
        delta += _SCHEDULE_STEP
    raise EigenFailure(f"no usable spectral embedding for any kernel percentile up to {_MAX_DELTA}")
