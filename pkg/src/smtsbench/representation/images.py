"""Gramian angular field and Markov transition field image features.

Both return the flattened (row-major) n_i x n_i image of a single series.
"""

from __future__ import annotations

import numpy as np

from .linear import paa
from .sax import _breakpoints

GAF_TYPES = ("summation", "difference")


def _segments(n: int, n_i: int) -> list[np.ndarray]:
    return np.array_split(np.arange(n), n_i)


def _paa_to(x: np.ndarray, n_i: int) -> np.ndarray:
    return np.array([x[seg].mean() for seg in _segments(len(x), n_i)])


def gaf(n_i: int, gaf_type: str, x) -> np.ndarray:
    """Gramian angular field: polar encoding of the [-1, 1]-rescaled series."""
    if gaf_type not in GAF_TYPES:
        raise ValueError(f"unknown GAF type {gaf_type!r}; expected one of {GAF_TYPES}")
    x = np.asarray(x, dtype=np.float64)
    if not 2 <= n_i <= len(x):
        raise ValueError(f"image size {n_i} outside 2..{len(x)}")
    z = _paa_to(x, n_i)
    lo, hi = z.min(), z.max()
    # constant series map to 1 (angle 0), giving the all-ones summation image
    scaled = np.ones_like(z) if hi == lo else 2.0 * (z - lo) / (hi - lo) - 1.0
    scaled = np.clip(scaled, -1.0, 1.0)
    phi = np.arccos(scaled)
    if gaf_type == "summation":
        image = np.cos(phi[:, None] + phi[None, :])
    else:
        image = np.sin(phi[:, None] - phi[None, :])
    return image.reshape(-1)


def _mtf_bins(n_b: int, strategy: str, x: np.ndarray) -> np.ndarray:
    edges = _breakpoints(n_b, strategy, x)
    return np.searchsorted(edges, x, side="right")


def mtf_transition_matrix(n_b: int, strategy: str, x) -> np.ndarray:
    """Symbolize x and estimate the Markov transition matrix over consecutive
    symbols: rows sum to 1 (rows never visited stay uniform)."""
    x = np.asarray(x, dtype=np.float64)
    bins = _mtf_bins(n_b, strategy, x)
    w = np.zeros((n_b, n_b))
    for a, b in zip(bins[:-1], bins[1:]):
        w[a, b] += 1.0
    sums = w.sum(axis=1, keepdims=True)
    with np.errstate(invalid="ignore"):
        w = np.where(sums > 0, w / np.where(sums == 0, 1.0, sums), 1.0 / n_b)
    return w


def mtf(n_i: int, n_b: int, strategy: str, x) -> np.ndarray:
    """Markov transition field, average-pooled to n_i x n_i and flattened."""
    x = np.asarray(x, dtype=np.float64)
    if not 2 <= n_i <= len(x):
        raise ValueError(f"image size {n_i} outside 2..{len(x)}")
    w = mtf_transition_matrix(n_b, strategy, x)
    bins = _mtf_bins(n_b, strategy, x)
    field = w[bins[:, None], bins[None, :]]
    segs = _segments(len(x), n_i)
    pooled = np.empty((n_i, n_i))
    for i, si in enumerate(segs):
        for j, sj in enumerate(segs):
            pooled[i, j] = field[np.ix_(si, sj)].mean()
    return pooled.reshape(-1)
