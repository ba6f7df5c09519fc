"""Piecewise aggregate approximation and principal component analysis."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from ..errors import DegenerateCovariance


def paa(w: int, x) -> np.ndarray:
    """Means over consecutive windows of width w; a trailing partial window
    is averaged over its actual length."""
    x = np.asarray(x, dtype=np.float64)
    if not 1 <= w <= len(x):
        raise ValueError(f"window {w} outside 1..{len(x)}")
    bounds = np.append(np.arange(0, len(x), w), len(x))
    return np.array([x[a:b].mean() for a, b in zip(bounds[:-1], bounds[1:])])


@dataclass(frozen=True)
class PcaModel:
    mean: np.ndarray
    components: np.ndarray  # (n_c, n_features), rows = eigenvectors
    explained_variance: np.ndarray
    degenerate: bool  # True when requested components exceeded matrix rank


def pca_fit(series: np.ndarray, n_c: int) -> PcaModel:
    """Top-n_c eigenvectors of the sample covariance of mean-centered rows."""
    x = np.asarray(series, dtype=np.float64)
    n, p = x.shape
    if n_c > p:
        raise ValueError(f"n_c {n_c} exceeds feature count {p}")
    if n < n_c:
        raise ValueError(f"dataset size {n} below n_c {n_c}")
    mean = x.mean(axis=0)
    cov = np.cov(x - mean, rowvar=False)
    eigvals, eigvecs = np.linalg.eigh(cov)
    order = np.argsort(eigvals)[::-1]
    eigvals = np.maximum(eigvals[order], 0.0)
    eigvecs = eigvecs[:, order]
    # deterministic sign: largest-magnitude entry of each component positive
    for i in range(eigvecs.shape[1]):
        j = np.argmax(np.abs(eigvecs[:, i]))
        if eigvecs[j, i] < 0:
            eigvecs[:, i] = -eigvecs[:, i]
    rank = int((eigvals > max(eigvals.max(), 1.0) * 1e-12).sum())
    degenerate = rank < n_c
    if degenerate:
        warnings.warn(
            DegenerateCovariance(f"covariance rank {rank} below requested {n_c} components").args[0],
            stacklevel=2,
        )
    return PcaModel(
        mean=mean,
        components=eigvecs[:, :n_c].T.copy(),
        explained_variance=eigvals[:n_c],
        degenerate=degenerate,
    )


def pca_apply(model: PcaModel, x) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    return (x - model.mean) @ model.components.T
