"""k-Shape: iterative refinement under shift-invariant cross-correlation
distance. Members are assigned to centroids by SBD; each centroid is the
dominant eigenvector of the shape-extraction matrix of its SBD-aligned
members. Best of 30 random initializations by total SBD."""

from __future__ import annotations

import numpy as np

from ..errors import ZeroVariance
from .partition import relabel

N_INITS = 30
MAX_ITER = 200
TOL = 1e-5


def znorm(x: np.ndarray) -> np.ndarray:
    sd = x.std(axis=-1, keepdims=True)
    if np.any(sd == 0.0):
        raise ZeroVariance("cannot z-normalize a constant series")
    return (x - x.mean(axis=-1, keepdims=True)) / sd


def _ncc_stack(x: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    """Full normalized cross-correlation, shape (n, k, 2*len-1)."""
    n_len = x.shape[1]
    fsize = 1 << (2 * n_len - 1).bit_length()
    fx = np.fft.rfft(x, fsize)
    fc = np.fft.rfft(centroids, fsize)
    cc = np.fft.irfft(fx[:, None, :] * np.conj(fc)[None, :, :], fsize)
    full = np.concatenate((cc[..., -(n_len - 1):], cc[..., :n_len]), axis=-1)
    norms = np.linalg.norm(x, axis=1)[:, None] * np.linalg.norm(centroids, axis=1)[None, :]
    norms = np.where(norms == 0.0, 1.0, norms)
    return full / norms[:, :, None]


def _assign(x: np.ndarray, centroids: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Labels, SBD to the chosen centroid, and the aligning shift."""
    ncc = _ncc_stack(x, centroids)
    best = ncc.max(axis=2)
    labels = np.argmax(best, axis=1)  # ties break at the smallest index
    dist = 1.0 - best[np.arange(len(x)), labels]
    shifts = ncc.argmax(axis=2)[np.arange(len(x)), labels] - (x.shape[1] - 1)
    return labels, dist, shifts


def _shift(row: np.ndarray, s: int) -> np.ndarray:
    out = np.zeros_like(row)
    if s >= 0:
        out[s:] = row[: len(row) - s]
    else:
        out[:s] = row[-s:]
    return out


def _extract_shape(members: np.ndarray, centroid: np.ndarray) -> np.ndarray:
    """Dominant eigenvector of the shape-extraction matrix of the members
    aligned to the current centroid."""
    if np.any(centroid):
        ncc = _ncc_stack(members, centroid[None, :])[:, 0, :]
        shifts = ncc.argmax(axis=1) - (members.shape[1] - 1)
        aligned = np.array([_shift(row, int(s)) for row, s in zip(members, shifts)])
    else:
        aligned = members
    n_len = members.shape[1]
    q = np.eye(n_len) - np.full((n_len, n_len), 1.0 / n_len)
    m = q @ (aligned.T @ aligned) @ q
    _, eigvecs = np.linalg.eigh(m)
    shape = eigvecs[:, -1]
    if float((aligned @ shape).sum()) < 0.0:
        shape = -shape
    sd = shape.std()
    return (shape - shape.mean()) / sd if sd > 0 else shape


def _run(x: np.ndarray, k: int, rng: np.random.Generator) -> tuple[np.ndarray, float]:
    n = len(x)
    labels = rng.integers(0, k, n)
    centroids = np.zeros((k, x.shape[1]))
    objective = np.inf
    for _ in range(MAX_ITER):
        for j in range(k):
            members = x[labels == j]
            if len(members) == 0:
                labels[int(rng.integers(n))] = j  # random re-seed
                members = x[labels == j]
            centroids[j] = _extract_shape(members, centroids[j])
        new_labels, dist, _ = _assign(x, centroids)
        new_objective = float(dist.sum())
        if np.array_equal(new_labels, labels) or objective - new_objective < TOL:
            labels = new_labels
            objective = min(objective, new_objective)
            break
        labels, objective = new_labels, new_objective
    return labels, objective


def kshape(series: np.ndarray, k: int, seed: int) -> np.ndarray:
    x = znorm(np.asarray(series, dtype=np.float64))
    if not 1 <= k <= len(x):
        raise ValueError(f"k {k} outside 1..{len(x)}")
    best_obj, best_labels = np.inf, None
    for init in range(N_INITS):
        rng = np.random.default_rng([seed, init])
        labels, objective = _run(x, k, rng)
        if objective < best_obj - 1e-12:
            best_obj, best_labels = objective, labels
    return relabel(best_labels)
