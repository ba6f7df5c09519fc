"""Shared domain types, seeded randomness and normalization.

Daily load profiles (DLPs) are plain float64 numpy arrays of length 48
(half-hourly samples, min-max normalized to [0, 1]). Datasets bundle the
series with integer ground-truth labels where -1 marks an outlier.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

import numpy as np
from numpy.random import Generator, Philox, SeedSequence

from .errors import ConstantSeries, InvariantViolation

N_SAMPLES = 48
CURVE_LEN = 480
OUTLIER_LABEL = -1


def minmax_normalize(y) -> np.ndarray:
    """Affinely rescale ``y`` so min maps to 0 and max to 1 exactly.

    Raises ConstantSeries when max == min; the generator's additive white
    noise makes a constant input signal a bug or bad external data.
    """
    y = np.asarray(y, dtype=np.float64)
    if y.ndim != 1 or y.size < 2:
        raise ValueError("expected a 1-d sequence of length >= 2")
    lo = y.min()
    hi = y.max()
    if hi == lo:
        raise ConstantSeries(f"constant series (value={lo!r}) cannot be normalized")
    out = (y - lo) / (hi - lo)
    # guard against rounding drift at the extremes
    out[np.argmin(y)] = 0.0
    out[np.argmax(y)] = 1.0
    return out


@dataclass(frozen=True)
class SeedSpec:
    """Reproducibility contract: identical SeedSpec => bit-identical data.

    ``stream`` distinguishes independent random streams derived from one
    master seed, conventionally (scenario, dataset_index, stage).
    """

    master_seed: int
    stream: tuple = ()

    def spawn_key(self) -> tuple[int, ...]:
        digest = hashlib.sha256(repr(self.stream).encode("utf-8")).digest()
        return tuple(int.from_bytes(digest[i : i + 4], "little") for i in range(0, 16, 4))


def make_rng(seed: SeedSpec | int) -> Generator:
    """Deterministic cross-platform random stream for a SeedSpec.

    Uses the counter-based Philox generator keyed by the master seed and a
    hash of the stream tuple, so distinct streams are statistically
    independent and any stream can be regenerated in isolation.
    """
    if isinstance(seed, int):
        seed = SeedSpec(seed)
    ss = SeedSequence(entropy=seed.master_seed, spawn_key=seed.spawn_key())
    return Generator(Philox(ss))


@dataclass
class LabeledDataset:
    """Series matrix (N x 48) plus ground-truth labels and scenario metadata."""

    series: np.ndarray
    labels: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.series = np.asarray(self.series, dtype=np.float64)
        self.labels = np.asarray(self.labels, dtype=np.int64)
        if self.series.ndim != 2:
            raise InvariantViolation("series must be a 2-d array")
        if len(self.series) != len(self.labels):
            raise InvariantViolation("series / label count mismatch")

    def __len__(self) -> int:
        return len(self.series)

    @property
    def n_clusters(self) -> int:
        k = self.meta.get("k")
        if k is not None:
            return int(k)
        regular = self.labels[self.labels >= 0]
        return int(regular.max()) + 1 if regular.size else 0

    def validate(self) -> None:
        """Check the TimeSeries and label invariants, raising on violation."""
        if self.series.shape[1] != N_SAMPLES:
            raise InvariantViolation(f"series length {self.series.shape[1]} != {N_SAMPLES}")
        if not np.isfinite(self.series).all():
            raise InvariantViolation("non-finite sample values")
        mins = self.series.min(axis=1)
        maxs = self.series.max(axis=1)
        if not (np.all(mins == 0.0) and np.all(maxs == 1.0)):
            raise InvariantViolation("series are not min-max normalized")
        bad = self.labels[self.labels < OUTLIER_LABEL]
        if bad.size:
            raise InvariantViolation("labels below -1 are not allowed")
        k = self.n_clusters
        if np.any(self.labels >= k):
            raise InvariantViolation(f"label >= recorded cluster count {k}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, LabeledDataset):
            return NotImplemented
        return (
            np.array_equal(self.series, other.series)
            and np.array_equal(self.labels, other.labels)
            and _meta_key(self.meta) == _meta_key(other.meta)
        )


def _meta_key(meta: dict) -> str:
    return json.dumps(meta, sort_keys=True, default=str)


def check_dissimilarity_matrix(d: np.ndarray) -> np.ndarray:
    """Validate the DissimilarityMatrix invariants and return the array."""
    d = np.asarray(d, dtype=np.float64)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise InvariantViolation("dissimilarity matrix must be square")
    if not np.array_equal(d, d.T):
        raise InvariantViolation("dissimilarity matrix must be exactly symmetric")
    if np.any(np.diag(d) != 0.0):
        raise InvariantViolation("dissimilarity matrix diagonal must be zero")
    if np.any(d < 0.0):
        raise InvariantViolation("dissimilarity entries must be non-negative")
    return d


def check_partition(assignments: np.ndarray, k: int, n: int) -> np.ndarray:
    """Validate the Partition invariants and return the assignment vector."""
    a = np.asarray(assignments, dtype=np.int64)
    if a.shape != (n,):
        raise InvariantViolation(f"partition size {a.shape} != dataset size {n}")
    if a.size and (a.min() < 0 or a.max() >= k):
        raise InvariantViolation(f"assignment outside [0, {k})")
    return a
