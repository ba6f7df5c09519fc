"""Symbolic aggregate approximation at full series length and its distances.

Strings are integer rank vectors (0..n_b-1), one symbol per sample. Binning
strategies: "quantile" (per-series empirical quantiles), "uniform" (equal
widths on [0, 1]), "normal" (Gaussian breakpoints applied to the per-series
standardized values). MINDIST uses the standard Gaussian breakpoint table
(derivable from n_b alone) and, with the symbol count equal to the series
length, a scaling constant of exactly 1.
"""

from __future__ import annotations

import functools
import json
from importlib import resources

import numpy as np

from ..errors import LengthMismatch, ZeroVariance

STRATEGIES = ("quantile", "uniform", "normal")
DISTANCES = ("mindist", "lcss", "lev", "vlev")


@functools.cache
def _normal_breakpoints(n_b: int) -> np.ndarray:
    # frozen Gaussian breakpoint tables (versioned data file)
    text = resources.files("smtsbench.data").joinpath("sax_normal_breakpoints.json").read_text()
    tables = json.loads(text)["breakpoints"]
    return np.array(tables[str(n_b)])


def _breakpoints(n_b: int, strategy: str, x: np.ndarray) -> np.ndarray:
    q = np.arange(1, n_b) / n_b
    if strategy == "quantile":
        return np.quantile(x, q)
    if strategy == "uniform":
        return q  # equal widths on the normalized [0, 1] range
    if strategy == "normal":
        return _normal_breakpoints(n_b)
    raise ValueError(f"unknown binning strategy {strategy!r}; expected one of {STRATEGIES}")


def sax(n_b: int, strategy: str, x) -> np.ndarray:
    """Symbolize one series; returns int ranks of length len(x)."""
    if not 2 <= n_b <= 26:
        raise ValueError(f"alphabet size {n_b} outside 2..26")
    x = np.asarray(x, dtype=np.float64)
    if strategy == "normal":
        sd = x.std()
        if sd == 0.0:
            raise ZeroVariance("cannot standardize a constant series")
        x = (x - x.mean()) / sd
    edges = _breakpoints(n_b, strategy, x)
    return np.searchsorted(edges, x, side="right").astype(np.int64)


def _gaussian_gap_table(n_b: int) -> np.ndarray:
    beta = _normal_breakpoints(n_b)
    table = np.zeros((n_b, n_b))
    for i in range(n_b):
        for j in range(n_b):
            if abs(i - j) > 1:
                table[i, j] = beta[max(i, j) - 1] - beta[min(i, j)]
    return table


def _levenshtein(a: np.ndarray, b: np.ndarray, sub_cost) -> float:
    n, m = len(a), len(b)
    d = np.zeros((n + 1, m + 1))
    d[:, 0] = np.arange(n + 1)
    d[0, :] = np.arange(m + 1)
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            d[i, j] = min(
                d[i - 1, j - 1] + sub_cost(a[i - 1], b[j - 1]),
                d[i - 1, j] + 1.0,
                d[i, j - 1] + 1.0,
            )
    return float(d[n, m])


def _lcs_length(a: np.ndarray, b: np.ndarray) -> int:
    n, m = len(a), len(b)
    length = np.zeros((n + 1, m + 1), dtype=np.int64)
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            if a[i - 1] == b[j - 1]:
                length[i, j] = length[i - 1, j - 1] + 1
            else:
                length[i, j] = max(length[i - 1, j], length[i, j - 1])
    return int(length[n, m])


def sax_distance(kind: str, a, b, n_b: int) -> float:
    """Distance between two SAX strings: "mindist", "lcss", "lev", "vlev"."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.shape != b.shape:
        raise LengthMismatch(f"string lengths differ: {a.shape} vs {b.shape}")
    if kind == "mindist":
        table = _gaussian_gap_table(n_b)
        cells = table[a, b]
        # symbol count equals series length here, so sqrt(n / w) == 1
        return float(np.sqrt((cells**2).sum()))
    if kind == "lev":
        return _levenshtein(a, b, lambda p, q: 0.0 if p == q else 1.0)
    if kind == "vlev":
        return _levenshtein(a, b, lambda p, q: abs(p - q) / (n_b - 1))
    if kind == "lcss":
        return 1.0 - _lcs_length(a, b) / len(a)
    raise ValueError(f"unknown SAX distance {kind!r}; expected one of {DISTANCES}")
