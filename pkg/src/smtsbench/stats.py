"""Rank-based comparison machinery: mean ranks, Friedman test,
Wilcoxon signed-rank post-hoc with Bonferroni correction, non-significance
cliques, and correlation estimators."""

from __future__ import annotations

import itertools
import math

import numpy as np
from scipy import stats as sps

from .errors import DegenerateRanks, LengthMismatch, TooFewPairs, ZeroVariance

MIN_PAIRS = 5
EXACT_LIMIT = 15  # exact Wilcoxon null enumeration up to this many pairs


def mean_ranks(scores: np.ndarray) -> np.ndarray:
    """Mean rank per method (rows) across datasets (columns); higher score is
    better (rank 1), ties share the average rank."""
    scores = np.asarray(scores, dtype=np.float64)
    if scores.ndim != 2:
        raise ValueError("scores must be a methods x datasets matrix")
    # rankdata ranks ascending; rank descending scores by negating
    ranks = np.apply_along_axis(sps.rankdata, 0, -scores)
    return ranks.mean(axis=1)


def friedman(scores: np.ndarray) -> tuple[float, float]:
    """Tie-corrected Friedman chi-square over the methods x datasets matrix."""
    scores = np.asarray(scores, dtype=np.float64)
    k, n = scores.shape
    if k < 2 or n < 2:
        raise ValueError("need at least 2 methods and 2 datasets")
    if np.all(scores == scores[:, :1]):
        raise DegenerateRanks("every dataset produced the identical score column")
    ranks = np.apply_along_axis(sps.rankdata, 0, -scores)
    rank_sums = ranks.sum(axis=1)
    chi = 12.0 * np.sum((rank_sums - n * (k + 1) / 2.0) ** 2) / (n * k * (k + 1))
    # tie correction: 1 - sum(t^3 - t) / (n k (k^2 - 1))
    ties = 0.0
    for j in range(n):
        _, counts = np.unique(ranks[:, j], return_counts=True)
        ties += float((counts**3 - counts).sum())
    correction = 1.0 - ties / (n * k * (k**2 - 1))
    if correction <= 0.0:
        return 0.0, 1.0  # every method tied on every dataset: no evidence
    chi /= correction
    p = float(sps.chi2.sf(chi, k - 1))
    return float(chi), p


def _signed_ranks(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    diff = a - b
    diff = diff[diff != 0.0]  # zero differences dropped (documented choice)
    if len(diff) < MIN_PAIRS:
        raise TooFewPairs(f"only {len(diff)} non-zero pairs; need at least {MIN_PAIRS}")
    ranks = sps.rankdata(np.abs(diff))
    return diff, ranks


def _wilcoxon_exact(w: float, ranks: np.ndarray) -> float:
    """Two-sided p by enumerating all sign patterns of the observed ranks."""
    n = len(ranks)
    total = 2**n
    count = 0
    w_mean = ranks.sum() / 2.0
    observed_dev = abs(w - w_mean)
    for signs in itertools.product((0.0, 1.0), repeat=n):
        w_plus = float(np.dot(signs, ranks))
        if abs(w_plus - w_mean) >= observed_dev - 1e-12:
            count += 1
    return count / total


def wilcoxon_signed_rank(a, b) -> float:
    """Two-sided paired Wilcoxon signed-rank p-value: exact enumeration for
    up to 15 non-zero pairs, normal approximation with tie and continuity
    corrections above."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise LengthMismatch(f"paired samples differ in length: {a.shape} vs {b.shape}")
    try:
        diff, ranks = _signed_ranks(a, b)
    except TooFewPairs:
        if np.array_equal(a, b):
            return 1.0  # nothing left after zero removal: no evidence at all
        raise
    w_plus = float(ranks[diff > 0].sum())
    n = len(diff)
    if n <= EXACT_LIMIT:
        return _wilcoxon_exact(w_plus, ranks)
    mean = n * (n + 1) / 4.0
    _, counts = np.unique(ranks, return_counts=True)
    tie_term = float((counts**3 - counts).sum()) / 48.0
    var = n * (n + 1) * (2 * n + 1) / 24.0 - tie_term
    dev = abs(w_plus - mean)
    z = (dev - 0.5) / math.sqrt(var)  # continuity correction
    # Edgeworth kurtosis term: the null is a sum of scaled Bernoullis with
    # fourth cumulant -sum(r^4)/8, which the plain normal tail misses enough
    # to matter near the exact/approximate boundary
    excess = (-(ranks**4).sum() / 8.0) / var**2
    tail = sps.norm.sf(z) + sps.norm.pdf(z) * (excess / 24.0) * (z**3 - 3.0 * z)
    return float(min(1.0, max(0.0, 2.0 * tail)))


def bonferroni(pvals, m: int | None = None) -> np.ndarray:
    """Multiply by the number of comparisons, clipped at 1."""
    pvals = np.asarray(pvals, dtype=np.float64)
    m = len(pvals) if m is None else m
    return np.minimum(pvals * m, 1.0)


def cliques(nonsignificant: np.ndarray, order: np.ndarray | None = None) -> list[tuple[int, ...]]:
    """Maximal cliques of the non-significance graph (Bron-Kerbosch),
    ordered by the best contained value of `order` (e.g. mean ranks)."""
    adj = np.asarray(nonsignificant, dtype=bool)
    if adj.shape[0] != adj.shape[1] or not np.array_equal(adj, adj.T):
        raise ValueError("non-significance matrix must be square and symmetric")
    n = len(adj)
    neighbors = [set(np.flatnonzero(adj[i])) - {i} for i in range(n)]
    found: list[frozenset] = []

    def expand(r: set, p: set, x: set) -> None:
        if not p and not x:
            found.append(frozenset(r))
            return
        pivot = max(p | x, key=lambda v: len(neighbors[v]))
        for v in sorted(p - neighbors[pivot]):
            expand(r | {v}, p & neighbors[v], x & neighbors[v])
            p = p - {v}
            x = x | {v}

    expand(set(), set(range(n)), set())
    key = np.arange(n, dtype=np.float64) if order is None else np.asarray(order, dtype=np.float64)
    return [tuple(sorted(c)) for c in sorted(found, key=lambda c: min(key[i] for i in c))]


def correlation(x, y, kind: str = "pearson") -> tuple[float, float]:
    """Pearson r or Spearman rho with a two-sided t-approximation p-value."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape:
        raise LengthMismatch(f"samples differ in length: {x.shape} vs {y.shape}")
    if len(x) < 3:
        raise ValueError("need at least 3 points")
    if x.std() == 0.0 or y.std() == 0.0:
        raise ZeroVariance("correlation undefined for a constant sample")
    if kind == "spearman":
        x = sps.rankdata(x)
        y = sps.rankdata(y)
    elif kind != "pearson":
        raise ValueError(f"unknown correlation kind {kind!r}; expected pearson or spearman")
    r = float(np.corrcoef(x, y)[0, 1])
    n = len(x)
    if abs(r) >= 1.0 - 1e-12:  # exact linear relation up to rounding
        return (math.copysign(1.0, r), 0.0)
    t = r * math.sqrt((n - 2) / (1.0 - r * r))
    p = float(2.0 * sps.t.sf(abs(t), n - 2))
    return r, p
