"""Genie clustering: single-linkage merging over the MST, constrained so the
Gini index of component sizes never drifts above the threshold (when it does,
the next merge must involve a smallest component)."""

from __future__ import annotations

import numpy as np
from scipy.sparse.csgraph import minimum_spanning_tree

from ..core import check_dissimilarity_matrix
from .partition import relabel


def mst_edges(matrix: np.ndarray) -> list[tuple[float, int, int]]:
    """Minimum spanning tree edges (weight, i, j) sorted ascending with
    index tie-breaks."""
    tree = minimum_spanning_tree(matrix).tocoo()
    edges = [
        (float(w), min(int(a), int(b)), max(int(a), int(b)))
        for w, a, b in zip(tree.data, tree.row, tree.col)
    ]
    # csgraph drops explicit zero-weight edges; they are valid MST edges here
    if len(edges) < len(matrix) - 1:
        edges = _prim(matrix)
    return sorted(edges)


def _prim(matrix: np.ndarray) -> list[tuple[float, int, int]]:
    n = len(matrix)
    in_tree = np.zeros(n, dtype=bool)
    in_tree[0] = True
    best = matrix[0].copy()
    parent = np.zeros(n, dtype=np.int64)
    edges = []
    for _ in range(n - 1):
        cand = np.where(in_tree, np.inf, best)
        v = int(np.argmin(cand))
        edges.append((float(best[v]), min(int(parent[v]), v), max(int(parent[v]), v)))
        in_tree[v] = True
        closer = matrix[v] < best
        parent[closer & ~in_tree] = v
        best = np.where(closer & ~in_tree, matrix[v], best)
    return edges


def gini_index(sizes: np.ndarray) -> float:
    """Normalized Gini index of component sizes (0 = balanced)."""
    sizes = np.sort(np.asarray(sizes, dtype=np.float64))
    m = len(sizes)
    if m <= 1:
        return 0.0
    weights = 2.0 * np.arange(1, m + 1) - m - 1.0
    return float((weights * sizes).sum() / ((m - 1) * sizes.sum()))


class _DisjointSet:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]


def genie(matrix: np.ndarray, k: int, g_threshold: float = 0.3) -> np.ndarray:
    matrix = np.asarray(matrix, dtype=np.float64)
    check_dissimilarity_matrix(matrix)
    n = len(matrix)
    if not 1 <= k <= n:
        raise ValueError(f"k {k} outside 1..{n}")
    edges = mst_edges(matrix)
    ds = _DisjointSet(n)
    used = [False] * len(edges)
    for _ in range(n - k):
        roots = {ds.find(i) for i in range(n)}
        sizes = np.array([ds.size[r] for r in sorted(roots)])
        if gini_index(sizes) > g_threshold:
            min_size = min(ds.size[r] for r in roots)
            chosen = next(
                idx
                for idx, (_, a, b) in enumerate(edges)
                if not used[idx]
                and (ds.size[ds.find(a)] == min_size or ds.size[ds.find(b)] == min_size)
            )
        else:
            chosen = next(idx for idx in range(len(edges)) if not used[idx])
        used[chosen] = True
        _, a, b = edges[chosen]
        ds.union(a, b)
    return relabel(np.array([ds.find(i) for i in range(n)]))
