"""Algorithm specs, label canonicalization, and the shared dispatch entry."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from ..core import check_dissimilarity_matrix

HAC_LINKAGES = ("single", "complete", "average", "weighted", "ward")
ALGO_KINDS = ("hac", "kmedoids", "kmeans", "birch", "spectral", "genie", "kshape")

_DEFAULTS: dict[str, dict] = {
    "hac": {"linkage": "ward"},
    "kmedoids": {},
    "kmeans": {},
    "birch": {"branching": 50, "tau0": 0.1},
    "spectral": {"delta0": 20.0},
    "genie": {"g": 0.3},
    "kshape": {},
}

_LINKAGE_ABBREV = {"s": "single", "c": "complete", "a": "average", "we": "weighted", "wa": "ward"}


def relabel(assignments: np.ndarray) -> np.ndarray:
    """Canonicalize labels to 0..k-1 in order of first appearance."""
    assignments = np.asarray(assignments)
    _, first = np.unique(assignments, return_index=True)
    mapping = {assignments[i]: rank for rank, i in enumerate(np.sort(first))}
    return np.array([mapping[a] for a in assignments], dtype=np.int64)


@dataclass(frozen=True)
class AlgoSpec:
    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.kind not in ALGO_KINDS:
            raise ValueError(f"unknown algorithm {self.kind!r}; expected one of {ALGO_KINDS}")
        merged = dict(_DEFAULTS[self.kind])
        unknown = set(self.params) - set(merged)
        if unknown:
            raise ValueError(f"unknown parameters for {self.kind}: {sorted(unknown)}")
        merged.update(self.params)
        if self.kind == "hac":
            link = _LINKAGE_ABBREV.get(merged["linkage"], merged["linkage"])
            if link not in HAC_LINKAGES:
                raise ValueError(f"unknown linkage {merged['linkage']!r}; expected one of {HAC_LINKAGES}")
            merged["linkage"] = link
        if self.kind == "genie" and not 0.0 <= merged["g"] <= 1.0:
            raise ValueError(f"gini threshold {merged['g']} outside [0, 1]")
        object.__setattr__(self, "params", merged)

    def canonical_id(self) -> str:
        if not self.params:
            return self.kind
        inner = ",".join(f"{k}={v}" if k != "linkage" else str(v) for k, v in sorted(self.params.items()))
        return f"{self.kind}({inner})"

    @property
    def needs_matrix(self) -> bool:
        return self.kind in ("hac", "kmedoids", "spectral", "genie")


_SPEC_RE = re.compile(r"^\s*([a-z]+)\s*(?:\(([^()]*)\))?\s*$")


def parse_algo(text: str) -> AlgoSpec:
    """Parse ids like "hac(ward)", "kmedoids", "genie(g=0.3)"."""
    m = _SPEC_RE.match(text.lower())
    if not m:
        raise ValueError(f"cannot parse algorithm id {text!r}")
    kind, inner = m.group(1), m.group(2) or ""
    params: dict = {}
    for part in filter(None, (s.strip() for s in inner.split(","))):
        if "=" not in part:
            if kind == "hac":
                params["linkage"] = part
                continue
            raise ValueError(f"malformed parameter {part!r} in {text!r}")
        key, value = (s.strip() for s in part.split("=", 1))
        if key in ("branching",):
            params[key] = int(value)
        elif key in ("tau0", "delta0", "g"):
            params[key] = float(value)
        else:
            params[key] = value
    return AlgoSpec(kind, params)


def embed_rows(matrix: np.ndarray) -> np.ndarray:
    """Adapter: each object's feature vector is its row of the dissimilarity
    matrix, so vector-space algorithms accept any dissimilarity paradigm."""
    matrix = np.asarray(matrix, dtype=np.float64)
    check_dissimilarity_matrix(matrix)
    return matrix.copy()


def cluster(spec: AlgoSpec | str, k: int, *, matrix=None, vectors=None, seed: int = 0) -> np.ndarray:
    """Run one algorithm; returns canonical labels 0..k-1.

    Matrix-paradigm algorithms (hac, kmedoids, spectral, genie) require
    `matrix`; vector-space ones (kmeans, birch) require `vectors` (use
    embed_rows(matrix) to adapt); kshape requires raw series `vectors`.
    """
    from .birch import birch
    from .genie import genie
    from .hac import hac
    from .kmeans import kmeans
    from .kmedoids import kmedoids
    from .kshape import kshape
    from .spectral import spectral

    if isinstance(spec, str):
        spec = parse_algo(spec)
    if spec.needs_matrix:
        if matrix is None:
            raise ValueError(f"{spec.kind} requires a dissimilarity matrix")
        matrix = np.asarray(matrix, dtype=np.float64)
    else:
        if vectors is None:
            raise ValueError(f"{spec.kind} requires vectors")
        vectors = np.asarray(vectors, dtype=np.float64)
    p = spec.params
    if spec.kind == "hac":
        return hac(p["linkage"], matrix, k)
    if spec.kind == "kmedoids":
        return kmedoids(matrix, k, seed)
    if spec.kind == "kmeans":
        return kmeans(vectors, k, seed)
    if spec.kind == "birch":
        return birch(vectors, k, p["branching"], p["tau0"])
    if spec.kind == "spectral":
        return spectral(matrix, k, p["delta0"], seed=seed)
    if spec.kind == "genie":
        return genie(matrix, k, p["g"])
    return kshape(vectors, k, seed)
