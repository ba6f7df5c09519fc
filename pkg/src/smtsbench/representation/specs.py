"""Representation specs: parameter validation, string ids, and dataset-level
application (fit-once-then-apply for PCA and BOF, pure per-series otherwise)."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from ..core import N_SAMPLES
from .bof import BOF_FEATURE_NAMES, bof_apply, bof_fit
from .dwt import MODES, dwt, dwt_max_level
from .images import gaf, mtf
from .linear import paa, pca_apply, pca_fit
from .sax import DISTANCES, STRATEGIES, sax

REP_KINDS = ("paa", "pca", "dwt", "sax", "gaf", "mtf", "bof")

_DEFAULTS: dict[str, dict] = {
    "paa": {"w": 1},
    "pca": {"n_c": N_SAMPLES},
    "dwt": {"phi": 1, "level": 1, "mode": "all"},
    "sax": {"n_b": 4, "strategy": "quantile", "dist": "mindist"},
    "gaf": {"n_i": 16, "gaf_type": "summation"},
    "mtf": {"n_i": 16, "n_b": 8, "strategy": "quantile"},
    "bof": {"n_c": 10, "normalization": "minmax"},
}


def _validate(kind: str, p: dict) -> None:
    if kind == "paa" and not 1 <= p["w"] <= 24:
        raise ValueError(f"paa window {p['w']} outside 1..24")
    if kind == "pca" and not 1 <= p["n_c"] <= N_SAMPLES:
        raise ValueError(f"pca component count {p['n_c']} outside 1..{N_SAMPLES}")
    if kind == "dwt":
        if p["phi"] not in (1, 2, 3, 4, 5):
            raise ValueError(f"dwt filter order {p['phi']} outside 1..5")
        if p["mode"] not in MODES:
            raise ValueError(f"dwt mode {p['mode']!r}; expected one of {MODES}")
        if not 1 <= p["level"] <= dwt_max_level(p["phi"]):
            raise ValueError(f"dwt level {p['level']} outside 1..{dwt_max_level(p['phi'])}")
    if kind in ("sax", "mtf") and not 2 <= p["n_b"] <= 26:
        raise ValueError(f"alphabet size {p['n_b']} outside 2..26")
    if kind in ("sax", "mtf") and p["strategy"] not in STRATEGIES:
        raise ValueError(f"strategy {p['strategy']!r}; expected one of {STRATEGIES}")
    if kind == "sax" and p["dist"] not in DISTANCES:
        raise ValueError(f"sax distance {p['dist']!r}; expected one of {DISTANCES}")
    if kind in ("gaf", "mtf") and not 2 <= p["n_i"] <= N_SAMPLES:
        raise ValueError(f"image size {p['n_i']} outside 2..{N_SAMPLES}")
    if kind == "gaf" and p["gaf_type"] not in ("summation", "difference"):
        raise ValueError(f"gaf type {p['gaf_type']!r}; expected summation or difference")
    if kind == "bof":
        if not 1 <= p["n_c"] <= len(BOF_FEATURE_NAMES):
            raise ValueError(f"bof component count {p['n_c']} outside catalogue size")
        if p["normalization"] not in ("minmax", "none"):
            raise ValueError(f"bof normalization {p['normalization']!r}; expected minmax or none")


@dataclass(frozen=True)
class RepSpec:
    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.kind not in REP_KINDS:
            raise ValueError(f"unknown representation {self.kind!r}; expected one of {REP_KINDS}")
        merged = dict(_DEFAULTS[self.kind])
        unknown = set(self.params) - set(merged)
        if unknown:
            raise ValueError(f"unknown parameters for {self.kind}: {sorted(unknown)}")
        merged.update(self.params)
        _validate(self.kind, merged)
        object.__setattr__(self, "params", merged)

    def canonical_id(self) -> str:
        inner = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.kind}({inner})"


_SPEC_RE = re.compile(r"^\s*([a-z]+)\s*(?:\(([^()]*)\))?\s*$")


def parse_rep(text: str) -> RepSpec:
    """Parse ids like "paa(w=2)" or "sax(n_b=5,strategy=uniform,dist=vlev)"."""
    m = _SPEC_RE.match(text.lower())
    if not m:
        raise ValueError(f"cannot parse representation id {text!r}")
    kind, inner = m.group(1), m.group(2) or ""
    params: dict = {}
    for part in filter(None, (s.strip() for s in inner.split(","))):
        if "=" not in part:
            raise ValueError(f"malformed parameter {part!r} in {text!r}")
        key, value = (s.strip() for s in part.split("=", 1))
        params[key] = int(value) if value.lstrip("-").isdigit() else value
    return RepSpec(kind, params)


def represent_dataset(spec: RepSpec | str, series) -> np.ndarray:
    """Apply a representation to every row of a (n, 48) array.

    Returns the feature matrix (for SAX: the integer symbol matrix, to be
    compared with sax_distance rather than ED).
    """
    if isinstance(spec, str):
        spec = parse_rep(spec)
    series = np.asarray(series, dtype=np.float64)
    p = spec.params
    if spec.kind == "paa":
        rows = [paa(p["w"], row) for row in series]
    elif spec.kind == "pca":
        model = pca_fit(series, p["n_c"])
        rows = [pca_apply(model, row) for row in series]
    elif spec.kind == "dwt":
        rows = [dwt(p["phi"], p["level"], p["mode"], row) for row in series]
    elif spec.kind == "sax":
        return np.array([sax(p["n_b"], p["strategy"], row) for row in series])
    elif spec.kind == "gaf":
        rows = [gaf(p["n_i"], p["gaf_type"], row) for row in series]
    elif spec.kind == "mtf":
        rows = [mtf(p["n_i"], p["n_b"], p["strategy"], row) for row in series]
    else:  # bof
        norm = "minmax" if p["normalization"] == "minmax" else None
        model = bof_fit(series, norm)
        rows = [bof_apply(model, row, min(p["n_c"], len(model.kept))) for row in series]
    return np.array(rows)
