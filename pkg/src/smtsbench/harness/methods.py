"""Method-id resolution: similarity paradigms (a measure, or a representation
paired with ED / its own string distance), parameter grids (default, retained,
full), expected-performance expansion, and paradigm+algorithm combos."""

from __future__ import annotations

import numpy as np
from scipy.spatial.distance import pdist, squareform

from ..clustering import parse_algo
from ..core import LabeledDataset
from ..dissimilarity import pairwise_matrix, parse_measure
from ..representation import parse_rep, represent_dataset, sax_distance
from ..representation.specs import REP_KINDS

# Table of retained parameter values: the subset of each method's grid kept
# after stage one; expected performance (X_exp) averages a metric over it.
RETAINED_GRIDS: dict[str, list[dict]] = {
    "cid": [{}],
    "ed": [{}],
    "fd": [{}],
    "sbd": [{}],
    "mm": [{"p": 3}],
    "dtw": [{"w": w} for w in range(1, 7)],
    "erp": [{"w": w, "g": g} for w in range(1, 6) for g in (0.0, 0.1, 0.2, 0.3)],
    "ksd": [{"w": w} for w in range(1, 4)],
    "mpd": [{"w": w} for w in range(41, 48)],
    "msm": [{"w": w, "c": 0.1} for w in range(1, 7)],
    "twed": [{"nu": nu, "lam": lam} for nu in (1e-4, 1e-3, 1e-2) for lam in (0.25, 0.5, 0.75)],
    "pca": [{"n_c": n} for n in range(5, 15)],
}

# Full single-parameter sweeps for grid mode.
FULL_GRIDS: dict[str, list[dict]] = {
    "dtw": [{"w": w} for w in range(1, 49)],
    "ksd": [{"w": w} for w in range(1, 49)],
    "msm": [{"w": w, "c": 0.1} for w in range(1, 49)],
    "mpd": [{"w": w} for w in range(3, 49)],
    "paa": [{"w": w} for w in range(1, 25)],
    "pca": [{"n_c": n} for n in range(1, 49)],
}


def _parse_paradigm(text: str):
    kind = text.split("(", 1)[0].strip().lower()
    if kind in REP_KINDS:
        return parse_rep(text)
    return parse_measure(text)


def expand_paradigms(name: str, mode: str) -> list[str]:
    """Concrete paradigm ids for a method name under a parameter mode.

    Explicitly parameterized ids ("dtw(w=3)") pass through unchanged; bare
    names expand per mode (default params, Table-of-retained grid, or the
    full grid)."""
    if "(" in name:
        return [_parse_paradigm(name).canonical_id()]
    base = name.strip().lower()
    if mode == "default":
        return [_parse_paradigm(base).canonical_id()]
    table = RETAINED_GRIDS if mode == "retained" else FULL_GRIDS
    if base not in table:
        raise ValueError(f"no {mode} grid defined for method {base!r}")
    cls = parse_rep if base in REP_KINDS else parse_measure
    out = []
    for params in table[base]:
        inner = ",".join(f"{k}={v:g}" if isinstance(v, float) else f"{k}={v}" for k, v in params.items())
        out.append(cls(f"{base}({inner})").canonical_id())
    return out


def paradigm_matrix(pid: str, data) -> np.ndarray:
    """Pairwise dissimilarity matrix for one paradigm id over a dataset."""
    series = data.series if isinstance(data, LabeledDataset) else np.asarray(data, dtype=np.float64)
    kind = pid.split("(", 1)[0].strip().lower()
    if kind not in REP_KINDS:
        return pairwise_matrix(pid, series)
    rep = parse_rep(pid)
    feats = represent_dataset(rep, series)
    if rep.kind != "sax":
        return squareform(pdist(feats))
    n = len(feats)
    out = np.zeros((n, n))
    for i in range(n - 1):
        for j in range(i + 1, n):
            out[i, j] = out[j, i] = sax_distance(
                rep.params["dist"], feats[i], feats[j], rep.params["n_b"]
            )
    return out


def resolve_method(method_id: str, mode: str = "default") -> dict:
    """Validate and decompose a method id.

    Forms:
      "<paradigm>"                 stage-one paradigm (measure or rep)
      "<base>_exp+<algo>"          expected performance over the retained grid
      "<paradigm>+<algo>"          one paradigm feeding one algorithm
      "kmeans" / "kshape"          indivisible approaches on the raw series
    Returns {"paradigms": [...ids], "algo": AlgoSpec|None, "raw": bool}.
    """
    text = method_id.strip()
    if "+" not in text:
        if text.lower() in ("kmeans", "kshape"):
            return {"paradigms": [], "algo": parse_algo(text), "raw": True}
        return {"paradigms": expand_paradigms(text, mode), "algo": None, "raw": False}
    paradigm_part, algo_part = (s.strip() for s in text.split("+", 1))
    algo = parse_algo(algo_part)
    if paradigm_part.lower().endswith("_exp"):
        paradigms = expand_paradigms(paradigm_part[:-4], "retained")
    else:
        paradigms = expand_paradigms(paradigm_part, mode)
    return {"paradigms": paradigms, "algo": algo, "raw": False}
