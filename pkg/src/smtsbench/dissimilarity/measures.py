"""Distance measures over raw DLPs and the pairwise-matrix builder.

Measures are addressed by MeasureSpec or by canonical id strings such as
"ed", "mm(p=3)", "dtw(w=3)", "erp(w=2,g=0.1)", "twed(nu=0.001,lam=0.5)".
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

import numpy as np
from scipy import stats
from scipy.spatial import distance as sp_dist

from ..core import LabeledDataset, check_dissimilarity_matrix
from ..errors import LengthMismatch, MissingContext, ParseError, WindowTooLarge, ZeroNorm, ZeroVariance
from . import _kernels

N = 48

# kinds and the parameters each accepts
_PARAM_NAMES = {
    "ed": (), "md": (), "chd": (), "bd": (), "cad": (), "cod": (),
    "pc": (), "sc": (), "kt": (), "cid": (), "hd": (), "mah": (),
    "mm": ("p",),
    "dtw": ("w",),
    "erp": ("w", "g"),
    "ers": ("w", "eps"),
    "lcss": ("w", "eps"),
    "msm": ("w", "c"),
    "twed": ("nu", "lam"),
    "ksd": ("w",),
    "fd": (),
    "sbd": (),
    "mpd": ("w", "tau"),
}

_DEFAULTS = {
    "dtw": {"w": 48},
    "erp": {"w": 48, "g": 0.0},
    "ers": {"w": 48, "eps": None},  # None -> per-pair max(std)/4
    "lcss": {"w": 48, "eps": 1.0},
    "msm": {"w": 48, "c": 1.0},
    "twed": {"nu": 0.001, "lam": 1.0},
    "ksd": {"w": 5},
    "mpd": {"w": 48, "tau": 0.05},
}


@dataclass(frozen=True)
class MeasureSpec:
    """One distance measure with bound parameters."""

    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in _PARAM_NAMES:
            raise ParseError(f"unknown measure kind {self.kind!r}")
        allowed = set(_PARAM_NAMES[self.kind])
        unknown = set(self.params) - allowed
        if unknown:
            raise ParseError(f"{self.kind}: unknown parameters {sorted(unknown)}")
        merged = dict(_DEFAULTS.get(self.kind, {}))
        merged.update(self.params)
        missing = allowed - set(merged)
        if missing:
            raise ParseError(f"{self.kind}: missing parameters {sorted(missing)}")
        object.__setattr__(self, "params", merged)
        w = merged.get("w")
        if w is not None and not (1 <= w <= N):
            raise WindowTooLarge(f"{self.kind}: window {w} outside 1..{N}")
        if self.kind == "mpd" and merged["w"] < 3:
            raise WindowTooLarge("mpd: window must be >= 3")

    def canonical_id(self) -> str:
        if not self.params:
            return self.kind
        inner = ",".join(f"{k}={_fmt(v)}" for k, v in sorted(self.params.items()))
        return f"{self.kind}({inner})"


def _fmt(v) -> str:
    if v is None:
        return "auto"
    if isinstance(v, float) and v == int(v):
        return str(int(v))
    return repr(v) if not isinstance(v, float) else format(v, "g")


_ID_RE = re.compile(r"^([a-z]+)(?:\((.*)\))?$")


def parse_measure(text: str) -> MeasureSpec:
    """Parse a canonical measure id like "dtw(w=3)" back into a MeasureSpec."""
    m = _ID_RE.match(text.strip())
    if not m:
        raise ParseError(f"cannot parse measure id {text!r}")
    kind, inner = m.group(1), m.group(2)
    params = {}
    if inner:
        for item in inner.split(","):
            if "=" not in item:
                raise ParseError(f"bad parameter {item!r} in {text!r}")
            key, val = item.split("=", 1)
            key = key.strip()
            val = val.strip()
            if val == "auto":
                params[key] = None
            elif key in ("w", "p") and re.fullmatch(r"\d+", val):
                params[key] = int(val)
            else:
                params[key] = float(val)
    return MeasureSpec(kind, params)


@dataclass(frozen=True)
class DatasetContext:
    """Per-dataset shared state (regularized inverse covariance for MAH)."""

    cov_inv: np.ndarray


def make_context(series: np.ndarray) -> DatasetContext:
    x = np.asarray(series, dtype=np.float64)
    cov = np.cov(x, rowvar=False)
    cov = cov + np.eye(cov.shape[0]) * (1e-6 * np.trace(cov) / cov.shape[0])
    return DatasetContext(cov_inv=np.linalg.inv(cov))


# ---------------------------------------------------------------------------
# lockstep measures


def _complexity(x):
    return math.sqrt(float(((x[1:] - x[:-1]) ** 2).sum()))


def _hausdorff_scalar(x, y):
    # Hausdorff distance between the two sample-value multisets: series are
    # treated as unordered scalar point sets (deliberately order-destroying)
    xs = np.sort(x)
    ys = np.sort(y)
    pos = np.clip(np.searchsorted(ys, xs), 1, len(ys) - 1)
    d_xy = np.minimum(np.abs(xs - ys[pos - 1]), np.abs(xs - ys[pos])).max()
    pos = np.clip(np.searchsorted(xs, ys), 1, len(xs) - 1)
    d_yx = np.minimum(np.abs(ys - xs[pos - 1]), np.abs(ys - xs[pos])).max()
    return max(float(d_xy), float(d_yx))


def _corr_distance(kind, x, y):
    if np.ptp(x) == 0.0 or np.ptp(y) == 0.0:
        raise ZeroVariance(f"{kind}: constant series has no correlation")
    if kind == "pc":
        r = float(stats.pearsonr(x, y).statistic)
    elif kind == "sc":
        r = float(stats.spearmanr(x, y).statistic)
    else:
        r = float(stats.kendalltau(x, y).statistic)  # tau-b, ties handled
    return max(0.0, 1.0 - r)  # clamp away negative rounding dust at r = 1


def _lockstep(kind, x, y, params, ctx):
    if kind == "ed":
        return float(np.sqrt(((x - y) ** 2).sum()))
    if kind == "md":
        return float(np.abs(x - y).sum())
    if kind == "chd":
        return float(np.abs(x - y).max())
    if kind == "mm":
        p = params["p"]
        if p == 1:  # route through the md/ed kernels so the p=1/p=2
            return float(np.abs(x - y).sum())  # identities hold bit-exactly
        if p == 2:
            return float(np.sqrt(((x - y) ** 2).sum()))
        return float((np.abs(x - y) ** p).sum() ** (1.0 / p))
    if kind == "bd":
        return float(sp_dist.braycurtis(x, y))
    if kind == "cad":
        return float(sp_dist.canberra(x, y))
    if kind == "cod":
        nx = np.linalg.norm(x)
        ny = np.linalg.norm(y)
        if nx == 0.0 or ny == 0.0:
            raise ZeroNorm("cod: zero-norm series")
        return max(0.0, float(1.0 - x.dot(y) / (nx * ny)))
    if kind in ("pc", "sc", "kt"):
        return _corr_distance(kind, x, y)
    if kind == "cid":
        ce_x = _complexity(x)
        ce_y = _complexity(y)
        ed = float(np.sqrt(((x - y) ** 2).sum()))
        if ce_x == 0.0 and ce_y == 0.0:
            return ed
        lo, hi = sorted((ce_x, ce_y))
        if lo == 0.0:
            raise ZeroVariance("cid: one series has zero complexity")
        return ed * hi / lo
    if kind == "hd":
        return _hausdorff_scalar(x, y)
    if kind == "mah":
        if ctx is None:
            raise MissingContext("mah requires a dataset context (covariance)")
        diff = x - y
        return float(np.sqrt(diff @ ctx.cov_inv @ diff))
    raise ParseError(f"unknown lockstep kind {kind!r}")


# ---------------------------------------------------------------------------
# shape-based / flexible measures


def sbd(x, y):
    """1 - max normalized cross-correlation over all integer shifts."""
    nx = np.linalg.norm(x)
    ny = np.linalg.norm(y)
    if nx == 0.0 or ny == 0.0:
        raise ZeroNorm("sbd: zero-norm series")
    cc = np.correlate(x, y, mode="full")
    return max(0.0, float(1.0 - cc.max() / (nx * ny)))


def fd(x, y):
    """Flexibility distance: cheapest-counterpart matching in both
    directions, costing amplitude (weight 1) plus timing (max-min)/n."""
    t_weight = (max(x.max(), y.max()) - min(x.min(), y.min())) / len(x)
    idx = np.arange(len(x))
    cost = np.abs(x[:, None] - y[None, :]) + t_weight * np.abs(idx[:, None] - idx[None, :])
    return float(0.5 * (cost.min(axis=1).sum() + cost.min(axis=0).sum()))


_ELASTIC_CODES = {
    "dtw": _kernels.DTW,
    "erp": _kernels.ERP,
    "ers": _kernels.ERS,
    "lcss": _kernels.LCSS,
    "msm": _kernels.MSM,
    "twed": _kernels.TWED,
    "ksd": _kernels.KSD,
}


def _kernel_args(spec: MeasureSpec) -> tuple[int, int, float, float]:
    kind, p = spec.kind, spec.params
    code = _ELASTIC_CODES[kind]
    if kind == "dtw" or kind == "ksd":
        return code, p["w"], 0.0, 0.0
    if kind == "erp":
        return code, p["w"], p["g"], 0.0
    if kind == "ers":
        auto = 1.0 if p["eps"] is None else 0.0
        return code, p["w"], p["eps"] if p["eps"] is not None else 0.0, auto
    if kind == "lcss":
        return code, p["w"], p["eps"], 0.0
    if kind == "msm":
        return code, p["w"], p["c"], 0.0
    return code, N, p["nu"], p["lam"]  # twed: unbanded


def dissimilarity(spec: MeasureSpec | str, x, y, ctx: DatasetContext | None = None) -> float:
    """Scalar distance between two equal-length series under one measure."""
    if isinstance(spec, str):
        spec = parse_measure(spec)
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape:
        raise LengthMismatch(f"length mismatch {x.shape} vs {y.shape}")
    if spec.kind in _ELASTIC_CODES:
        code, w, p1, p2 = _kernel_args(spec)
        return float(_kernels._scalar(code, x, y, w, p1, p2))
    if spec.kind == "sbd":
        return sbd(x, y)
    if spec.kind == "fd":
        return fd(x, y)
    if spec.kind == "mpd":
        if spec.params["w"] > len(x):
            raise WindowTooLarge(f"mpd window {spec.params['w']} > series length {len(x)}")
        return float(_kernels.mpd_dist(x, y, spec.params["w"], spec.params["tau"]))
    return _lockstep(spec.kind, x, y, spec.params, ctx)


# ---------------------------------------------------------------------------
# pairwise matrices


def _sbd_matrix(x: np.ndarray) -> np.ndarray:
    n, length = x.shape
    norms = np.linalg.norm(x, axis=1)
    if np.any(norms == 0.0):
        raise ZeroNorm("sbd: zero-norm series in dataset")
    size = 1
    while size < 2 * length - 1:
        size *= 2
    fx = np.fft.rfft(x, size)
    out = np.zeros((n, n))
    for i in range(n):
        cc = np.fft.irfft(fx[i] * np.conj(fx), size)[:, : 2 * length - 1]
        ncc = cc.max(axis=1) / (norms[i] * norms)
        out[i] = 1.0 - ncc
    out = np.minimum(out, out.T)  # exact symmetry against fft rounding
    out = np.maximum(out, 0.0)
    np.fill_diagonal(out, 0.0)
    return out


def _vector_matrix(spec: MeasureSpec, x: np.ndarray, ctx) -> np.ndarray | None:
    """Fast paths for measures with a clean vectorized form."""
    kind, p = spec.kind, spec.params
    if kind == "ed":
        return sp_dist.squareform(sp_dist.pdist(x, "euclidean"))
    if kind == "md":
        return sp_dist.squareform(sp_dist.pdist(x, "cityblock"))
    if kind == "chd":
        return sp_dist.squareform(sp_dist.pdist(x, "chebyshev"))
    if kind == "mm":
        if p["p"] == 1:  # bit-exact md/ed identities at p=1/p=2
            return sp_dist.squareform(sp_dist.pdist(x, "cityblock"))
        if p["p"] == 2:
            return sp_dist.squareform(sp_dist.pdist(x, "euclidean"))
        return sp_dist.squareform(sp_dist.pdist(x, "minkowski", p=p["p"]))
    if kind == "bd":
        return sp_dist.squareform(sp_dist.pdist(x, "braycurtis"))
    if kind == "cad":
        return sp_dist.squareform(sp_dist.pdist(x, "canberra"))
    if kind == "mah":
        d = sp_dist.squareform(sp_dist.pdist(x, "mahalanobis", VI=ctx.cov_inv))
        return d
    if kind == "sbd":
        return _sbd_matrix(x)
    return None


def pairwise_matrix(spec: MeasureSpec | str, data: LabeledDataset | np.ndarray) -> np.ndarray:
    """Full symmetric zero-diagonal matrix of a measure over a dataset.

    Entries are computed independently over the upper triangle (DP kernels
    run on parallel threads), so results are identical at any thread count.
    """
    if isinstance(spec, str):
        spec = parse_measure(spec)
    x = data.series if isinstance(data, LabeledDataset) else np.asarray(data, dtype=np.float64)
    ctx = make_context(x) if spec.kind == "mah" else None
    if spec.kind in _ELASTIC_CODES:
        code, w, p1, p2 = _kernel_args(spec)
        out = _kernels.banded_pairwise(code, np.ascontiguousarray(x), w, p1, p2)
    elif spec.kind == "mpd":
        out = _kernels.mpd_pairwise(np.ascontiguousarray(x), spec.params["w"], spec.params["tau"])
    else:
        out = _vector_matrix(spec, x, ctx)
        if out is None:
            n = len(x)
            out = np.zeros((n, n))
            for i in range(n - 1):
                for j in range(i + 1, n):
                    d = dissimilarity(spec, x[i], x[j], ctx)
                    out[i, j] = d
                    out[j, i] = d
    return check_dissimilarity_matrix(out)
