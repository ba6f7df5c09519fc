"""Bag-of-features representation: a fixed catalogue of temporal,
statistical, spectral and complexity features per series, optional min-max
feature normalization across the dataset, then PCA."""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .linear import PcaModel, pca_apply, pca_fit

_ACF_LAGS = (1, 2, 3, 4, 6, 12, 24)
_QUANTILES = (0.05, 0.25, 0.5, 0.75, 0.95)


def _autocorr(x: np.ndarray, lag: int) -> float:
    c = x - x.mean()
    den = float((c * c).sum())
    if den == 0.0:
        return 0.0
    return float((c[lag:] * c[:-lag]).sum() / den)


def _longest_run(mask: np.ndarray) -> int:
    best = run = 0
    for v in mask:
        run = run + 1 if v else 0
        best = max(best, run)
    return best


def _hurst_rs(x: np.ndarray) -> float:
    # rescaled-range statistic: log(R/S) / log(n) over the full series
    d = x - x.mean()
    z = np.cumsum(d)
    r = z.max() - z.min()
    s = x.std()
    if s == 0.0 or r == 0.0:
        return 0.5
    return float(np.log(r / s) / np.log(len(x)))


def _spectral(x: np.ndarray) -> tuple[float, float, float, list[float]]:
    spec = np.abs(np.fft.rfft(x - x.mean())) ** 2
    spec = spec[1:]  # drop DC
    total = spec.sum()
    if total == 0.0:
        return 0.0, 0.0, 0.0, [0.0, 0.0, 0.0, 0.0]
    p = spec / total
    entropy = float(-(p[p > 0] * np.log(p[p > 0])).sum() / np.log(len(p)))
    dom = int(np.argmax(spec))
    freqs = np.arange(1, len(spec) + 1, dtype=float)
    centroid = float((freqs * p).sum() / len(spec))
    bands = [float(chunk.sum()) for chunk in np.array_split(p, 4)]
    return entropy, float(dom + 1), centroid, bands


def _binned_entropy(x: np.ndarray, bins: int = 10) -> float:
    hist, _ = np.histogram(x, bins=bins)
    p = hist / hist.sum()
    p = p[p > 0]
    return float(-(p * np.log(p)).sum())


def bof_features(x) -> np.ndarray:
    """Feature vector for one series; names in BOF_FEATURE_NAMES."""
    x = np.asarray(x, dtype=np.float64)
    n = len(x)
    mean = x.mean()
    sd = x.std()
    centered = x - mean
    skew = float((centered**3).mean() / sd**3) if sd > 0 else 0.0
    kurt = float((centered**4).mean() / sd**4 - 3.0) if sd > 0 else 0.0
    d1 = np.diff(x)
    d2 = np.diff(x, 2)
    above = x > mean
    crossings = int((above[1:] != above[:-1]).sum())
    peaks = int(((x[1:-1] > x[:-2]) & (x[1:-1] > x[2:])).sum())
    entropy, dom_freq, centroid, bands = _spectral(x)
    half = n // 2
    t = np.arange(n)
    slope = float(np.polyfit(t, x, 1)[0])
    qs = np.quantile(x, _QUANTILES)
    values = [
        mean,
        float(x.var()),
        float(sd),
        skew,
        kurt,
        float(x.min()),
        float(x.max()),
        float(np.ptp(x)),
        *[float(q) for q in qs],
        float(qs[3] - qs[1]),
        float(np.argmax(x)),
        float(np.argmin(x)),
        float(_longest_run(above)),
        float(_longest_run(~above)),
        float(crossings),
        *[_autocorr(x, lag) for lag in _ACF_LAGS],
        float(sum(_autocorr(x, lag) for lag in range(1, 11))),
        float(np.abs(d1).mean()),
        float(d1.mean()),
        float(d1.std()),
        float(np.abs(d2).mean()),
        float(d2.std()),
        float(np.sqrt((d1**2).sum())),
        float((x**2).sum()),
        float(np.sqrt((x**2).mean())),
        float(peaks),
        entropy,
        dom_freq,
        centroid,
        *bands,
        _hurst_rs(x),
        float(x[:half].var() - x[half:].var()),
        float(x[:half].mean() - x[half:].mean()),
        _binned_entropy(x),
        float(above.mean()),
        float((x >= 0.95).sum()),
        float((x <= 0.05).sum()),
        slope,
    ]
    return np.array(values)


# feature names live in a versioned data file so downstream artifacts can
# reference the catalogue by name
_catalogue_text = resources.files("smtsbench.data").joinpath("bof_catalogue.json").read_text()
BOF_FEATURE_NAMES = tuple(json.loads(_catalogue_text)["features"])

assert len(BOF_FEATURE_NAMES) == len(bof_features(np.linspace(0, 1, 48)))


@dataclass(frozen=True)
class BofModel:
    kept: np.ndarray  # indices of non-constant feature columns
    norm_lo: np.ndarray | None
    norm_span: np.ndarray | None
    pca: PcaModel


def bof_fit(series: np.ndarray, feature_normalization: str | None = None) -> BofModel:
    """Fit the feature pipeline on a dataset (drop constant columns, optional
    min-max feature scaling, full-rank PCA)."""
    if feature_normalization not in (None, "minmax"):
        raise ValueError(f"unknown feature normalization {feature_normalization!r}")
    feats = np.array([bof_features(row) for row in np.asarray(series, dtype=np.float64)])
    spans = feats.max(axis=0) - feats.min(axis=0)
    kept = np.flatnonzero(spans > 0)
    if len(kept) < feats.shape[1]:
        dropped = [BOF_FEATURE_NAMES[i] for i in np.flatnonzero(spans == 0)]
        warnings.warn(f"dropping constant feature columns: {dropped}", stacklevel=2)
    feats = feats[:, kept]
    norm_lo = norm_span = None
    if feature_normalization == "minmax":
        norm_lo = feats.min(axis=0)
        norm_span = feats.max(axis=0) - norm_lo
        feats = (feats - norm_lo) / norm_span
    with warnings.catch_warnings():
        # a full-rank request is intentional here; rank deficiency is
        # recorded on the model's degenerate flag
        warnings.simplefilter("ignore")
        model = pca_fit(feats, min(len(kept), len(feats)))
    return BofModel(kept=kept, norm_lo=norm_lo, norm_span=norm_span, pca=model)


def bof_apply(model: BofModel, x, n_c: int) -> np.ndarray:
    """Project one series onto the top n_c feature principal components."""
    feats = bof_features(x)[model.kept]
    if model.norm_lo is not None:
        feats = (feats - model.norm_lo) / model.norm_span
    full = pca_apply(model.pca, feats)
    if n_c > len(full):
        raise ValueError(f"n_c {n_c} exceeds available components {len(full)}")
    return full[:n_c]
