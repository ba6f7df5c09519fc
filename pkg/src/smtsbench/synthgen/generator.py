"""Three-stage DLP generation: characteristic curve -> STAR recurrence ->
downsampling and min-max normalization, plus the outlier generator."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from ..core import CURVE_LEN, N_SAMPLES, minmax_normalize
from .shapes import GaussianPeak, LogisticStep, PVDip, ShapeSpec, gen_characteristic_curve, load_catalogue


@dataclass(frozen=True)
class StarParams:
    """Regime-switched autoregressive recurrence parameters."""

    theta1: float = -0.1
    theta2: float = 0.5
    sigma_l: float = 0.12
    sigma_h: float = 0.1

    def __post_init__(self):
        if self.sigma_l < 0.0 or self.sigma_h < 0.0:
            raise ValueError("noise standard deviations must be non-negative")


BASELINE_PARAMS = StarParams()


@njit(cache=True)
def _star_recurrence(curve, theta1, theta2, y0, noise):
    n = curve.shape[0]
    y = np.empty(n, dtype=np.float64)
    y[0] = y0
    for t in range(1, n):
        y[t] = theta1 * y[t - 1] + (1.0 + theta2 * y[t - 1]) * curve[t] + noise[t]
    return y


def simulate_star(curve: np.ndarray, p: StarParams, y0_mode: str, rng) -> np.ndarray:
    """Run the regime-switched AR recurrence over a characteristic curve.

    White noise has sd sigma_l where the curve sits below 0.5 and sigma_h
    where it reaches 0.5 or above. The start value is N(0, sigma_l) for
    "low" clusters and N(1.5, sigma_h) for "high" clusters.
    """
    curve = np.asarray(curve, dtype=np.float64)
    if curve.shape != (CURVE_LEN,):
        raise ValueError(f"curve must have length {CURVE_LEN}")
    if y0_mode == "low":
        y0 = rng.normal(0.0, p.sigma_l)
    elif y0_mode == "high":
        y0 = rng.normal(1.5, p.sigma_h)
    else:
        raise ValueError(f"unknown y0_mode {y0_mode!r}")
    # one standard-normal draw per step (t >= 1), scaled per regime
    z = rng.standard_normal(CURVE_LEN)
    sd = np.where(curve < 0.5, p.sigma_l, p.sigma_h)
    noise = z * sd
    return _star_recurrence(curve, p.theta1, p.theta2, y0, noise)


def downsample_and_normalize(y: np.ndarray, rng) -> np.ndarray:
    """Keep every 10th point from a random offset u ~ DU{0,9}, then min-max."""
    y = np.asarray(y, dtype=np.float64)
    if y.shape != (CURVE_LEN,):
        raise ValueError(f"expected length {CURVE_LEN}")
    u = int(rng.integers(0, 10))
    sampled = y[u::10][:N_SAMPLES]
    return minmax_normalize(sampled)


def gen_dlp(cluster_id: int, sigma_l: float, sigma_h: float, rng, catalogue=None) -> np.ndarray:
    """Generate one normalized 48-point DLP from a catalogue cluster."""
    catalogue = catalogue or load_catalogue()
    spec = catalogue[cluster_id]
    params = StarParams(sigma_l=sigma_l, sigma_h=sigma_h)
    curve = gen_characteristic_curve(spec, rng)
    y = simulate_star(curve, params, spec.y0_mode, rng)
    return downsample_and_normalize(y, rng)


# Outlier construction: peak count, each-feature probability, and the wide
# parameter ranges below are deliberately broader than any single cluster's
# spec so generated outliers rarely resemble a catalogue cluster.
OUTLIER_PEAK_COUNTS = (1, 2, 3, 4)
OUTLIER_PEAK_PROBS = (0.25, 0.25, 0.25, 0.25)
OUTLIER_EXTRA_FEATURE_PROB = 0.3


def draw_outlier_spec(rng) -> ShapeSpec:
    """Draw the random shape spec for one outlier curve."""
    n_peaks = int(rng.choice(np.array(OUTLIER_PEAK_COUNTS), p=np.array(OUTLIER_PEAK_PROBS)))
    components = []
    for _ in range(n_peaks):
        loc = float(rng.uniform(0.5, 23.5))
        components.append(
            GaussianPeak((loc, loc), (float(rng.uniform(0.3, 2.5)), 2.5), float(rng.uniform(0.35, 1.0)))
        )
    base = float(rng.uniform(0.0, 0.25))
    if rng.uniform() < OUTLIER_EXTRA_FEATURE_PROB:
        loc = float(rng.uniform(9.0, 15.0))
        depth = float(rng.uniform(0.15, min(0.6, base + 0.3)))
        components.append(PVDip((loc, loc), (1.0, 2.5), depth))
    if rng.uniform() < OUTLIER_EXTRA_FEATURE_PROB:
        loc = float(rng.uniform(2.0, 22.0))
        direction = "up" if rng.uniform() < 0.5 else "down"
        components.append(LogisticStep((loc, loc), float(rng.uniform(0.5, 3.0)), direction, float(rng.uniform(0.3, 0.8))))
    return ShapeSpec(cluster_id=-1, components=tuple(components), base=base, y0_mode="low")


def gen_outlier(rng, params: StarParams = BASELINE_PARAMS) -> np.ndarray:
    """Generate one normalized outlier DLP (label -1 downstream)."""
    spec = draw_outlier_spec(rng)
    # random stacks of wide peaks are allowed to saturate; skip the clip guard
    curve = gen_characteristic_curve(spec, rng, check_clip=False)
    y = simulate_star(curve, params, spec.y0_mode, rng)
    return downsample_and_normalize(y, rng)
