"""Discrete wavelet transform with Daubechies 1-5 filters.

The 48-sample DLP is linearly interpolated to 64 points (next power of two),
then decomposed by a cascade filter bank with periodic (circular) extension,
which keeps every coefficient count an exact power of two and the transform
orthonormal. Coefficient selection modes: "all" (full 64-coefficient
vector), "approx" (deepest approximation only), "latest_pair" (deepest
approximation and detail bands).
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import LevelTooDeep

N_INTERP = 64

# orthonormal Daubechies scaling (low-pass decomposition) filters
_DB_FILTERS = {
    1: [0.7071067811865476, 0.7071067811865476],
    2: [0.48296291314453414, 0.8365163037378079, 0.22414386804201339, -0.12940952255126037],
    3: [
        0.3326705529500826, 0.8068915093110928, 0.4598775021184915,
        -0.13501102001025458, -0.08544127388202666, 0.03522629188570953,
    ],
    4: [
        0.23037781330889653, 0.7148465705529157, 0.6308807679298589,
        -0.027983769416859854, -0.18703481171909309, 0.030841381835560764,
        0.0328830116668852, -0.010597401785069032,
    ],
    5: [
        0.16010239797419293, 0.6038292697971896, 0.7243085284377729,
        0.13842814590132074, -0.24229488706638203, -0.03224486958463837,
        0.07757149384004572, -0.006241490212798274, -0.012580751999081999,
        0.0033357252854737712,
    ],
}

MODES = ("all", "approx", "latest_pair")


def _filters(phi: int) -> tuple[np.ndarray, np.ndarray]:
    if phi not in _DB_FILTERS:
        raise ValueError(f"unsupported wavelet order {phi}; expected 1..5")
    lo = np.array(_DB_FILTERS[phi])
    hi = lo[::-1].copy()
    hi[1::2] *= -1.0  # quadrature mirror
    return lo, hi


def dwt_max_level(phi: int, n: int = N_INTERP) -> int:
    """Deepest level keeping the data length at least the filter length."""
    nf = len(_DB_FILTERS[phi])
    if nf == 2:
        return int(math.log2(n))
    return max(int(math.floor(math.log2(n / (nf - 1)))), 0)


def _step(x: np.ndarray, lo: np.ndarray, hi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = len(x)
    half = n // 2
    idx = (2 * np.arange(half)[:, None] + np.arange(len(lo))[None, :]) % n
    windows = x[idx]
    return windows @ lo, windows @ hi


def _inverse_step(a: np.ndarray, d: np.ndarray, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    n = 2 * len(a)
    x = np.zeros(n)
    for k in range(len(a)):
        for m in range(len(lo)):
            x[(2 * k + m) % n] += lo[m] * a[k] + hi[m] * d[k]
    return x


def interpolate64(x) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    src = np.linspace(0.0, 1.0, len(x))
    dst = np.linspace(0.0, 1.0, N_INTERP)
    return np.interp(dst, src, x)


def dwt_coeff_bands(phi: int, level: int, x) -> list[np.ndarray]:
    """Full decomposition as [a_level, d_level, d_{level-1}, ..., d_1]."""
    if level < 1 or level > dwt_max_level(phi):
        raise LevelTooDeep(f"level {level} outside 1..{dwt_max_level(phi)} for order {phi}")
    lo, hi = _filters(phi)
    a = interpolate64(x)
    details = []
    for _ in range(level):
        a, d = _step(a, lo, hi)
        details.append(d)
    return [a] + details[::-1]


def dwt(phi: int, level: int, mode: str, x) -> np.ndarray:
    """Wavelet feature vector of a DLP; see module docstring for modes."""
    if mode not in MODES:
        raise ValueError(f"unknown coefficient mode {mode!r}; expected one of {MODES}")
    bands = dwt_coeff_bands(phi, level, x)
    if mode == "approx":
        return bands[0]
    if mode == "latest_pair":
        return np.concatenate(bands[:2])
    return np.concatenate(bands)


def dwt_reconstruct(phi: int, bands: list[np.ndarray]) -> np.ndarray:
    """Inverse transform of dwt_coeff_bands output (round-trip checks)."""
    lo, hi = _filters(phi)
    a = bands[0]
    for d in bands[1:]:
        a = _inverse_step(a, d, lo, hi)
    return a
