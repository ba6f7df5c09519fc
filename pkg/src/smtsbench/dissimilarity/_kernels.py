"""Numba kernels for the banded dynamic-program distances, KSD and MPD.

All DP measures use a Sakoe-Chiba band |i - j| <= w; cells outside the band
are unreachable (+inf, or 0 for the LCSS length table where that is the
correct lower bound). DTW deliberately returns the accumulated *squared*
cost without a final square root: every downstream consumer (1NN argmin,
clustering orderings) is invariant under monotone transforms, and this keeps
the recurrence exactly as stated.
"""

from __future__ import annotations

import numpy as np
from numba import njit, prange

INF = np.inf

# kind codes for the fused matrix driver
DTW, ERP, ERS, LCSS, MSM, TWED, KSD = 0, 1, 2, 3, 4, 5, 6


@njit(cache=True)
def dtw_sq(x, y, w):
    n, m = len(x), len(y)
    d = np.full((n + 1, m + 1), INF)
    d[0, 0] = 0.0
    for i in range(1, n + 1):
        lo = max(1, i - w)
        hi = min(m, i + w)
        for j in range(lo, hi + 1):
            cost = (x[i - 1] - y[j - 1]) ** 2
            d[i, j] = cost + min(d[i - 1, j], d[i, j - 1], d[i - 1, j - 1])
    return d[n, m]


@njit(cache=True)
def erp_dist(x, y, w, g):
    n, m = len(x), len(y)
    d = np.full((n + 1, m + 1), INF)
    d[0, 0] = 0.0
    for i in range(1, min(n, w) + 1):
        d[i, 0] = d[i - 1, 0] + abs(x[i - 1] - g)
    for j in range(1, min(m, w) + 1):
        d[0, j] = d[0, j - 1] + abs(y[j - 1] - g)
    for i in range(1, n + 1):
        lo = max(1, i - w)
        hi = min(m, i + w)
        for j in range(lo, hi + 1):
            d[i, j] = min(
                d[i - 1, j - 1] + abs(x[i - 1] - y[j - 1]),
                d[i - 1, j] + abs(x[i - 1] - g),
                d[i, j - 1] + abs(y[j - 1] - g),
            )
    return d[n, m]


@njit(cache=True)
def ers_dist(x, y, w, eps):
    # edit distance on real sequences: subst cost 0 if |x-y| <= eps else 1,
    # insert/delete cost 1
    n, m = len(x), len(y)
    d = np.full((n + 1, m + 1), INF)
    d[0, 0] = 0.0
    for i in range(1, min(n, w) + 1):
        d[i, 0] = float(i)
    for j in range(1, min(m, w) + 1):
        d[0, j] = float(j)
    for i in range(1, n + 1):
        lo = max(1, i - w)
        hi = min(m, i + w)
        for j in range(lo, hi + 1):
            sub = 0.0 if abs(x[i - 1] - y[j - 1]) <= eps else 1.0
            d[i, j] = min(d[i - 1, j - 1] + sub, d[i - 1, j] + 1.0, d[i, j - 1] + 1.0)
    return d[n, m]


@njit(cache=True)
def lcss_dist(x, y, w, eps):
    # 1 - L / min(|x|, |y|) with matches only inside the band
    n, m = len(x), len(y)
    length = np.zeros((n + 1, m + 1), dtype=np.int64)
    for i in range(1, n + 1):
        lo = max(1, i - w)
        hi = min(m, i + w)
        for j in range(lo, hi + 1):
            if abs(x[i - 1] - y[j - 1]) <= eps:
                length[i, j] = length[i - 1, j - 1] + 1
            else:
                length[i, j] = max(length[i - 1, j], length[i, j - 1])
    return 1.0 - length[n, m] / min(n, m)


@njit(cache=True)
def _msm_cost(new, anchor, other, c):
    # split/merge cost: c when `new` lies between its neighbours, otherwise
    # c plus the smaller adjacent gap
    if (anchor <= new <= other) or (anchor >= new >= other):
        return c
    return c + min(abs(new - anchor), abs(new - other))


@njit(cache=True)
def msm_dist(x, y, w, c):
    n, m = len(x), len(y)
    d = np.full((n + 1, m + 1), INF)
    d[1, 1] = abs(x[0] - y[0])
    for i in range(2, min(n, 1 + w) + 1):
        d[i, 1] = d[i - 1, 1] + _msm_cost(x[i - 1], x[i - 2], y[0], c)
    for j in range(2, min(m, 1 + w) + 1):
        d[1, j] = d[1, j - 1] + _msm_cost(y[j - 1], y[j - 2], x[0], c)
    for i in range(2, n + 1):
        lo = max(2, i - w)
        hi = min(m, i + w)
        for j in range(lo, hi + 1):
            d[i, j] = min(
                d[i - 1, j - 1] + abs(x[i - 1] - y[j - 1]),
                d[i - 1, j] + _msm_cost(x[i - 1], x[i - 2], y[j - 1], c),
                d[i, j - 1] + _msm_cost(y[j - 1], y[j - 2], x[i - 1], c),
            )
    return d[n, m]


@njit(cache=True)
def twed_dist(x, y, nu, lam):
    # time-warp edit distance with unit-spaced timestamps; series padded
    # with a leading 0 per the standard formulation
    n, m = len(x), len(y)
    xp = np.zeros(n + 1)
    yp = np.zeros(m + 1)
    xp[1:] = x
    yp[1:] = y
    d = np.full((n + 1, m + 1), INF)
    d[0, 0] = 0.0
    for i in range(1, n + 1):
        d[i, 0] = d[i - 1, 0] + abs(xp[i] - xp[i - 1]) + nu + lam
    for j in range(1, m + 1):
        d[0, j] = d[0, j - 1] + abs(yp[j] - yp[j - 1]) + nu + lam
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            match = (
                d[i - 1, j - 1]
                + abs(xp[i] - yp[j])
                + abs(xp[i - 1] - yp[j - 1])
                + 2.0 * nu * abs(i - j)
            )
            del_x = d[i - 1, j] + abs(xp[i] - xp[i - 1]) + nu + lam
            del_y = d[i, j - 1] + abs(yp[j] - yp[j - 1]) + nu + lam
            d[i, j] = min(match, del_x, del_y)
    return d[n, m]


@njit(cache=True)
def ksd_dist(x, y, w):
    # directional cost: each x_t matched to its best y_s with |s - t| <= w;
    # symmetrized as the root of the averaged bidirectional sums
    n, m = len(x), len(y)
    fwd = 0.0
    for t in range(n):
        lo = max(0, t - w)
        hi = min(m - 1, t + w)
        best = (x[t] - y[lo]) ** 2
        for s in range(lo + 1, hi + 1):
            c = (x[t] - y[s]) ** 2
            if c < best:
                best = c
        fwd += best
    bwd = 0.0
    for t in range(m):
        lo = max(0, t - w)
        hi = min(n - 1, t + w)
        best = (y[t] - x[lo]) ** 2
        for s in range(lo + 1, hi + 1):
            c = (y[t] - x[s]) ** 2
            if c < best:
                best = c
        bwd += best
    return np.sqrt(0.5 * (fwd + bwd))


@njit(cache=True)
def mpd_dist(x, y, w, tau):
    # matrix-profile distance over plain (non-z-normalized) window EDs
    n, m = len(x), len(y)
    nx = n - w + 1
    ny = m - w + 1
    profile = np.empty(nx + ny)
    for i in range(nx):
        best = INF
        for j in range(ny):
            s = 0.0
            for t in range(w):
                s += (x[i + t] - y[j + t]) ** 2
            if s < best:
                best = s
        profile[i] = np.sqrt(best)
    for j in range(ny):
        best = INF
        for i in range(nx):
            s = 0.0
            for t in range(w):
                s += (x[i + t] - y[j + t]) ** 2
            if s < best:
                best = s
        profile[nx + j] = np.sqrt(best)
    profile.sort()
    k = int(np.ceil(tau * (n + m)))
    if k > nx + ny:
        k = nx + ny
    return profile[k - 1]


@njit(cache=True)
def _scalar(code, x, y, w, p1, p2):
    if code == DTW:
        return dtw_sq(x, y, w)
    if code == ERP:
        return erp_dist(x, y, w, p1)
    if code == ERS:
        eps = p1
        if p2 > 0.5:  # per-pair automatic threshold max(std)/4
            eps = max(np.std(x), np.std(y)) / 4.0
        return ers_dist(x, y, w, eps)
    if code == LCSS:
        return lcss_dist(x, y, w, p1)
    if code == MSM:
        return msm_dist(x, y, w, p1)
    if code == TWED:
        return twed_dist(x, y, p1, p2)
    if code == KSD:
        return ksd_dist(x, y, w)
    return np.nan


@njit(cache=True, parallel=True)
def banded_pairwise(code, series, w, p1, p2):
    n = series.shape[0]
    out = np.zeros((n, n))
    for i in prange(n - 1):
        for j in range(i + 1, n):
            d = _scalar(code, series[i], series[j], w, p1, p2)
            out[i, j] = d
            out[j, i] = d
    return out


@njit(cache=True, parallel=True)
def mpd_pairwise(series, w, tau):
    n = series.shape[0]
    out = np.zeros((n, n))
    for i in prange(n - 1):
        for j in range(i + 1, n):
            d = mpd_dist(series[i], series[j], w, tau)
            out[i, j] = d
            out[j, i] = d
    return out
