"""Pearson, Spearman and grid-based maximal-information correlations."""

from __future__ import annotations

import math
from itertools import combinations

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.stats import rankdata

from dsndiv.errors import DegenerateVariance, SampleTooSmall, ValidationError

__all__ = ["pearson", "spearman", "mic", "MIC_ALPHA", "MIC_MAX_SAMPLES"]

MIC_ALPHA = 0.6
MIC_MAX_SAMPLES = 200
# partitions evaluated per vectorized batch in the MIC search
_BATCH = 128


def _paired(xs: ArrayLike, ys: ArrayLike, min_len: int = 3) -> tuple[NDArray, NDArray]:
    x = np.asarray(xs, dtype=float).ravel()
    y = np.asarray(ys, dtype=float).ravel()
    if x.size != y.size:
        raise ValidationError(f"length mismatch: {x.size} vs {y.size}")
    if x.size < min_len:
        raise ValidationError(f"need at least {min_len} paired observations, got {x.size}")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise ValidationError("correlation inputs must be finite")
    return x, y


def pearson(xs: ArrayLike, ys: ArrayLike) -> float:
    """Product-moment correlation; raises DegenerateVariance on a constant input."""
    x, y = _paired(xs, ys)
    if np.all(x == x[0]) or np.all(y == y[0]):
        raise DegenerateVariance("pearson correlation undefined for a constant vector")
    dx = x - x.mean()
    dy = y - y.mean()
    r = float(np.dot(dx, dy) / math.sqrt(np.dot(dx, dx) * np.dot(dy, dy)))
    return max(-1.0, min(1.0, r))


def spearman(xs: ArrayLike, ys: ArrayLike) -> float:
    """Pearson correlation of mid-ranks (ties share their average rank)."""
    x, y = _paired(xs, ys)
    return pearson(rankdata(x, method="average"), rankdata(y, method="average"))


def _xlogx(c: NDArray) -> NDArray:
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(c > 0, c * np.log(np.where(c > 0, c, 1.0)), 0.0)


def _dense_rank(v: NDArray) -> tuple[NDArray, int]:
    uniq, inv = np.unique(v, return_inverse=True)
    return inv, uniq.size


def _half_search(dp_axis: NDArray, enum_axis: NDArray, bound: int) -> float:
    """Best normalized MI over grids whose ``enum_axis`` side has few bins.

    Every partition of ``enum_axis`` into ``l`` bins (``l*l <= bound``) is
    enumerated; for each, the optimal partition of ``dp_axis`` into ``k``
    contiguous bins is found exactly by dynamic programming, because the
    conditional entropy is additive over columns.
    """
    m = dp_axis.size
    order = np.argsort(dp_axis, kind="stable")
    sorted_dp = dp_axis[order]
    # Cuts are only allowed between distinct values so ties share a bin.
    cut_pos = np.flatnonzero(sorted_dp[1:] != sorted_dp[:-1]) + 1
    positions = np.concatenate(([0], cut_pos, [m]))
    n_pos = positions.size
    if n_pos < 3:
        return 0.0
    seg_len = positions[None, :] - positions[:, None]
    valid = seg_len > 0
    # c*log(c) for every possible integer count
    xlogx_table = _xlogx(np.arange(m + 1, dtype=float))
    tot_term = xlogx_table[np.clip(seg_len, 0, None)]

    ranks, n_distinct = _dense_rank(enum_axis)
    ranks_in_order = ranks[order]
    best = 0.0
    l_max = int(math.isqrt(bound))
    for n_rows in range(2, min(l_max, n_distinct) + 1):
        k_max = min(bound // n_rows, n_pos - 1)
        if k_max < 2:
            continue
        all_cuts = np.array(list(combinations(range(1, n_distinct), n_rows - 1)), dtype=int)
        for start in range(0, len(all_cuts), _BATCH):
            cuts = all_cuts[start : start + _BATCH]
            labels = (ranks_in_order[None, :, None] >= cuts[:, None, :]).sum(axis=2)
            onehot = labels[:, :, None] == np.arange(n_rows)[None, None, :]
            cum = np.zeros((len(cuts), m + 1, n_rows), dtype=np.intp)
            cum[:, 1:, :] = np.cumsum(onehot, axis=1)
            cum = cum[:, positions, :]
            row_counts = cum[:, -1, :]
            h_rows = math.log(m) - xlogx_table[row_counts].sum(axis=1) / m
            cell = np.clip(cum[:, None, :, :] - cum[:, :, None, :], 0, None)
            # val[a, b] = sum_r c_r log(c_r / len) for the column [pos_a, pos_b)
            val = xlogx_table[cell].sum(axis=3) - tot_term[None]
            val = np.where(valid[None], val, -np.inf)
            F = val[:, 0, :]
            for k in range(2, k_max + 1):
                F = np.max(F[:, :, None] + val, axis=1)
                mi = h_rows + F[:, -1] / m
                score = float(np.max(mi)) / math.log(min(k, n_rows))
                if score > best:
                    best = score
    return best


def mic(xs: ArrayLike, ys: ArrayLike, alpha: float = MIC_ALPHA) -> float:
    """Maximal information coefficient by exact search over axis partitions.

    Grids with ``k`` x-bins and ``l`` y-bins satisfy ``k * l <= m ** alpha``;
    mutual information is normalized by ``log(min(k, l))``.  Only the sample
    order on each axis matters, so the score is invariant under strictly
    monotone transforms of either variable.

    Raises
    ------
    SampleTooSmall
        For fewer than 8 observations.
    """
    x = np.asarray(xs, dtype=float).ravel()
    y = np.asarray(ys, dtype=float).ravel()
    if x.size != y.size:
        raise ValidationError(f"length mismatch: {x.size} vs {y.size}")
    if x.size < 8:
        raise SampleTooSmall(f"MIC needs at least 8 observations, got {x.size}")
    if x.size > MIC_MAX_SAMPLES:
        raise ValidationError(f"exhaustive MIC is capped at {MIC_MAX_SAMPLES} observations")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise ValidationError("MIC inputs must be finite")
    bound = max(int(x.size**alpha), 4)
    score = max(_half_search(x, y, bound), _half_search(y, x, bound))
    return min(1.0, score)
