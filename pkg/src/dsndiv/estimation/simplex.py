"""Euclidean projection onto the probability simplex and a direct search on it."""

from __future__ import annotations

from collections.abc import Callable

import numpy as np
from numpy.typing import ArrayLike, NDArray

from dsndiv.errors import ValidationError


def project_to_simplex(v: ArrayLike) -> NDArray[np.float64]:
    """Closest point (in Euclidean norm) of ``{w >= 0, sum(w) = 1}`` to ``v``.

    Sort-and-threshold algorithm, O(a log a).  The output is renormalized so
    its sum is 1 to within rounding.
    """
    v = np.asarray(v, dtype=float).ravel()
    if v.size == 0:
        raise ValidationError("cannot project an empty vector")
    if not np.all(np.isfinite(v)):
        raise ValidationError("cannot project a non-finite vector")
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    idx = np.arange(1, v.size + 1)
    rho = np.flatnonzero(u - css / idx > 0)[-1]
    theta = css[rho] / (rho + 1)
    w = np.maximum(v - theta, 0.0)
    return w / w.sum()


def simplex_pattern_search(
    f: Callable[[NDArray[np.float64]], float],
    w0: ArrayLike,
    step: float = 0.25,
    min_step: float = 1e-4,
    max_evals: int = 2000,
) -> tuple[NDArray[np.float64], float, int]:
    """Maximize ``f`` over the simplex by compass moves along ``e_i - e_j``.

    Derivative free, so suitable for piecewise-constant objectives such as
    rank correlations.  Moves that would leave the simplex are shortened to
    land on its boundary.  Returns ``(w, f(w), evaluations)``.
    """
    w = project_to_simplex(w0)
    fw = f(w)
    evals = 1
    a = w.size
    pairs = [(i, j) for i in range(a) for j in range(a) if i != j]
    while step >= min_step and evals < max_evals:
        improved = False
        for i, j in pairs:
            amount = min(step, w[j])
            if amount <= 0:
                continue
            cand = w.copy()
            cand[i] += amount
            cand[j] -= amount
            fc = f(cand)
            evals += 1
            if fc > fw:
                w, fw, improved = cand, fc, True
                break
            if evals >= max_evals:
                break
        if not improved:
            step *= 0.5
    return w, fw, evals
