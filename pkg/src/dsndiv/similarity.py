"""Similarity and dissimilarity matrices from attributes or attribute sets."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from typing import Literal

import numpy as np
from numpy.typing import ArrayLike, NDArray

from dsndiv.constants import RANGE_TOL, SUM_TOL
from dsndiv.errors import DimensionMismatch, EmptyInput, ValidationError

Kernel = Literal["exp", "reciprocal"]
SetCoefficient = Literal["jaccard", "dice", "simpson"]

KERNELS = ("exp", "reciprocal")
SET_COEFFICIENTS = ("jaccard", "dice", "simpson")


def validate_weights(w: ArrayLike) -> NDArray[np.float64]:
    w = np.asarray(w, dtype=float)
    if w.ndim != 1 or w.size == 0:
        raise ValidationError("weights must be a non-empty 1-D vector")
    if np.any(w < -RANGE_TOL) or np.any(w > 1 + RANGE_TOL):
        raise ValidationError("weights must lie in [0, 1]")
    if abs(w.sum() - 1.0) > SUM_TOL:
        raise ValidationError(f"weights sum to {w.sum():.12g}, expected 1")
    return np.clip(w, 0.0, 1.0)


def validate_attributes(X: ArrayLike) -> NDArray[np.float64]:
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    if X.ndim != 2 or X.shape[0] == 0 or X.shape[1] == 0:
        raise ValidationError("attribute matrix must be n x a with n, a >= 1")
    if np.any(X < 0) or np.any(X > 1):
        raise ValidationError("attribute entries must lie in [0, 1]")
    return X


def weighted_euclidean(xi: ArrayLike, xj: ArrayLike, w: ArrayLike) -> float:
    """``sqrt((xi - xj)^T diag(w) (xi - xj))``."""
    xi = np.asarray(xi, dtype=float).ravel()
    xj = np.asarray(xj, dtype=float).ravel()
    w = np.asarray(w, dtype=float).ravel()
    if not (xi.size == xj.size == w.size):
        raise DimensionMismatch(f"dimensions differ: {xi.size}, {xj.size}, {w.size}")
    diff = xi - xj
    return float(np.sqrt(np.dot(w, diff * diff)))


def weighted_distance_matrix(X: ArrayLike, w: ArrayLike) -> NDArray[np.float64]:
    X = validate_attributes(X)
    w = np.asarray(w, dtype=float).ravel()
    if w.size != X.shape[1]:
        raise DimensionMismatch(f"{X.shape[1]} attributes but {w.size} weights")
    diff = X[:, None, :] - X[None, :, :]
    D = np.sqrt(np.einsum("ijk,k->ij", diff * diff, w))
    return 0.5 * (D + D.T)


def similarity_exp(d):
    """``exp(-d)``; works elementwise on arrays."""
    d = np.asarray(d, dtype=float)
    if np.any(d < 0):
        raise ValidationError("distance must be nonnegative")
    out = np.exp(-d)
    return float(out) if out.ndim == 0 else out


def similarity_reciprocal(d):
    """``1 / (1 + d)``; works elementwise on arrays."""
    d = np.asarray(d, dtype=float)
    if np.any(d < 0):
        raise ValidationError("distance must be nonnegative")
    out = 1.0 / (1.0 + d)
    return float(out) if out.ndim == 0 else out


_KERNEL_FUNCS = {"exp": similarity_exp, "reciprocal": similarity_reciprocal}


def build_similarity_matrix(X: ArrayLike, w: ArrayLike, kernel: Kernel = "exp") -> NDArray[np.float64]:
    """Kernel similarity of weighted Euclidean distances between attribute rows.

    The result is symmetric with a unit diagonal and entries in (0, 1].
    """
    if kernel not in _KERNEL_FUNCS:
        raise ValidationError(f"unknown kernel {kernel!r}; expected one of {KERNELS}")
    w = validate_weights(w)
    D = weighted_distance_matrix(X, w)
    Z = np.asarray(_KERNEL_FUNCS[kernel](D), dtype=float).reshape(D.shape)
    np.fill_diagonal(Z, 1.0)
    return Z


def similarity_from_dissimilarity(Zbar: ArrayLike) -> NDArray[np.float64]:
    """Use a bounded dissimilarity directly: ``Z = 1 - Zbar``.

    ``Zbar`` must be square with entries in [0, 1] and a zero diagonal.
    """
    Zbar = np.asarray(Zbar, dtype=float)
    if Zbar.ndim != 2 or Zbar.shape[0] != Zbar.shape[1]:
        raise DimensionMismatch(f"dissimilarity must be square, got shape {Zbar.shape}")
    if np.any(Zbar < 0) or np.any(Zbar > 1):
        raise ValidationError("raw dissimilarities must lie in [0, 1]")
    if np.any(np.diag(Zbar) != 0):
        raise ValidationError("raw dissimilarity diagonal must be 0")
    return 1.0 - Zbar


def set_similarity(A: Iterable, B: Iterable, coeff: SetCoefficient = "jaccard") -> float:
    A, B = set(A), set(B)
    inter = len(A & B)
    if coeff == "jaccard":
        denom = len(A | B)
        num = inter
    elif coeff == "dice":
        denom = len(A) + len(B)
        num = 2 * inter
    elif coeff == "simpson":
        denom = min(len(A), len(B))
        num = inter
    else:
        raise ValidationError(f"unknown coefficient {coeff!r}; expected one of {SET_COEFFICIENTS}")
    if denom == 0:
        raise EmptyInput(f"{coeff} coefficient undefined for empty set(s)")
    return num / denom


def set_similarity_matrix(sets: Sequence[Iterable], coeff: SetCoefficient = "jaccard") -> NDArray[np.float64]:
    family = [set(s) for s in sets]
    n = len(family)
    Z = np.ones((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            Z[i, j] = Z[j, i] = set_similarity(family[i], family[j], coeff)
    return Z
