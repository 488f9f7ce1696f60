"""Diversity indices built from proportions, similarity, and a network.

The central quantity is the vector of *inner abundances*
``((L - Zbar * E) @ p)_i = sum_j (1 - Zbar_ij * E_ij) * p_j`` where ``L`` is
the all-ones matrix, ``Zbar = L - Z`` the dissimilarity and ``*`` the
entrywise product.  Every index in this module is a power mean of the
reciprocal inner abundances weighted by ``p``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike, NDArray

from dsndiv.constants import RANGE_TOL, SUM_TOL
from dsndiv.errors import DegenerateInner, DimensionMismatch, ValidationError

__all__ = [
    "Population",
    "parse_q",
    "validate_proportions",
    "validate_unit_matrix",
    "inner_abundance",
    "hill_number",
    "dsn",
    "dsn_value",
    "leinster_diversity",
    "network_density",
    "network_power_series",
    "attribute_variance",
    "lemma1_check",
]


def parse_q(q: float | str) -> float:
    """Return ``q`` as a float, accepting ``"inf"`` as the infinity marker."""
    if isinstance(q, str):
        text = q.strip().lower()
        q = math.inf if text in {"inf", "infinity", "+inf"} else float(text)
    q = float(q)
    if math.isnan(q) or q < 0:
        raise ValidationError(f"q must be >= 0, got {q}")
    return q


def validate_proportions(p: ArrayLike) -> NDArray[np.float64]:
    arr = np.asarray(p, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise ValidationError("proportions must be a non-empty 1-D vector")
    if not np.all(np.isfinite(arr)):
        raise ValidationError("proportions must be finite")
    if np.any(arr < 0) or np.any(arr > 1):
        raise ValidationError("proportions must lie in [0, 1]")
    if abs(arr.sum() - 1.0) > SUM_TOL:
        raise ValidationError(f"proportions sum to {arr.sum():.12g}, expected 1")
    return arr


def validate_unit_matrix(M: ArrayLike, n: int | None = None, name: str = "matrix") -> NDArray[np.float64]:
    """Check that ``M`` is square (of order ``n`` if given) with entries in [0, 1]."""
    arr = np.asarray(M, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {arr.shape}")
    if n is not None and arr.shape[0] != n:
        raise DimensionMismatch(f"{name} has order {arr.shape[0]}, expected {n}")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name} must be finite")
    if np.any(arr < -RANGE_TOL) or np.any(arr > 1 + RANGE_TOL):
        raise ValidationError(f"{name} entries must lie in [0, 1]")
    return np.clip(arr, 0.0, 1.0)


@dataclass(frozen=True)
class Population:
    """One group: category proportions, similarity ``Z`` and adjacency ``E``.

    ``E`` is a directed, possibly weighted adjacency; the diagonal may be 1.
    """

    p: NDArray[np.float64]
    Z: NDArray[np.float64]
    E: NDArray[np.float64]
    label: str = ""
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        p = validate_proportions(self.p)
        n = p.size
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "Z", validate_unit_matrix(self.Z, n, "Z"))
        object.__setattr__(self, "E", validate_unit_matrix(self.E, n, "E"))

    @property
    def n(self) -> int:
        return self.p.size

    @property
    def Zbar(self) -> NDArray[np.float64]:
        return 1.0 - self.Z

    def with_E(self, E: ArrayLike) -> "Population":
        return Population(self.p, self.Z, np.asarray(E, dtype=float), self.label, dict(self.meta))

    def with_Z(self, Z: ArrayLike) -> "Population":
        return Population(self.p, np.asarray(Z, dtype=float), self.E, self.label, dict(self.meta))


def inner_abundance(p: ArrayLike, Z: ArrayLike, E: ArrayLike) -> NDArray[np.float64]:
    """``(L - Zbar * E) @ p`` with ``Zbar = 1 - Z``."""
    p = np.asarray(p, dtype=float)
    Zbar = 1.0 - np.asarray(Z, dtype=float)
    return (1.0 - Zbar * np.asarray(E, dtype=float)) @ p


def _power_mean_diversity(p: NDArray[np.float64], inner: NDArray[np.float64], q: float) -> float:
    # Categories with p_i == 0 carry no weight in any branch.
    support = p > 0
    ps = p[support]
    xs = inner[support]
    if q == 1.0:
        if np.any(xs <= 0):
            raise DegenerateInner("inner abundance is zero for a present category at q=1")
        # log space: the product of many sub-unit factors underflows for large n
        return float(np.exp(-np.dot(ps, np.log(xs))))
    if math.isinf(q):
        top = xs.max()
        if top <= 0:
            raise DegenerateInner("all inner abundances are zero at q=inf")
        return float(1.0 / top)
    if q < 1 and np.any(xs <= 0):
        raise DegenerateInner(f"inner abundance is zero for a present category at q={q}")
    total = float(np.dot(ps, xs ** (q - 1.0)))
    if total <= 0:
        raise DegenerateInner(f"inner abundances vanish on the support at q={q}")
    return total ** (1.0 / (1.0 - q))


def dsn_value(p: ArrayLike, Z: ArrayLike, E: ArrayLike, q: float | str) -> float:
    """Similarity- and network-sensitive diversity of raw arrays.

    Parameters
    ----------
    p : array_like, shape (n,)
        Category proportions.
    Z : array_like, shape (n, n)
        Similarity in [0, 1].
    E : array_like, shape (n, n)
        Directed adjacency in [0, 1].
    q : float or "inf"
        Order. ``q == 1`` and ``q == inf`` select the product and max branches;
        no other value switches branch.

    Raises
    ------
    DegenerateInner
        If a present category has zero inner abundance where its reciprocal
        is needed.
    """
    q = parse_q(q)
    p = np.asarray(p, dtype=float)
    return _power_mean_diversity(p, inner_abundance(p, Z, E), q)


def dsn(pop: Population, q: float | str) -> float:
    """DSN index of a validated :class:`Population`."""
    return dsn_value(pop.p, pop.Z, pop.E, q)


def leinster_diversity(p: ArrayLike, Z: ArrayLike, q: float | str) -> float:
    """Similarity-sensitive diversity, i.e. the power mean of ``1 / (Z @ p)``."""
    q = parse_q(q)
    p = validate_proportions(p)
    Z = validate_unit_matrix(Z, p.size, "Z")
    return _power_mean_diversity(p, Z @ p, q)


def hill_number(p: ArrayLike, q: float | str) -> float:
    """True diversity (Hill number) of order ``q``.

    >>> round(hill_number([0.8, 0.1, 0.1], 2), 6)
    1.515152
    """
    q = parse_q(q)
    p = validate_proportions(p)
    nz = p[p > 0]
    if q == 0:
        return float(nz.size)
    if q == 1:
        return float(np.exp(-np.sum(nz * np.log(nz))))
    if math.isinf(q):
        return float(1.0 / nz.max())
    return float(np.sum(nz**q) ** (1.0 / (1.0 - q)))


def network_density(E: ArrayLike) -> float:
    """Sum of adjacency weights over ``n**2`` (self-loops included)."""
    E = validate_unit_matrix(E, name="E")
    n = E.shape[0]
    return float(E.sum() / (n * n))


def network_power_series(E: ArrayLike, n_terms: int, rho: float, clamp: bool = False) -> NDArray[np.float64]:
    """Discounted multi-hop adjacency ``E + rho E^2 + ... + rho^(k-1) E^k``.

    With ``clamp`` the result is truncated entrywise to [0, 1] so it can be
    fed back into :func:`dsn_value` as an adjacency.
    """
    E = validate_unit_matrix(E, name="E")
    if int(n_terms) != n_terms or n_terms < 1:
        raise ValidationError("n_terms must be a positive integer")
    if not 0.0 <= rho <= 1.0:
        raise ValidationError("rho must lie in [0, 1]")
    term = E.copy()
    total = E.copy()
    for _ in range(int(n_terms) - 1):
        term = rho * (term @ E)
        total = total + term
    if clamp:
        total = np.clip(total, 0.0, 1.0)
    return total


def attribute_variance(x: ArrayLike) -> float:
    """Population variance ``(1/n) sum (x_i - mean)^2``."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size == 0:
        raise ValidationError("x must be a non-empty 1-D vector")
    return float(np.mean((x - x.mean()) ** 2))


def lemma1_check(x: ArrayLike) -> tuple[float, float]:
    """Both sides of the pairwise-spread identity as it is usually quoted.

    Returns ``(sum_i sum_j (x_i - x_j)^2, n * sum_i (x_i - mean)^2)``; the left
    side is evaluated with an explicit double loop.  Note the full double sum
    counts every unordered pair twice, so in exact arithmetic the left side is
    *twice* the right side.  Test oracle only.
    """
    xs = [float(v) for v in np.asarray(x, dtype=float).ravel()]
    if not xs:
        raise ValidationError("x must be non-empty")
    n = len(xs)
    left = 0.0
    for xi in xs:
        for xj in xs:
            left += (xi - xj) ** 2
    mean = sum(xs) / n
    right = n * sum((xi - mean) ** 2 for xi in xs)
    return left, right
