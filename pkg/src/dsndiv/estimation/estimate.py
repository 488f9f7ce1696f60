"""Attribute-weight estimation by maximizing correlation with performance."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.optimize import minimize

from dsndiv.core import dsn_value, parse_q, validate_proportions, validate_unit_matrix
from dsndiv.errors import (
    ComputationError,
    DegenerateVariance,
    DimensionMismatch,
    NoImprovement,
    ValidationError,
)
from dsndiv.estimation.correlation import mic, pearson, spearman
from dsndiv.estimation.simplex import project_to_simplex, simplex_pattern_search
from dsndiv.similarity import KERNELS, build_similarity_matrix, validate_attributes

log = logging.getLogger(__name__)

CorrelationKind = Literal["pearson", "spearman", "mic"]
CORRELATION_KINDS = ("pearson", "spearman", "mic")
FD_STEP = 1e-6

_CORRELATIONS = {"pearson": pearson, "spearman": spearman, "mic": mic}


@dataclass(frozen=True)
class StudyDataset:
    """``r`` populations sharing one attribute matrix, plus performance ``ys``.

    Attributes
    ----------
    X : (n, a) array
        Category attributes in [0, 1], common to every population.
    proportions : (r, n) array
    adjacency : (r, n, n) array
    ys : (r,) array
    q : float
    kernel : {"exp", "reciprocal"}
    labels : tuple of str
    """

    X: NDArray[np.float64]
    proportions: NDArray[np.float64]
    adjacency: NDArray[np.float64]
    ys: NDArray[np.float64]
    q: float = 2.0
    kernel: str = "exp"
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        X = validate_attributes(self.X)
        P = np.asarray(self.proportions, dtype=float)
        E = np.asarray(self.adjacency, dtype=float)
        ys = np.asarray(self.ys, dtype=float).ravel()
        n = X.shape[0]
        if P.ndim != 2 or P.shape[1] != n:
            raise DimensionMismatch(f"proportions must be (r, {n}), got {P.shape}")
        r = P.shape[0]
        if r < 3:
            raise ValidationError(f"a study needs at least 3 populations, got {r}")
        if E.shape != (r, n, n):
            raise DimensionMismatch(f"adjacency must be ({r}, {n}, {n}), got {E.shape}")
        if ys.size != r:
            raise DimensionMismatch(f"ys has {ys.size} entries for {r} populations")
        if not np.all(np.isfinite(ys)):
            raise ValidationError("ys must be finite")
        for k in range(r):
            validate_proportions(P[k])
            validate_unit_matrix(E[k], n, f"adjacency[{k}]")
        if self.kernel not in KERNELS:
            raise ValidationError(f"unknown kernel {self.kernel!r}")
        labels = tuple(self.labels) or tuple(f"P{k + 1}" for k in range(r))
        if len(labels) != r:
            raise DimensionMismatch("one label per population required")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "proportions", P)
        object.__setattr__(self, "adjacency", E)
        object.__setattr__(self, "ys", ys)
        object.__setattr__(self, "q", parse_q(self.q))
        object.__setattr__(self, "labels", labels)

    @property
    def r(self) -> int:
        return self.proportions.shape[0]

    @property
    def n_attributes(self) -> int:
        return self.X.shape[1]


def diversity_profile(ds: StudyDataset, w: ArrayLike) -> NDArray[np.float64]:
    """DSN value of every population under attribute weights ``w``."""
    Z = build_similarity_matrix(ds.X, w, ds.kernel)
    return np.array([dsn_value(p, Z, E, ds.q) for p, E in zip(ds.proportions, ds.adjacency)])


def correlation_objective(ds: StudyDataset, w: ArrayLike, kind: CorrelationKind) -> float:
    """Squared correlation (pearson, spearman) or MIC between ``ys`` and the profile.

    A constant profile carries no association and scores 0.
    """
    profile = diversity_profile(ds, w)
    if np.all(profile == profile[0]):
        return 0.0
    value = _CORRELATIONS[kind](ds.ys, profile)
    return value if kind == "mic" else value * value


@dataclass(frozen=True)
class StartRecord:
    initial: tuple[float, ...]
    converged: tuple[float, ...] | None
    objective: float | None
    error: str | None = None


@dataclass(frozen=True)
class EstimationResult:
    w_star: NDArray[np.float64]
    objective_value: float
    correlation_kind: str
    starts_used: int
    per_start_log: list[StartRecord]

    def to_dict(self) -> dict:
        return {
            "w_star": [float(v) for v in self.w_star],
            "objective_value": float(self.objective_value),
            "correlation_kind": self.correlation_kind,
            "starts_used": self.starts_used,
            "per_start_log": [
                {
                    "initial": list(rec.initial),
                    "converged": None if rec.converged is None else list(rec.converged),
                    "objective": rec.objective,
                    "error": rec.error,
                }
                for rec in self.per_start_log
            ],
        }


def initial_points(a: int, starts: int, seed: int) -> list[NDArray[np.float64]]:
    """Simplex centre followed by ``starts - 1`` seeded Dirichlet(1, ..., 1) draws."""
    rng = np.random.default_rng(seed)
    points = [np.full(a, 1.0 / a)]
    points.extend(rng.dirichlet(np.ones(a)) for _ in range(starts - 1))
    return points


def _ascend_smooth(objective, w0: NDArray[np.float64]) -> NDArray[np.float64]:
    a = w0.size
    res = minimize(
        lambda v: -objective(project_to_simplex(v)),
        w0,
        method="SLSQP",
        bounds=[(0.0, 1.0)] * a,
        constraints=[{"type": "eq", "fun": lambda v: np.sum(v) - 1.0}],
        options={"eps": FD_STEP, "ftol": 1e-14, "maxiter": 500},
    )
    return project_to_simplex(res.x)


def estimate_weights(
    ds: StudyDataset,
    kind: CorrelationKind = "pearson",
    starts: int = 8,
    seed: int = 0,
) -> EstimationResult:
    """Multi-start search for the simplex weights that best align DSN with ``ys``.

    Pearson uses SLSQP with forward-difference gradients; Spearman and MIC are
    piecewise constant in ``w`` and use a simplex pattern search instead.  The
    best local optimum over all starts is returned together with every start's
    outcome, since different starts may converge to different optima.
    """
    if kind not in _CORRELATIONS:
        raise ValidationError(f"unknown correlation kind {kind!r}; expected one of {CORRELATION_KINDS}")
    if int(starts) != starts or starts < 1:
        raise ValidationError("starts must be a positive integer")
    if np.all(ds.ys == ds.ys[0]):
        raise DegenerateVariance("ys is constant; correlation undefined")

    a = ds.n_attributes

    def objective(w: NDArray[np.float64]) -> float:
        return correlation_objective(ds, w, kind)

    if a == 1:
        w = np.ones(1)
        value = objective(w)
        rec = StartRecord((1.0,), (1.0,), value)
        return EstimationResult(w, value, kind, starts, [rec] * starts)

    records: list[StartRecord] = []
    best_w: NDArray[np.float64] | None = None
    best_val = -math.inf
    for idx, w0 in enumerate(initial_points(a, starts, seed)):
        try:
            if kind == "pearson":
                w = _ascend_smooth(objective, w0)
            else:
                w, _, _ = simplex_pattern_search(objective, w0)
                w = project_to_simplex(w)
            value = objective(w)
        except ComputationError as exc:
            log.debug("start %d failed: %s", idx, exc)
            records.append(StartRecord(tuple(map(float, w0)), None, None, str(exc)))
            continue
        records.append(StartRecord(tuple(map(float, w0)), tuple(map(float, w)), float(value)))
        if value > best_val:
            best_w, best_val = w, value
    if best_w is None:
        raise NoImprovement("no start produced a finite objective")
    return EstimationResult(best_w, float(best_val), kind, starts, records)
