"""Correlation measures and simplex-constrained weight estimation."""

from dsndiv.estimation.correlation import mic, pearson, spearman
from dsndiv.estimation.estimate import (
    CORRELATION_KINDS,
    EstimationResult,
    StartRecord,
    StudyDataset,
    correlation_objective,
    diversity_profile,
    estimate_weights,
    initial_points,
)
from dsndiv.estimation.simplex import project_to_simplex, simplex_pattern_search

__all__ = [
    "CORRELATION_KINDS",
    "EstimationResult",
    "StartRecord",
    "StudyDataset",
    "correlation_objective",
    "diversity_profile",
    "estimate_weights",
    "initial_points",
    "mic",
    "pearson",
    "project_to_simplex",
    "simplex_pattern_search",
    "spearman",
]
