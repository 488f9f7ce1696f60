"""Diversity and inclusion indices that account for similarity and networks."""

from dsndiv.core import (
    Population,
    attribute_variance,
    dsn,
    dsn_value,
    hill_number,
    inner_abundance,
    leinster_diversity,
    lemma1_check,
    network_density,
    network_power_series,
    parse_q,
)
from dsndiv.estimation import (
    EstimationResult,
    StudyDataset,
    diversity_profile,
    estimate_weights,
    mic,
    pearson,
    project_to_simplex,
    spearman,
)
from dsndiv.layout import Layout, double_center, embed_2d, make_layout, render_svg
from dsndiv.similarity import (
    build_similarity_matrix,
    set_similarity,
    similarity_exp,
    similarity_reciprocal,
    weighted_euclidean,
)
from dsndiv.study import (
    ComparisonTable,
    StudyDesign,
    category_focused_adjacency,
    comparison_table,
    generate_design,
    synthesize_preferences,
)

__version__ = "0.1.0"

__all__ = [
    "ComparisonTable",
    "EstimationResult",
    "Layout",
    "Population",
    "StudyDataset",
    "StudyDesign",
    "attribute_variance",
    "build_similarity_matrix",
    "category_focused_adjacency",
    "comparison_table",
    "diversity_profile",
    "double_center",
    "dsn",
    "dsn_value",
    "embed_2d",
    "estimate_weights",
    "generate_design",
    "hill_number",
    "inner_abundance",
    "leinster_diversity",
    "lemma1_check",
    "make_layout",
    "mic",
    "network_density",
    "network_power_series",
    "parse_q",
    "pearson",
    "project_to_simplex",
    "render_svg",
    "set_similarity",
    "similarity_exp",
    "similarity_reciprocal",
    "spearman",
    "synthesize_preferences",
    "weighted_euclidean",
]
