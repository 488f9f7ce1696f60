import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dsndiv.errors import DimensionMismatch, EmptyInput, ValidationError
from dsndiv.similarity import (
    build_similarity_matrix,
    set_similarity,
    set_similarity_matrix,
    similarity_exp,
    similarity_from_dissimilarity,
    similarity_reciprocal,
    weighted_euclidean,
)

STUDY_X = [[1, 0], [1, 1], [0, 0]]


def test_weighted_euclidean_examples():
    assert weighted_euclidean([0.2, 0.7], [0.2, 0.7], [0.5, 0.5]) == 0.0
    assert weighted_euclidean([1, 0], [0, 0], [1, 0]) == pytest.approx(1.0)
    assert weighted_euclidean([1, 1], [0, 0], [0.5, 0.5]) == pytest.approx(1.0)


def test_weighted_euclidean_zero_weight_coordinate_ignored():
    assert weighted_euclidean([1, 0], [0, 0], [0, 1]) == 0.0


def test_weighted_euclidean_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        weighted_euclidean([1, 0], [0, 0, 0], [0.5, 0.5])


def test_kernels():
    assert similarity_exp(0) == 1.0
    assert similarity_exp(1) == pytest.approx(0.367879, abs=1e-6)
    assert similarity_reciprocal(0) == 1.0
    assert similarity_reciprocal(1) == 0.5
    assert similarity_reciprocal(3) == 0.25
    ds = np.linspace(0, 50, 200)
    for kernel in (similarity_exp, similarity_reciprocal):
        values = kernel(ds)
        assert np.all(np.diff(values) < 0)
        assert values[-1] < 0.05
    with pytest.raises(ValidationError):
        similarity_exp(-1)


def test_study_attribute_similarity():
    Z = build_similarity_matrix(STUDY_X, [0.5, 0.5], "exp")
    assert Z[0, 1] == pytest.approx(math.exp(-math.sqrt(0.5)))
    assert Z[0, 2] == pytest.approx(math.exp(-math.sqrt(0.5)))
    assert Z[1, 2] == pytest.approx(math.exp(-1))
    np.testing.assert_array_equal(np.diag(Z), 1.0)


def test_identical_rows_give_all_ones():
    X = np.tile([0.3, 0.9, 0.1], (4, 1))
    np.testing.assert_allclose(build_similarity_matrix(X, [0.2, 0.3, 0.5]), np.ones((4, 4)))


def test_weight_on_constant_column_gives_all_ones():
    X = np.array([[0.5, 0.0], [0.5, 1.0], [0.5, 0.3]])
    np.testing.assert_allclose(build_similarity_matrix(X, [1.0, 0.0], "reciprocal"), np.ones((3, 3)))


def test_build_rejects_bad_weights_and_kernel():
    with pytest.raises(ValidationError):
        build_similarity_matrix(STUDY_X, [0.7, 0.7])
    with pytest.raises(ValidationError):
        build_similarity_matrix(STUDY_X, [0.5, 0.5], "gaussian")
    with pytest.raises(DimensionMismatch):
        build_similarity_matrix(STUDY_X, [1 / 3] * 3)


def test_raw_dissimilarity_mode():
    Zbar = np.array([[0, 0.2], [0.2, 0]])
    np.testing.assert_allclose(similarity_from_dissimilarity(Zbar), [[1, 0.8], [0.8, 1]])
    with pytest.raises(ValidationError):
        similarity_from_dissimilarity([[0, 1.5], [1.5, 0]])
    with pytest.raises(ValidationError):
        similarity_from_dissimilarity([[0.1, 0.2], [0.2, 0]])


def test_set_coefficients():
    A, B = {"a", "b"}, {"b", "c"}
    for coeff in ("jaccard", "dice", "simpson"):
        assert set_similarity(A, A, coeff) == 1.0
    assert set_similarity(A, B, "jaccard") == pytest.approx(1 / 3)
    assert set_similarity(A, B, "dice") == pytest.approx(0.5)
    assert set_similarity(A, B, "simpson") == pytest.approx(0.5)
    assert set_similarity({"a"}, {"a", "b", "c"}, "simpson") == 1.0


def test_set_coefficients_empty():
    with pytest.raises(EmptyInput):
        set_similarity(set(), set(), "jaccard")
    with pytest.raises(EmptyInput):
        set_similarity(set(), {"a"}, "simpson")
    assert set_similarity(set(), {"a"}, "jaccard") == 0.0


def test_set_similarity_matrix_symmetric():
    Z = set_similarity_matrix([["a", "b"], ["b", "c"], ["c"]], "dice")
    np.testing.assert_allclose(Z, Z.T)
    assert Z[0, 2] == 0.0


tokens = st.sets(st.sampled_from("abcdefgh"), min_size=1)


@given(tokens, tokens)
def test_jaccard_dice_simpson_ordering(A, B):
    j = set_similarity(A, B, "jaccard")
    d = set_similarity(A, B, "dice")
    s = set_similarity(A, B, "simpson")
    assert j <= d + 1e-15 and d <= s + 1e-15


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_matrix_properties_and_distance_axioms(seed):
    rng = np.random.default_rng(seed)
    n, a = int(rng.integers(1, 7)), int(rng.integers(1, 5))
    X = rng.random((n, a))
    w = rng.dirichlet(np.ones(a))
    for kernel in ("exp", "reciprocal"):
        Z = build_similarity_matrix(X, w, kernel)
        np.testing.assert_array_equal(Z, Z.T)
        np.testing.assert_array_equal(np.diag(Z), 1.0)
        assert np.all((Z > 0) & (Z <= 1))
    x, y, z = rng.random((3, a))
    dxy = weighted_euclidean(x, y, w)
    assert dxy == pytest.approx(weighted_euclidean(y, x, w), abs=1e-15)
    assert weighted_euclidean(x, z, w) <= dxy + weighted_euclidean(y, z, w) + 1e-9
    uniform = np.full(a, 1 / a)
    assert weighted_euclidean(x, y, uniform) ** 2 == pytest.approx(np.sum((x - y) ** 2) / a, abs=1e-12)
