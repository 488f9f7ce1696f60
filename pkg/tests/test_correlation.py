import math
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dsndiv.errors import DegenerateVariance, SampleTooSmall, ValidationError
from dsndiv.estimation.correlation import mic, pearson, spearman

# 99th percentile of MIC over 200 permutations of a fixed m=56 sample
# (x ~ U(0,1), y = 5 + 1e-6 N(0,1), numpy seed 2024): quantiles
# 0.5/0.95/0.99 = 0.348/0.446/0.471, max 0.482.
MIC_NULL_99 = 0.471


def test_pearson_examples():
    xs = np.array([0.3, 1.2, 2.5, 4.0, 4.1])
    assert pearson(xs, 2 * xs + 1) == pytest.approx(1.0, abs=1e-15)
    assert pearson(xs, -xs) == pytest.approx(-1.0, abs=1e-15)
    # dx=(-1,0,1), dy=(-4/3,-1/3,5/3): 3 / sqrt(2 * 42/9)
    assert pearson([1, 2, 3], [1, 2, 4]) == pytest.approx(3 / math.sqrt(2 * 42 / 9), abs=1e-15)
    assert pearson([1, 2, 3], [1, 2, 4]) == pytest.approx(0.981981, abs=1e-6)


def test_pearson_constant_raises():
    with pytest.raises(DegenerateVariance):
        pearson([1, 2, 3], [4, 4, 4])


def test_pearson_input_checks():
    with pytest.raises(ValidationError):
        pearson([1, 2], [1, 2])
    with pytest.raises(ValidationError):
        pearson([1, 2, 3], [1, 2])


def test_spearman_examples():
    xs = np.array([0.1, 0.5, 0.7, 2.0, 9.0])
    assert spearman(xs, np.exp(xs)) == pytest.approx(1.0)
    assert spearman([1, 2, 3], [10, 20, 15]) == pytest.approx(0.5)
    assert spearman(xs, xs[::-1].copy() * 0 - xs) == pytest.approx(-1.0)


def test_spearman_ties_use_mid_ranks():
    # ranks of y: (1.5, 1.5, 3, 4)
    x = [1, 2, 3, 4]
    y = [5, 5, 6, 7]
    rx = np.array([1, 2, 3, 4.0])
    ry = np.array([1.5, 1.5, 3, 4])
    dx, dy = rx - rx.mean(), ry - ry.mean()
    expected = float(dx @ dy / math.sqrt((dx @ dx) * (dy @ dy)))
    assert spearman(x, y) == pytest.approx(expected, abs=1e-15)


def test_spearman_all_tied_raises():
    with pytest.raises(DegenerateVariance):
        spearman([1, 1, 1], [1, 2, 3])


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_affine_and_monotone_invariance(seed):
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(20)
    y = x + rng.standard_normal(20)
    a, b = rng.uniform(0.1, 10, 2)
    c, d = rng.uniform(-5, 5, 2)
    assert abs(pearson(a * x + c, b * y + d) - pearson(x, y)) <= 1e-12
    assert abs(spearman(a * x + c, y) - spearman(x, y)) <= 1e-12
    assert spearman(np.exp(x), y**3) == pytest.approx(spearman(x, y), abs=1e-12)


# --- MIC ------------------------------------------------------------------


def _brute_mic(x, y, alpha=0.6):
    """Enumerate every pair of axis partitions; MI computed from cell counts."""
    m = len(x)
    bound = max(int(m**alpha), 4)

    def partitions(v, bins):
        order = sorted(range(m), key=lambda i: v[i])
        vals = [v[i] for i in order]
        cuts = [t for t in range(1, m) if vals[t] != vals[t - 1]]
        for chosen in combinations(cuts, bins - 1):
            label = [0] * m
            edges = list(chosen) + [m]
            b = 0
            for t, idx in enumerate(order):
                while t >= edges[b]:
                    b += 1
                label[idx] = b
            yield label

    best = 0.0
    for k in range(2, bound // 2 + 1):
        for l in range(2, bound // k + 1):
            for lx in partitions(x, k):
                for ly in partitions(y, l):
                    joint = {}
                    for a, b in zip(lx, ly):
                        joint[(a, b)] = joint.get((a, b), 0) + 1
                    px = [lx.count(i) / m for i in range(k)]
                    py = [ly.count(j) / m for j in range(l)]
                    mi = sum(c / m * math.log((c / m) / (px[a] * py[b])) for (a, b), c in joint.items())
                    best = max(best, mi / math.log(min(k, l)))
    return best


@pytest.mark.parametrize("seed", range(6))
def test_mic_matches_exhaustive_enumeration(seed):
    rng = np.random.default_rng(seed)
    m = [10, 14, 20, 20, 16, 18][seed]
    x = rng.random(m)
    y = x**2 + 0.3 * rng.random(m) if seed % 2 else rng.random(m)
    if seed >= 4:
        x = np.round(x * 4) / 4  # ties
    assert mic(x, y) == pytest.approx(_brute_mic(list(x), list(y)), abs=1e-12)


def test_mic_functional_relations():
    x = np.linspace(0, 1, 56)
    assert mic(x, 3 * x - 1) >= 0.99
    assert mic(x, (x - 0.5) ** 2) >= 0.9
    assert abs(pearson(x, (x - 0.5) ** 2)) < 1e-12


def test_mic_null_sample_below_permutation_threshold():
    rng = np.random.default_rng(7)
    x = rng.random(56)
    y = 5 + 1e-6 * rng.standard_normal(56)
    value = mic(x, y)
    assert value <= MIC_NULL_99
    assert value < mic(x, 2 * x)


def test_mic_sample_size_checks():
    with pytest.raises(SampleTooSmall):
        mic(range(7), range(7))
    with pytest.raises(ValidationError):
        mic(np.arange(201.0), np.arange(201.0))


def test_mic_constant_is_zero():
    assert mic(np.arange(20.0), np.ones(20)) == 0.0


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_mic_symmetric_and_rank_invariant(seed):
    rng = np.random.default_rng(seed)
    x = rng.random(30)
    y = np.sin(4 * x) + 0.5 * rng.random(30)
    base = mic(x, y)
    assert mic(y, x) == pytest.approx(base, abs=1e-12)
    assert mic(np.exp(3 * x), -1 / (y + 5)) == base
