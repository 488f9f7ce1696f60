"""Independent reference computations and random input generators for tests.

Nothing here calls into dsndiv; every formula is written out with plain
Python loops so it can check the vectorized library code.
"""

from __future__ import annotations

import math

import numpy as np


def brute_inner(p, Z, E):
    n = len(p)
    return [sum((1.0 - (1.0 - Z[i][j]) * E[i][j]) * p[j] for j in range(n)) for i in range(n)]


def brute_dsn(p, Z, E, q):
    inner = brute_inner(p, Z, E)
    terms = [(pi, x) for pi, x in zip(p, inner) if pi > 0]
    if q == 1:
        prod = 1.0
        for pi, x in terms:
            prod *= x ** (-pi)
        return prod
    if math.isinf(q):
        return 1.0 / max(x for _, x in terms)
    s = sum(pi * x ** (q - 1) for pi, x in terms)
    return s ** (1.0 / (1.0 - q))


def brute_hill(p, q):
    nz = [v for v in p if v > 0]
    if q == 0:
        return float(len(nz))
    if q == 1:
        prod = 1.0
        for v in nz:
            prod *= v**v
        return 1.0 / prod
    if math.isinf(q):
        return 1.0 / max(nz)
    return sum(v**q for v in nz) ** (1.0 / (1.0 - q))


def random_proportions(rng, n, allow_zero=False):
    p = rng.dirichlet(np.ones(n))
    if allow_zero and n > 2:
        p[rng.integers(n)] = 0.0
        p = p / p.sum()
    return p


def random_similarity(rng, n):
    """Symmetric similarity with unit diagonal and off-diagonal entries in [0, 1]."""
    A = rng.random((n, n))
    Z = (A + A.T) / 2
    np.fill_diagonal(Z, 1.0)
    return Z


def random_binary_adjacency(rng, n, density=0.5):
    return (rng.random((n, n)) < density).astype(float)


def random_population_arrays(rng, n_range=(2, 8)):
    n = int(rng.integers(n_range[0], n_range[1] + 1))
    return random_proportions(rng, n), random_similarity(rng, n), random_binary_adjacency(rng, n)


def pairwise_distances(points):
    pts = np.asarray(points, dtype=float)
    n = len(pts)
    D = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            D[i, j] = math.sqrt(sum((a - b) ** 2 for a, b in zip(pts[i], pts[j])))
    return D


Q_GRID = [k * 0.25 for k in range(41)] + [math.inf]
