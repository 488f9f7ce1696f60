"""The 56-organization survey design, synthetic preferences and correlation tables.

Survey responses behind the original study are not public, so preferences
are generated from a declared model and calibrated to the reported mean and
standard deviation.  Tables built here follow the same layout (index variant
by correlation type) but their values are not the published ones.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from pathlib import Path
from typing import Literal, Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from dsndiv.core import dsn_value, hill_number, leinster_diversity, network_density, parse_q
from dsndiv.errors import DegenerateVariance, IndexOutOfRange, IoFailure, ValidationError
from dsndiv.estimation.correlation import mic, pearson, spearman
from dsndiv.estimation.estimate import StudyDataset
from dsndiv.similarity import build_similarity_matrix, validate_weights

# Category order follows the attribute encoding: 0 Japanese women, 1 Japanese men,
# 2 foreign men.  The survey lists proportions as (men, women, foreigners).
CATEGORY_LABELS = ("Japanese women", "Japanese men", "Foreign men")
RAW_PROPORTIONS = (
    (0.33, 0.33, 0.33),
    (0.80, 0.10, 0.10),
    (0.10, 0.80, 0.10),
    (0.10, 0.10, 0.80),
    (0.20, 0.40, 0.40),
    (0.40, 0.20, 0.40),
    (0.40, 0.40, 0.20),
)
ATTRIBUTES = ((1.0, 0.0), (1.0, 1.0), (0.0, 0.0))
PAIRS = ((0, 1), (0, 2), (1, 2))
E_STRONG = 1.0
E_WEAK = 0.5
LETTERS = "ABCDEFG"

TARGET_MEAN = 5.256
TARGET_SD = 1.362

DEFAULT_Q_GRID = (0.0, 0.5, 1.0, 2.0, 10.0)
MODELS = ("dsn_linear", "hill_linear", "noisy")
CSV_HEADER = ("index_name", "q", "pearson", "spearman", "mic")


@dataclass(frozen=True)
class StudyDesign:
    proportions: NDArray[np.float64]
    raw_proportions: NDArray[np.float64]
    networks: NDArray[np.float64]
    attributes: NDArray[np.float64]
    e_strong: float
    e_weak: float
    names: tuple[str, ...]

    @property
    def size(self) -> int:
        return len(self.names)

    def adjacency(self, pattern: int) -> NDArray[np.float64]:
        E = np.eye(3)
        for (i, j), weight in zip(PAIRS, self.networks[pattern]):
            E[i, j] = E[j, i] = weight
        return E

    def population_arrays(self) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        """``(r, 3)`` proportions and ``(r, 3, 3)`` adjacency in name order."""
        P = np.array([self.proportions[a] for a in range(len(self.proportions)) for _ in self.networks])
        E = np.array([self.adjacency(b) for _ in self.proportions for b in range(len(self.networks))])
        return P, E

    def dataset(self, ys: ArrayLike, q: float | str = 2.0, kernel: str = "exp") -> StudyDataset:
        P, E = self.population_arrays()
        return StudyDataset(self.attributes, P, E, ys, q=q, kernel=kernel, labels=self.names)


def generate_design() -> StudyDesign:
    """Seven proportion settings times eight strong/weak networks, named A1..G8.

    Proportion triples are renormalized to sum to 1 (the first one is printed
    as 0.33 each) and reordered to the attribute category order.  Network
    patterns enumerate the three pairs with strong before weak, so pattern 1
    is all strong and pattern 8 all weak.
    """
    raw = np.array(RAW_PROPORTIONS)
    reordered = raw[:, [1, 0, 2]]
    proportions = reordered / reordered.sum(axis=1, keepdims=True)
    networks = np.array(list(product((E_STRONG, E_WEAK), repeat=len(PAIRS))))
    names = tuple(f"{LETTERS[a]}{b + 1}" for a in range(len(raw)) for b in range(len(networks)))
    return StudyDesign(proportions, raw, networks, np.array(ATTRIBUTES), E_STRONG, E_WEAK, names)


def category_focused_adjacency(E: ArrayLike, focus: int) -> NDArray[np.float64]:
    """Copy of ``E`` keeping only row ``focus`` (diagonal entry included)."""
    E = np.asarray(E, dtype=float)
    if not 0 <= focus < E.shape[0]:
        raise IndexOutOfRange(f"focus {focus} outside 0..{E.shape[0] - 1}")
    out = np.zeros_like(E)
    out[focus] = E[focus]
    return out


def _index_vector(design: StudyDesign, kind: str, q: float, Z: NDArray, focus: int | None = None) -> NDArray:
    P, Es = design.population_arrays()
    if kind == "hill":
        return np.array([hill_number(p, q) for p in P])
    if kind == "leinster":
        return np.array([leinster_diversity(p, Z, q) for p in P])
    if kind == "density":
        return np.array([network_density(E) for E in Es])
    if focus is not None:
        Es = np.array([category_focused_adjacency(E, focus) for E in Es])
    return np.array([dsn_value(p, Z, E, q) for p, E in zip(P, Es)])


def synthesize_preferences(
    design: StudyDesign,
    model: Literal["dsn_linear", "hill_linear", "noisy"] = "dsn_linear",
    w: ArrayLike = (0.5, 0.5),
    q: float | str = 2.0,
    noise_sd: float = 0.0,
    seed: int = 0,
    kernel: str = "exp",
) -> NDArray[np.float64]:
    """Preferences ``alpha + beta * index + noise`` for every design population.

    ``alpha`` and ``beta`` map the index onto mean 5.256 and sample standard
    deviation (ddof=1) 1.362, so those statistics hold exactly at zero noise.
    ``noisy`` replaces the index with seeded standard-normal draws.
    """
    if model not in MODELS:
        raise ValidationError(f"unknown model {model!r}; expected one of {MODELS}")
    if noise_sd < 0:
        raise ValidationError("noise_sd must be nonnegative")
    q = parse_q(q)
    rng = np.random.default_rng(seed)
    if model == "noisy":
        index = rng.standard_normal(design.size)
    elif model == "hill_linear":
        index = _index_vector(design, "hill", q, np.eye(3))
    else:
        Z = build_similarity_matrix(design.attributes, validate_weights(w), kernel)
        index = _index_vector(design, "dsn", q, Z)
    sd = index.std(ddof=1)
    if sd == 0:
        raise DegenerateVariance(f"{model} index is constant at q={q}")
    beta = TARGET_SD / sd
    ys = TARGET_MEAN + beta * (index - index.mean())
    if noise_sd > 0:
        ys = ys + rng.normal(0.0, noise_sd, size=design.size)
    return ys


@dataclass(frozen=True)
class ComparisonRow:
    index_name: str
    q: float | None
    pearson: float
    spearman: float
    mic: float


@dataclass
class ComparisonTable:
    """Correlation of preferences with each index variant.

    A cell is NaN when the index is constant over the design (for example
    the Hill number at ``q = 0``) or the column was not requested.
    """

    rows: list[ComparisonRow] = field(default_factory=list)

    def row(self, name: str, q: float | None = None) -> ComparisonRow:
        for r in self.rows:
            if r.index_name == name and (r.q == q or (q is not None and r.q is not None and math.isclose(r.q, q))):
                return r
        raise KeyError((name, q))

    def by_name(self, name: str) -> list[ComparisonRow]:
        return [r for r in self.rows if r.index_name == name]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for r in self.rows:
            writer.writerow([r.index_name, format_q(r.q), repr(r.pearson), repr(r.spearman), repr(r.mic)])
        return buf.getvalue()

    def write_csv(self, path: str | Path) -> Path:
        path = Path(path)
        try:
            path.write_text(self.to_csv(), encoding="utf-8")
        except OSError as exc:
            raise IoFailure(f"cannot write {path}: {exc}") from exc
        return path


def format_q(q: float | None) -> str:
    if q is None:
        return ""
    if math.isinf(q):
        return "inf"
    return repr(float(q))


@lru_cache(maxsize=4096)
def _mic_by_ranks(x_key: bytes, y_key: bytes, m: int) -> float:
    x = np.frombuffer(x_key, dtype=np.int64)
    y = np.frombuffer(y_key, dtype=np.int64)
    return mic(x.astype(float), y.astype(float))


def _dense_key(v: NDArray) -> bytes:
    return np.unique(v, return_inverse=True)[1].astype(np.int64).ravel().tobytes()


def _cell(func, ys: NDArray, index: NDArray) -> float:
    try:
        return func(ys, index)
    except DegenerateVariance:
        return math.nan


def _cached_mic(ys: NDArray, index: NDArray) -> float:
    if np.all(index == index[0]):
        return math.nan
    # MIC depends only on the order on each axis, so dense ranks are an exact key
    return _mic_by_ranks(_dense_key(ys), _dense_key(index), ys.size)


def index_variants(q_grid: Sequence[float]) -> list[tuple[str, float | None, str, int | None]]:
    """Row order of the comparison table: ``(name, q, kind, focus)``."""
    rows: list[tuple[str, float | None, str, int | None]] = []
    rows += [("hill", q, "hill", None) for q in q_grid]
    rows += [("leinster", q, "leinster", None) for q in q_grid]
    rows += [("dsn", q, "dsn", None) for q in q_grid]
    rows.append(("network_density", None, "density", None))
    for focus in range(3):
        rows += [(f"dsn_focus_{focus}", q, "dsn", focus) for q in q_grid]
    return rows


def comparison_table(
    design: StudyDesign,
    ys: ArrayLike,
    w: ArrayLike = (0.5, 0.5),
    q_grid: Sequence[float | str] = DEFAULT_Q_GRID,
    kinds: Sequence[str] = ("pearson", "spearman", "mic"),
    kernel: str = "exp",
) -> ComparisonTable:
    """Pearson, Spearman and MIC of ``ys`` against every index variant.

    Rows: Hill number, similarity-only diversity and DSN per ``q``; network
    density; DSN restricted to each category's outgoing links per ``q``.
    """
    ys = np.asarray(ys, dtype=float).ravel()
    if ys.size != design.size:
        raise ValidationError(f"ys has {ys.size} entries, design has {design.size}")
    grid = [parse_q(q) for q in q_grid]
    Z = build_similarity_matrix(design.attributes, validate_weights(w), kernel)
    table = ComparisonTable()
    for name, q, kind, focus in index_variants(grid):
        index = _index_vector(design, kind, 2.0 if q is None else q, Z, focus)
        table.rows.append(
            ComparisonRow(
                name,
                q,
                _cell(pearson, ys, index) if "pearson" in kinds else math.nan,
                _cell(spearman, ys, index) if "spearman" in kinds else math.nan,
                _cached_mic(ys, index) if "mic" in kinds else math.nan,
            )
        )
    return table
