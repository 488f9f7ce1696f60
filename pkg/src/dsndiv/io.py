"""JSON population and study files.

A population file holds ``proportions``, an ``adjacency`` matrix, an optional
``label`` and exactly one similarity source::

    {"proportions": [0.5, 0.5],
     "similarity": [[1, 0], [0, 1]],
     "adjacency": [[1, 1], [1, 1]]}

Alternative sources are ``"dissimilarity"`` (raw values in [0, 1], zero
diagonal), ``"attributes": {"matrix": ..., "weights": ..., "kernel": "exp"}``
and ``"attribute_sets": {"sets": [[...], ...], "coefficient": "jaccard"}``.
Infinity for ``q`` is spelled ``"inf"``.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

import numpy as np

from dsndiv.core import Population, parse_q
from dsndiv.errors import DSNError, InputUnreadable, IoFailure, ParseError, ValidationError
from dsndiv.estimation.estimate import CORRELATION_KINDS, StudyDataset
from dsndiv.similarity import (
    build_similarity_matrix,
    set_similarity_matrix,
    similarity_from_dissimilarity,
)

SIMILARITY_SOURCES = ("similarity", "dissimilarity", "attributes", "attribute_sets")


def _read_json(path: str | Path) -> Any:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputUnreadable(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def _matrix(doc: dict, key: str, where: str) -> np.ndarray:
    try:
        arr = np.array(doc[key], dtype=float)
    except KeyError:
        raise ParseError(f"{where}: missing field '{key}'") from None
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{where}: field '{key}' is not numeric: {exc}") from None
    return arr


def population_from_dict(doc: dict, kernel: str | None = None, where: str = "population") -> Population:
    """Build and validate a :class:`Population` from a parsed document.

    ``kernel`` overrides the kernel named in an ``attributes`` block.
    """
    if not isinstance(doc, dict):
        raise ParseError(f"{where}: expected an object")
    present = [key for key in SIMILARITY_SOURCES if key in doc]
    if len(present) != 1:
        raise ValidationError(
            f"{where}: exactly one similarity source required (one similarity source of "
            f"{', '.join(SIMILARITY_SOURCES)}), found {present or 'none'}"
        )
    p = _matrix(doc, "proportions", where)
    E = _matrix(doc, "adjacency", where)
    if p.ndim != 1:
        raise ValidationError(f"{where}: proportions must be a flat list")
    if abs(p.sum() - 1.0) > 1e-9:
        raise ValidationError(f"{where}: proportions sum to {p.sum():.12g}, expected 1")
    source = present[0]
    meta: dict[str, Any] = {"similarity_source": source}
    if source == "similarity":
        Z = _matrix(doc, "similarity", where)
    elif source == "dissimilarity":
        Z = similarity_from_dissimilarity(_matrix(doc, "dissimilarity", where))
    elif source == "attributes":
        block = doc["attributes"]
        if not isinstance(block, dict):
            raise ParseError(f"{where}: 'attributes' must be an object with matrix and weights")
        X = _matrix(block, "matrix", f"{where}.attributes")
        w = _matrix(block, "weights", f"{where}.attributes")
        k = kernel or block.get("kernel", "exp")
        Z = build_similarity_matrix(X, w, k)
        meta.update(attributes=X.tolist(), weights=w.tolist(), kernel=k)
    else:
        block = doc["attribute_sets"]
        if not isinstance(block, dict) or "sets" not in block:
            raise ParseError(f"{where}: 'attribute_sets' must be an object with 'sets'")
        coeff = block.get("coefficient", "jaccard")
        Z = set_similarity_matrix([list(map(str, s)) for s in block["sets"]], coeff)
        meta.update(coefficient=coeff)
    if Z.shape != (p.size, p.size):
        raise ValidationError(f"{where}: similarity has shape {Z.shape}, expected ({p.size}, {p.size})")
    if "category_labels" in doc:
        meta["category_labels"] = [str(s) for s in doc["category_labels"]]
    try:
        return Population(p, Z, E, str(doc.get("label", "")), meta)
    except ValidationError as exc:
        raise ValidationError(f"{where}: {exc}") from None


def load_population(path: str | Path, kernel: str | None = None) -> Population:
    return population_from_dict(_read_json(path), kernel, where=str(path))


def population_to_dict(pop: Population) -> dict:
    doc = {
        "label": pop.label,
        "proportions": pop.p.tolist(),
        "similarity": pop.Z.tolist(),
        "adjacency": pop.E.tolist(),
    }
    if "category_labels" in pop.meta:
        doc["category_labels"] = list(pop.meta["category_labels"])
    return doc


def save_population(pop: Population, path: str | Path) -> Path:
    return write_json(population_to_dict(pop), path)


def write_json(doc: Any, path: str | Path) -> Path:
    path = Path(path)
    try:
        path.write_text(json.dumps(doc, indent=2, allow_nan=True) + "\n", encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc
    return path


def q_to_json(q: float) -> float | str:
    return "inf" if math.isinf(q) else q


def study_from_dict(doc: dict, kernel: str | None = None, where: str = "study") -> tuple[StudyDataset, dict]:
    """Parse a study document into a dataset plus optimizer settings.

    Settings keys: ``kind``, ``starts``, ``seed``.
    """
    if not isinstance(doc, dict):
        raise ParseError(f"{where}: expected an object")
    X = _matrix(doc, "attributes", where)
    pops = doc.get("populations")
    if not isinstance(pops, list) or not pops:
        raise ParseError(f"{where}: 'populations' must be a non-empty list")
    P, E, labels = [], [], []
    for k, entry in enumerate(pops):
        sub = f"{where}.populations[{k}]"
        if not isinstance(entry, dict):
            raise ParseError(f"{sub}: expected an object")
        P.append(_matrix(entry, "proportions", sub))
        E.append(_matrix(entry, "adjacency", sub))
        labels.append(str(entry.get("label", f"P{k + 1}")))
    ys = _matrix(doc, "ys", where)
    settings = {
        "kind": doc.get("kind", "pearson"),
        "starts": int(doc.get("starts", 8)),
        "seed": int(doc.get("seed", 0)),
    }
    if settings["kind"] not in CORRELATION_KINDS:
        raise ValidationError(f"{where}: unknown correlation kind {settings['kind']!r}")
    try:
        P_arr = np.array(P, dtype=float)
        E_arr = np.array(E, dtype=float)
    except ValueError as exc:
        raise ValidationError(f"{where}: populations have inconsistent shapes") from exc
    try:
        ds = StudyDataset(
            X,
            P_arr,
            E_arr,
            ys,
            q=parse_q(doc.get("q", 2.0)),
            kernel=kernel or doc.get("kernel", "exp"),
            labels=tuple(labels),
        )
    except DSNError as exc:
        raise type(exc)(f"{where}: {exc}") from None
    return ds, settings


def load_study(path: str | Path, kernel: str | None = None) -> tuple[StudyDataset, dict]:
    return study_from_dict(_read_json(path), kernel, where=str(path))


def study_to_dict(ds: StudyDataset, kind: str = "pearson", starts: int = 8, seed: int = 0) -> dict:
    return {
        "attributes": ds.X.tolist(),
        "kernel": ds.kernel,
        "q": q_to_json(ds.q),
        "kind": kind,
        "starts": starts,
        "seed": seed,
        "populations": [
            {"label": label, "proportions": p.tolist(), "adjacency": E.tolist()}
            for label, p, E in zip(ds.labels, ds.proportions, ds.adjacency)
        ],
        "ys": ds.ys.tolist(),
    }
