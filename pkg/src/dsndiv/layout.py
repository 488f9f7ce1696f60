"""Two-dimensional layout of categories and its SVG rendering.

Categories are placed by classical scaling of the dissimilarity ``1 - Z``;
circle diameters follow the proportions and arrows follow the adjacency.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from numpy.typing import ArrayLike, NDArray

from dsndiv.core import Population
from dsndiv.errors import IoFailure, ValidationError

# relative tolerance used to break ties when fixing eigenvector signs
_SIGN_TIE = 1e-12


@dataclass(frozen=True)
class Link:
    source: int
    target: int
    width: float


@dataclass(frozen=True)
class Layout:
    coords: NDArray[np.float64]
    diameters: NDArray[np.float64]
    links: list[Link]
    eigenvalues_used: tuple[float, float]
    labels: tuple[str, ...] = field(default=())

    @property
    def n(self) -> int:
        return self.coords.shape[0]


def double_center(Zbar: ArrayLike) -> NDArray[np.float64]:
    """``-1/2 C (Zbar o Zbar) C`` with ``C = I - L/n`` and ``o`` the entrywise product."""
    D = np.asarray(Zbar, dtype=float)
    if D.ndim != 2 or D.shape[0] != D.shape[1]:
        raise ValidationError(f"dissimilarity must be square, got shape {D.shape}")
    n = D.shape[0]
    C = np.eye(n) - np.full((n, n), 1.0 / n)
    B = -0.5 * C @ (D * D) @ C
    return 0.5 * (B + B.T)


def embed_2d(centered: ArrayLike) -> tuple[NDArray[np.float64], tuple[float, float]]:
    """Coordinates from the two leading eigenpairs of a double-centred matrix.

    Negative eigenvalues are clamped to zero.  Each eigenvector's sign is
    chosen so that its largest-magnitude entry (first one on ties) is
    positive, which makes the output reproducible.

    Returns
    -------
    coords : (n, 2) array
    eigenvalues : (lambda1, lambda2), descending and nonnegative
    """
    B = np.asarray(centered, dtype=float)
    n = B.shape[0]
    evals, evecs = np.linalg.eigh(0.5 * (B + B.T))
    idx = np.argsort(evals)[::-1][:2]
    coords = np.zeros((n, 2))
    lams = [0.0, 0.0]
    for axis, k in enumerate(idx):
        lam = max(float(evals[k]), 0.0)
        v = evecs[:, k].copy()
        mags = np.abs(v)
        lead = int(np.flatnonzero(mags >= mags.max() * (1 - _SIGN_TIE))[0])
        if v[lead] < 0:
            v = -v
        lams[axis] = lam
        coords[:, axis] = v * math.sqrt(lam)
    return coords, (lams[0], lams[1])


def make_layout(pop: Population, scale: float = 0.5) -> Layout:
    """Lay out a population: positions from ``1 - Z``, diameters ``scale * p``.

    One directed link per off-diagonal ``E[i, j] > 0`` with width ``E[i, j]``;
    self-loops are not drawn.
    """
    if not scale > 0:
        raise ValidationError("scale must be positive")
    coords, lams = embed_2d(double_center(pop.Zbar))
    n = pop.n
    links = [
        Link(i, j, float(pop.E[i, j]))
        for i in range(n)
        for j in range(n)
        if i != j and pop.E[i, j] > 0
    ]
    labels = tuple(pop.meta.get("category_labels", ())) or tuple(str(i) for i in range(n))
    return Layout(coords, scale * pop.p, links, lams, labels)


def _fmt(v: float) -> str:
    return f"{round(float(v), 6) + 0.0:.6f}"


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")


def svg_document(layout: Layout, canvas: float = 600.0) -> str:
    """Standalone SVG 1.1 text for a layout (see :func:`render_svg`)."""
    xy = layout.coords * np.array([1.0, -1.0])
    radii = layout.diameters / 2.0
    lo = np.min(xy - radii[:, None], axis=0)
    hi = np.max(xy + radii[:, None], axis=0)
    extent = float(max(hi[0] - lo[0], hi[1] - lo[1], 1e-6))
    margin = 0.1 * extent
    lo = lo - margin
    size = extent + 2 * margin
    unit = extent / 100.0
    stroke_unit = 1.5 * unit

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(canvas)}" height="{_fmt(canvas)}" '
        f'viewBox="{_fmt(lo[0])} {_fmt(lo[1])} {_fmt(size)} {_fmt(size)}">',
        '<g class="categories">',
    ]
    for i in range(layout.n):
        cx, cy = xy[i]
        out.append(
            f'<circle class="category" cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(radii[i])}" '
            f'fill="#9ecae1" fill-opacity="0.6" stroke="#3182bd" stroke-width="{_fmt(0.3 * unit)}"/>'
        )
        out.append(
            f'<text x="{_fmt(cx)}" y="{_fmt(cy)}" font-size="{_fmt(4 * unit)}" '
            f'text-anchor="middle" dominant-baseline="central">{_escape(layout.labels[i] if layout.labels else str(i))}</text>'
        )
    out.append("</g>")
    out.append('<g class="links">')
    for link in layout.links:
        out.extend(_arrow(xy, radii, link, stroke_unit, unit))
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _arrow(xy: NDArray, radii: NDArray, link: Link, stroke_unit: float, unit: float) -> list[str]:
    start, end = xy[link.source], xy[link.target]
    delta = end - start
    dist = float(np.hypot(*delta))
    if dist < 1e-12:
        direction = np.array([1.0, 0.0])
    else:
        direction = delta / dist
    normal = np.array([-direction[1], direction[0]])
    width = link.width * stroke_unit
    # opposite directions are drawn side by side instead of on top of each other
    offset = normal * (width + unit)
    p0 = start + direction * radii[link.source] + offset
    tip = end - direction * radii[link.target] + offset
    head_len = 3 * width + 2 * unit
    base = tip - direction * head_len
    half = normal * (1.5 * width + unit)
    pts = [tip, base + half, base - half]
    return [
        f'<g class="link" data-source="{link.source}" data-target="{link.target}">',
        f'<line x1="{_fmt(p0[0])}" y1="{_fmt(p0[1])}" x2="{_fmt(base[0])}" y2="{_fmt(base[1])}" '
        f'stroke="#636363" stroke-width="{_fmt(width)}"/>',
        '<polygon points="' + " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in pts) + '" fill="#636363"/>',
        "</g>",
    ]


def render_svg(layout: Layout, path: str | Path) -> Path:
    """Write the layout as SVG; identical layouts give identical bytes."""
    path = Path(path)
    try:
        path.write_text(svg_document(layout), encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc
    return path
