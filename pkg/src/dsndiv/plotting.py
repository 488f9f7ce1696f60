"""Matplotlib figures written next to the text/CSV reports."""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import Circle, FancyArrowPatch  # noqa: E402

from dsndiv.errors import IoFailure  # noqa: E402
from dsndiv.layout import Layout  # noqa: E402
from dsndiv.study import ComparisonTable  # noqa: E402

_RC = {
    "font.size": 9,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "savefig.dpi": 150,
    "svg.hashsalt": "dsndiv",
}

# no timestamps or version strings, so identical inputs give identical files
_METADATA = {
    ".png": {"Software": None},
    ".svg": {"Date": None, "Creator": None},
    ".pdf": {"CreationDate": None, "Creator": None, "Producer": None},
}


def _save(fig, path: str | Path) -> Path:
    path = Path(path)
    try:
        fig.savefig(path, metadata=_METADATA.get(path.suffix.lower()))
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc
    finally:
        plt.close(fig)
    return path


def plot_layout(layout: Layout, path: str | Path, title: str | None = None) -> Path:
    """Circles sized by proportion and arrows weighted by adjacency."""
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(4.5, 4.5))
        radii = layout.diameters / 2
        for i, (x, y) in enumerate(layout.coords):
            ax.add_patch(Circle((x, y), radii[i], facecolor="#9ecae1", edgecolor="#3182bd", alpha=0.7))
            ax.text(x, y, layout.labels[i] if layout.labels else str(i), ha="center", va="center")
        for link in layout.links:
            ax.add_patch(
                FancyArrowPatch(
                    tuple(layout.coords[link.source]),
                    tuple(layout.coords[link.target]),
                    arrowstyle="-|>",
                    mutation_scale=10,
                    linewidth=0.5 + 2.5 * link.width,
                    color="#636363",
                    connectionstyle="arc3,rad=0.15",
                    shrinkA=0,
                    shrinkB=0,
                )
            )
        lo = (layout.coords - radii[:, None]).min(axis=0)
        hi = (layout.coords + radii[:, None]).max(axis=0)
        pad = 0.1 * max(float((hi - lo).max()), 1e-6)
        ax.set_xlim(lo[0] - pad, hi[0] + pad)
        ax.set_ylim(lo[1] - pad, hi[1] + pad)
        ax.set_aspect("equal")
        ax.set_xlabel("axis 1")
        ax.set_ylabel("axis 2")
        if title:
            ax.set_title(title)
        fig.tight_layout()
        return _save(fig, path)


def plot_comparison(table: ComparisonTable, path: str | Path) -> Path:
    """Grouped bars of each correlation type per index variant."""
    with plt.rc_context(_RC):
        labels = [r.index_name if r.q is None else f"{r.index_name} q={r.q:g}" for r in table.rows]
        columns = ("pearson", "spearman", "mic")
        fig, ax = plt.subplots(figsize=(max(6.0, 0.3 * len(labels)), 3.8))
        width = 0.27
        for k, col in enumerate(columns):
            values = [getattr(r, col) for r in table.rows]
            values = [0.0 if math.isnan(v) else v for v in values]
            ax.bar([i + (k - 1) * width for i in range(len(labels))], values, width, label=col)
        ax.set_xticks(range(len(labels)))
        ax.set_xticklabels(labels, rotation=90)
        ax.set_ylabel("correlation with preference")
        ax.axhline(0, color="black", linewidth=0.5)
        ax.legend(frameon=False, ncol=3)
        fig.tight_layout()
        return _save(fig, path)
