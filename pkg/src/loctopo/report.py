"""Matplotlib report rendering for the CLI: figures next to the data files."""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .persistence import PersistenceDiagram  # noqa: E402
from .pipeline import FeatureMatrix  # noqa: E402


def render_diagram(d: PersistenceDiagram, path: str, title: str = "extended persistence") -> None:
    """Scatter plot of diagram points, one marker style per (dim, kind)."""
    fig, ax = plt.subplots(figsize=(4.5, 4.5))
    styles = {(0, "ordinary"): ("o", "tab:green", "0D ordinary"),
              (0, "essential"): ("s", "tab:olive", "0D essential"),
              (1, "essential"): ("^", "tab:blue", "1D")}
    for (dim, kind), (marker, color, label) in styles.items():
        xs = [p.birth for p in d.points if (p.dim, p.kind) == (dim, kind)]
        ys = [p.death for p in d.points if (p.dim, p.kind) == (dim, kind)]
        if xs:
            ax.scatter(xs, ys, marker=marker, c=color, label=label, alpha=0.8)
    lo = min([p.birth for p in d.points] + [p.death for p in d.points] + [0.0])
    hi = max([p.birth for p in d.points] + [p.death for p in d.points] + [1.0])
    pad = 0.05 * (hi - lo) or 0.1
    ax.plot([lo - pad, hi + pad], [lo - pad, hi + pad], "k--", lw=0.6)
    ax.set_xlabel("birth")
    ax.set_ylabel("death")
    ax.set_title(title)
    if d.points:
        ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_feature_report(fm: FeatureMatrix, out_dir: str,
                          pi_shape=(5, 5), max_tiles: int = 16) -> list:
    """PI heatmap tiles for the first rows plus a feature-mass bar chart.

    Returns the list of files written.
    """
    os.makedirs(out_dir, exist_ok=True)
    written = []

    pi_name, pi_len = fm.layout[0]
    rows, cols = pi_shape
    if rows * cols == pi_len:
        n = min(max_tiles, len(fm.ids))
        grid = int(np.ceil(np.sqrt(n))) if n else 1
        fig, axes = plt.subplots(grid, grid, figsize=(2.2 * grid, 2.2 * grid))
        axes = np.atleast_1d(axes).reshape(-1)
        vmax = fm.values[:n, :pi_len].max() or 1.0
        for i in range(n):
            ax = axes[i]
            img = fm.values[i, :pi_len].reshape(rows, cols)
            ax.imshow(img, origin="lower", cmap="viridis", vmin=0.0, vmax=vmax)
            ax.set_title(str(fm.ids[i]), fontsize=7)
            ax.set_xticks([])
            ax.set_yticks([])
        for ax in axes[n:]:
            ax.axis("off")
        fig.suptitle(f"persistence images ({pi_name})", fontsize=10)
        fig.tight_layout()
        path = os.path.join(out_dir, "persistence_images.png")
        fig.savefig(path, dpi=120)
        plt.close(fig)
        written.append(path)

    fig, ax = plt.subplots(figsize=(6, 3))
    mass = fm.values.sum(axis=1)
    ax.bar(range(len(mass)), mass, color="tab:blue")
    ax.set_xlabel("row")
    ax.set_ylabel("total feature mass")
    ax.set_title("per-row feature mass")
    fig.tight_layout()
    path = os.path.join(out_dir, "feature_mass.png")
    fig.savefig(path, dpi=120)
    plt.close(fig)
    written.append(path)
    return written
