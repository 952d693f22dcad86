"""Figures for census output."""

from __future__ import annotations

from collections import Counter
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

__all__ = ["plot_genus_distribution"]


def plot_genus_distribution(rows, path, title: str = "") -> Path:
    """Bar chart of component counts per genus, written to ``path``.

    The file type follows the suffix (``.png``, ``.pdf``, ``.svg``).
    Metadata that would vary between runs is stripped so repeated renders
    of the same census give identical files.
    """
    counts = Counter()
    for r in rows:
        counts[r.genus] += r.count
    genera = sorted(counts)
    fig, ax = plt.subplots(figsize=(max(4.0, 0.18 * len(genera) + 2.5), 3.2))
    ax.bar([str(g) for g in genera], [counts[g] for g in genera], color="0.35", width=0.8)
    ax.set_xlabel("genus")
    ax.set_ylabel("components")
    if title:
        ax.set_title(title)
    ax.spines[["top", "right"]].set_visible(False)
    if len(genera) > 20:
        ax.tick_params(axis="x", labelrotation=90, labelsize=6)
    fig.tight_layout()
    path = Path(path)
    meta = {"png": {"Software": None}, "pdf": {"Producer": None, "CreationDate": None},
            "svg": {"Date": None}}.get(path.suffix.lstrip(".").lower())
    fig.savefig(path, metadata=meta)
    plt.close(fig)
    return path
