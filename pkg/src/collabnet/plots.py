"""Report figures rendered next to the delimited outputs.

These are the chart-style companions to the CSV/JSON reports (degree
distribution, stacked facet bars, centrality rankings); drawing the network
itself is left to GEXF consumers.
"""

from __future__ import annotations

import logging
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

log = logging.getLogger(__name__)

#: facet charts stay readable only up to this many institutions
MAX_FACET_BARS = 50

from .facets import FacetTable
from .metrics import degree_sequence
from .network import CollabNetwork
from .powerlaw import PowerLawFit
from .taxonomy import CATEGORY_COLORS, CATEGORY_ORDER

_CAT_RGB = {
    cat.value: tuple(c / 255 for c in rgb) for cat, rgb in CATEGORY_COLORS.items()
}


def _save(fig, out_file: str | Path) -> None:
    fig.savefig(out_file, dpi=150, bbox_inches="tight")
    plt.close(fig)


def plot_degree_distribution(
    network: CollabNetwork,
    out_file: str | Path,
    weighted: bool = False,
    fit: PowerLawFit | None = None,
) -> None:
    """Log-log complementary CDF of the degree sequence, optional fit line."""
    degrees = np.array(degree_sequence(network, weighted=weighted))
    degrees = degrees[degrees > 0]
    fig, ax = plt.subplots(figsize=(5, 4))
    if degrees.size:
        values, counts = np.unique(degrees, return_counts=True)
        ccdf = 1.0 - np.cumsum(counts) / degrees.size
        ccdf = np.concatenate([[1.0], ccdf[:-1]])  # P(X >= x)
        ax.loglog(values, ccdf, "o", ms=4, mfc="none", label="observed")
        if fit is not None:
            xs = np.linspace(fit.xmin, values.max(), 64)
            tail_frac = fit.n_tail / degrees.size
            ys = tail_frac * (xs / fit.xmin) ** (1.0 - fit.alpha)
            ax.loglog(xs, ys, "-", lw=1.2,
                      label=f"fit alpha={fit.alpha:.2f}, xmin={fit.xmin}")
        ax.legend(frameon=False, fontsize=8)
    label = "weighted degree" if weighted else "degree"
    ax.set_xlabel(label)
    ax.set_ylabel(f"P(X >= {label.split()[0]})" if not weighted else "P(X >= w)")
    ax.set_title("Degree distribution")
    _save(fig, out_file)


def plot_facets(table: FacetTable, out_file: str | Path, value: str = "proportion") -> None:
    """Stacked horizontal bars (category tables) or a heatmap (subject tables).

    Renders at most the first MAX_FACET_BARS institutions of the table (the
    CSV always carries the full set); narrow the selection with a focus
    list to chart a specific group.
    """
    institutions = list(dict.fromkeys(row.institution for row in table.rows))
    if len(institutions) > MAX_FACET_BARS:
        log.warning(
            "facet figure truncated to the table's first %d institutions (of %d)",
            MAX_FACET_BARS,
            len(institutions),
        )
        institutions = institutions[:MAX_FACET_BARS]
    facets = list(dict.fromkeys(row.facet for row in table.rows))
    data = {(r.institution, r.facet): getattr(r, value) for r in table.rows}

    if table.kind == "category":
        fig, ax = plt.subplots(figsize=(7, 0.4 * len(institutions) + 1.5))
        y = np.arange(len(institutions))[::-1]
        left = np.zeros(len(institutions))
        for cat in CATEGORY_ORDER:
            vals = np.array([data.get((inst, cat.value), 0) for inst in institutions])
            ax.barh(y, vals, left=left, color=_CAT_RGB[cat.value], label=cat.value)
            left += vals
        ax.set_yticks(y, institutions, fontsize=7)
        ax.set_xlabel(value)
        ax.legend(frameon=False, fontsize=7, loc="lower right")
        ax.set_title(f"Collaboration records by counterpart category ({value})")
    else:
        matrix = np.array(
            [[data.get((inst, f), 0) for f in facets] for inst in institutions],
            dtype=float,
        )
        fig, ax = plt.subplots(
            figsize=(0.3 * len(facets) + 2, 0.3 * len(institutions) + 2)
        )
        im = ax.imshow(matrix, aspect="auto", cmap="viridis")
        ax.set_xticks(range(len(facets)), facets, rotation=90, fontsize=6)
        ax.set_yticks(range(len(institutions)), institutions, fontsize=7)
        fig.colorbar(im, ax=ax, label=value)
        ax.set_title(f"Collaboration records by subject ({value})")
    _save(fig, out_file)


def plot_centrality(rows: list[tuple[str, float]], measure: str, out_file: str | Path) -> None:
    """Horizontal bar chart of a top-k centrality ranking, best on top."""
    names = [name for name, _ in rows]
    scores = [score for _, score in rows]
    fig, ax = plt.subplots(figsize=(6, 0.35 * len(rows) + 1.2))
    y = np.arange(len(rows))[::-1]
    ax.barh(y, scores, color="#4878a8")
    ax.set_yticks(y, names, fontsize=7)
    ax.set_xlabel(f"{measure} score")
    ax.set_title(f"Most central institutions ({measure})")
    _save(fig, out_file)
