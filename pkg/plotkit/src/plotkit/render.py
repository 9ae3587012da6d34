"""Render a figure recipe: log-scale intensity versus harmonic order."""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .recipe import FigureRecipe

_COLORS = plt.rcParams["axes.prop_cycle"].by_key()["color"]


def build_figure(recipe: FigureRecipe):
    """Figure plus the count of dropped (non-positive intensity) points.

    Inputs are loaded and validated first; nothing is drawn if any file is
    bad.  Zero or negative intensities cannot appear on a log axis and are
    dropped, counted, and reported.
    """
    spectra = recipe.load()
    fig, ax = plt.subplots(figsize=(7.0, 4.5), dpi=150)
    dropped = 0
    for i, (data, label) in enumerate(zip(spectra, recipe.labels)):
        keep = data.intensities > 0.0
        dropped += int((~keep).sum())
        ax.semilogy(
            data.orders[keep],
            data.intensities[keep],
            color=_COLORS[i % len(_COLORS)],
            linewidth=1.5,
            marker="o",
            markersize=3,
            label=label,
        )
    ax.set_xlabel("harmonic order")
    ax.set_ylabel("intensity")
    if recipe.title:
        ax.set_title(recipe.title)
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    return fig, dropped


def render(recipe: FigureRecipe) -> tuple[Path, int]:
    """Write the recipe's image (overwriting any previous one) and return
    its path plus the dropped-point count."""
    fig, dropped = build_figure(recipe)
    try:
        recipe.out.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(recipe.out)
    finally:
        plt.close(fig)
    return recipe.out, dropped
