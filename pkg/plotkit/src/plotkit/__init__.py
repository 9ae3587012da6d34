"""Figure rendering for harmonic-spectrum CSV files."""

__version__ = "0.1.0"

from .recipe import FigureRecipe, RecipeError, parse_recipe
from .render import build_figure, render
from .spectra import SpectrumData, SpectrumFileError, read_spectrum

__all__ = [
    "FigureRecipe",
    "RecipeError",
    "SpectrumData",
    "SpectrumFileError",
    "build_figure",
    "parse_recipe",
    "read_spectrum",
    "render",
]
