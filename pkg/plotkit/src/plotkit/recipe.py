"""Figure recipes in the same flat ``key = value`` grammar the simulator uses.

Keys: ``inputs`` (comma-separated spectrum CSV paths), ``labels``
(comma-separated legend labels, one per input; defaults to the file stems),
``title``, ``out`` (image path), optional ``yscale`` (must be ``log``).
Relative input/output paths resolve against the recipe file's directory.
"""

from dataclasses import dataclass
from pathlib import Path

from .spectra import SpectrumData, read_spectrum

_KEYS = {"inputs", "labels", "title", "out", "yscale"}


class RecipeError(ValueError):
    """Malformed or inconsistent figure recipe."""


@dataclass(frozen=True)
class FigureRecipe:
    inputs: tuple[Path, ...]
    labels: tuple[str, ...]
    title: str
    out: Path

    def load(self) -> list[SpectrumData]:
        return [read_spectrum(p) for p in self.inputs]


def _split_list(raw: str) -> list[str]:
    return [item.strip() for item in raw.split(",") if item.strip()]


def parse_recipe(path: Path) -> FigureRecipe:
    path = Path(path)
    if not path.exists():
        raise RecipeError(f"{path}: no such recipe file")
    values = {}
    for lineno, line in enumerate(path.read_text().splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise RecipeError(f"{path}:{lineno}: expected 'key = value'")
        key, raw = (part.strip() for part in stripped.split("=", 1))
        if key not in _KEYS:
            raise RecipeError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = raw

    if "inputs" not in values:
        raise RecipeError(f"{path}: recipe needs an 'inputs' line")
    if "out" not in values:
        raise RecipeError(f"{path}: recipe needs an 'out' line")
    if values.get("yscale", "log") != "log":
        raise RecipeError(f"{path}: only yscale = log is supported")

    base = path.parent
    inputs = tuple(base / p for p in _split_list(values["inputs"]))
    if not inputs:
        raise RecipeError(f"{path}: empty input list")
    if "labels" in values:
        labels = tuple(_split_list(values["labels"]))
        if len(labels) != len(inputs):
            raise RecipeError(
                f"{path}: {len(labels)} labels for {len(inputs)} inputs"
            )
    else:
        labels = tuple(p.stem for p in inputs)
    if len(set(labels)) != len(labels):
        raise RecipeError(f"{path}: labels must be unique")
    return FigureRecipe(
        inputs=inputs,
        labels=labels,
        title=values.get("title", ""),
        out=base / values["out"],
    )
