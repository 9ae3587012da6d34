"""render_figure entry point: one recipe file in, one image out."""

import argparse
import sys
from pathlib import Path

from .recipe import RecipeError, parse_recipe
from .render import render
from .spectra import SpectrumFileError


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="render_figure",
        description="Render spectrum CSV files into a log-intensity panel.",
        epilog=(
            "Recipes are flat 'key = value' text: inputs (comma-separated "
            "spectrum CSVs), labels (optional, one per input), title, out."
        ),
    )
    parser.add_argument("recipe", type=Path, help="flat key = value recipe file")
    args = parser.parse_args(argv)
    try:
        recipe = parse_recipe(args.recipe)
        path, dropped = render(recipe)
    except (RecipeError, SpectrumFileError) as exc:
        print(f"recipe error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 4
    if dropped:
        print(f"warning: dropped {dropped} non-positive intensity points", file=sys.stderr)
    print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
