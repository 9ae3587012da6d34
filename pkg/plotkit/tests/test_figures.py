"""End-to-end figure reproduction: simulator CLI sweeps -> recipes -> panels.

Exercises the full pipeline at reduced numerics (smaller basis, 6 periods,
coarser sampling) so all four reference panels build in well under a minute.
The simulator is driven through its command-line interface only.
"""

import subprocess
import sys

import pytest

from plotkit.recipe import parse_recipe
from plotkit.render import build_figure, render
from plotkit.spectra import read_spectrum

FAST = ["--basis", "32", "--periods", "6", "--samples", "256", "--harmonics", "30"]

PANELS = {
    "fig1": {
        "args": ["--mode", "static", "--F", "1", "--omega0", "1", "--sweep", "L=5,10,15"],
        "files": ["static_L5.0_spectrum.csv", "static_L10.0_spectrum.csv",
                  "static_L15.0_spectrum.csv"],
        "labels": "L=5, L=10, L=15",
        "title": "driven box, size sweep",
    },
    "fig2": {
        "args": ["--mode", "static", "--L", "15", "--omega0", "1", "--sweep", "F=0.5,1,2"],
        "files": ["static_F0.5_spectrum.csv", "static_F1.0_spectrum.csv",
                  "static_F2.0_spectrum.csv"],
        "labels": "F=0.5, F=1, F=2",
        "title": "driven box, field sweep",
    },
    "fig3": {
        "args": ["--mode", "moving", "--a", "10", "--omega0", "1", "--dt", "1e-4",
                 "--sweep", "b=2,5,8"],
        "files": ["moving_b2.0_spectrum.csv", "moving_b5.0_spectrum.csv",
                  "moving_b8.0_spectrum.csv"],
        "labels": "b=2, b=5, b=8",
        "title": "breathing wall, amplitude sweep",
    },
    "fig4": {
        "args": ["--mode", "moving", "--a", "10", "--b", "5", "--dt", "1e-4",
                 "--sweep", "omega0=0.5,1,2"],
        "files": ["moving_omega00.5_spectrum.csv", "moving_omega01.0_spectrum.csv",
                  "moving_omega02.0_spectrum.csv"],
        "labels": "w0=0.5, w0=1, w0=2",
        "title": "breathing wall, frequency sweep",
    },
}


@pytest.fixture(scope="module")
def workdir(tmp_path_factory):
    return tmp_path_factory.mktemp("figures")


@pytest.mark.parametrize("panel", sorted(PANELS))
def test_panel_from_cli_sweep(workdir, panel):
    spec = PANELS[panel]
    out = workdir / panel
    proc = subprocess.run(
        [sys.executable, "-m", "boxhhg.cli"] + spec["args"] + FAST + ["--out", str(out)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr

    for name in spec["files"]:
        data = read_spectrum(out / name)  # exists and parses
        assert data.orders[-1] == 30

    recipe_file = out / f"{panel}.recipe"
    recipe_file.write_text(
        f"inputs = {', '.join(spec['files'])}\n"
        f"labels = {spec['labels']}\n"
        f"title = {spec['title']}\n"
        f"out = {panel}.png\n"
    )
    recipe = parse_recipe(recipe_file)
    fig, _ = build_figure(recipe)
    assert len(fig.axes[0].lines) == 3  # one curve per sweep value
    path, _ = render(recipe)
    assert path.exists() and path.stat().st_size > 0
