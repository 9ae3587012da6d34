"""Command-line surface: configuration, runs, sweeps, and file output.

Configuration comes from an optional flat ``key = value`` file (one
assignment per line, ``#`` comments) with command-line flags overriding file
values.  Every run writes a dipole series, a harmonic spectrum, and a JSON
metadata record sufficient to regenerate both; a sweep additionally writes a
summary of envelope slopes.

Exit codes: 0 success, 2 configuration error, 3 numerical instability,
4 I/O failure.
"""

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .basis import BoxSpec, build_tables
from .errors import ConfigurationError, DataError, InstabilityError, UndefinedSlopeError
from .moving_wall import WallMotion, run_moving
from .spectrum import DipoleSeries, envelope_slope, harmonic_spectrum, spectrum_csv
from .static_drive import DriveParams, run_static

_FLOAT_KEYS = {"L", "F", "a", "b", "omega0", "dt"}
_INT_KEYS = {"n0", "basis", "periods", "harmonics", "samples"}
_STR_KEYS = {"mode", "sweep", "out", "format", "window"}
_ALL_KEYS = _FLOAT_KEYS | _INT_KEYS | _STR_KEYS

_SWEEPABLE = {"static": ("L", "F", "omega0"), "moving": ("a", "b", "omega0")}
_SLOPE_ORDERS = (1, 10)


@dataclass
class RunConfig:
    """Fully validated description of one simulate invocation."""

    mode: str
    physics: dict
    basis: int = 64
    n0: int = 1
    periods: int = 20
    dt: float | None = None
    samples: int = 1024
    harmonics: int = 30
    window: str = "full"
    sweep: tuple[str, tuple[float, ...]] | None = None
    out: Path = Path(".")
    format: str = "csv"
    members: list = field(default_factory=list)  # validated per-sweep-value params

    def label(self, value) -> str:
        if self.sweep is None:
            return self.mode
        return f"{self.mode}_{self.sweep[0]}{value!r}"


def _parse_value(key: str, raw: str):
    if key in _FLOAT_KEYS:
        try:
            return float(raw)
        except ValueError:
            raise ConfigurationError(f"key {key!r}: expected a number, got {raw!r}")
    if key in _INT_KEYS:
        try:
            return int(raw)
        except ValueError:
            raise ConfigurationError(f"key {key!r}: expected an integer, got {raw!r}")
    return raw


def _read_config_file(path: Path) -> dict:
    values = {}
    for lineno, line in enumerate(path.read_text().splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigurationError(f"{path}:{lineno}: expected 'key = value'")
        key, raw = (part.strip() for part in stripped.split("=", 1))
        if key not in _ALL_KEYS:
            raise ConfigurationError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = _parse_value(key, raw)
    return values


def _parse_sweep(raw: str) -> tuple[str, tuple[float, ...]]:
    if "=" not in raw:
        raise ConfigurationError(f"sweep must look like KEY=v1,v2,..., got {raw!r}")
    key, tail = raw.split("=", 1)
    key = key.strip()
    items = [s.strip() for s in tail.split(",") if s.strip()]
    if not items:
        raise ConfigurationError(f"sweep over {key!r} has an empty value list")
    try:
        values = tuple(float(s) for s in items)
    except ValueError:
        raise ConfigurationError(f"sweep values for {key!r} must be numbers: {tail!r}")
    return key, values


def _build_member(config: RunConfig, sweep_value=None):
    """Physics parameters for one run, with the swept key substituted."""
    physics = dict(config.physics)
    if sweep_value is not None:
        physics[config.sweep[0]] = sweep_value
    if config.mode == "static":
        for key in ("L", "F", "omega0"):
            if key not in physics:
                raise ConfigurationError(f"static mode requires {key!r}")
        return DriveParams(
            box=BoxSpec(length=physics["L"], dimension=config.basis),
            field_strength=physics["F"],
            drive_frequency=physics["omega0"],
            initial_state=config.n0,
            periods=config.periods,
        )
    for key in ("a", "b", "omega0"):
        if key not in physics:
            raise ConfigurationError(f"moving mode requires {key!r}")
    return WallMotion(
        base=physics["a"],
        amplitude=physics["b"],
        frequency=physics["omega0"],
        dimension=config.basis,
        initial_state=config.n0,
        periods=config.periods,
    )


def parse_config(file_path: Path | None, overrides: dict) -> RunConfig:
    """Merge file values and flag overrides into a validated RunConfig.

    Every sweep member is validated here, before any run starts or any file
    is written.
    """
    values = _read_config_file(file_path) if file_path is not None else {}
    for key, value in overrides.items():
        if value is None:
            continue
        if key not in _ALL_KEYS:
            raise ConfigurationError(f"unknown key {key!r}")
        values[key] = value

    mode = values.get("mode")
    if mode not in ("static", "moving"):
        raise ConfigurationError(f"mode must be 'static' or 'moving', got {mode!r}")
    fmt = values.get("format", "csv")
    if fmt not in ("csv", "json"):
        raise ConfigurationError(f"format must be 'csv' or 'json', got {fmt!r}")
    window = values.get("window", "full")
    if window not in ("full", "per-harmonic"):
        raise ConfigurationError(f"window must be 'full' or 'per-harmonic', got {window!r}")

    relevant = {"static": ("L", "F", "omega0"), "moving": ("a", "b", "omega0")}[mode]
    for key in ("L", "F", "a", "b"):
        if key in values and key not in relevant:
            raise ConfigurationError(f"key {key!r} does not apply to mode {mode!r}")
    physics = {key: values[key] for key in relevant if key in values}

    sweep = None
    if "sweep" in values:
        key, sweep_values = _parse_sweep(values["sweep"])
        if key not in _SWEEPABLE[mode]:
            raise ConfigurationError(
                f"sweep key {key!r} not available in mode {mode!r} "
                f"(choose from {', '.join(_SWEEPABLE[mode])})"
            )
        sweep = (key, sweep_values)

    config = RunConfig(
        mode=mode,
        physics=physics,
        basis=values.get("basis", 64),
        n0=values.get("n0", 1),
        periods=values.get("periods", 20),
        dt=values.get("dt"),
        samples=values.get("samples", 1024),
        harmonics=values.get("harmonics", 30),
        window=window,
        sweep=sweep,
        out=Path(values.get("out", ".")),
        format=fmt,
    )
    if config.harmonics < 1:
        raise ConfigurationError("harmonics must be >= 1")
    if config.samples < 2:
        raise ConfigurationError("samples per period must be >= 2")
    if config.dt is not None and not config.dt > 0:
        raise ConfigurationError("dt must be positive")

    sweep_values = config.sweep[1] if config.sweep else (None,)
    config.members = [_build_member(config, v) for v in sweep_values]
    return config


def _series_lines(series: DipoleSeries):
    lines = ["t,dipole"]
    for t, d in zip(series.times.tolist(), series.values.tolist()):
        lines.append(f"{t!r},{d!r}")
    return "\n".join(lines) + "\n"


def _write_text(path: Path, text: str):
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def _run_member(config: RunConfig, params, sweep_value):
    if config.mode == "static":
        series = run_static(params, dt=config.dt, samples_per_period=config.samples)
    else:
        series = run_moving(params, dt=config.dt, samples_per_period=config.samples)
    spec = harmonic_spectrum(series, config.harmonics, window=config.window)
    label = config.label(sweep_value)

    if config.format == "csv":
        dipole_file = config.out / f"{label}_dipole.csv"
        spectrum_file = config.out / f"{label}_spectrum.csv"
        _write_text(dipole_file, _series_lines(series))
        _write_text(spectrum_file, spectrum_csv(spec))
    else:
        dipole_file = config.out / f"{label}_dipole.json"
        spectrum_file = config.out / f"{label}_spectrum.json"
        _write_text(
            dipole_file,
            json.dumps({"t": series.times.tolist(), "dipole": series.values.tolist()}) + "\n",
        )
        _write_text(
            spectrum_file,
            json.dumps(
                {
                    "order": spec.orders.tolist(),
                    "frequency": spec.frequencies.tolist(),
                    "re_amplitude": spec.amplitudes.real.tolist(),
                    "im_amplitude": spec.amplitudes.imag.tolist(),
                    "intensity": spec.intensities.tolist(),
                }
            )
            + "\n",
        )

    meta = dict(series.metadata)
    meta.update(
        {
            "artifact_version": __version__,
            "dt_limit": config.dt,
            "harmonics": config.harmonics,
            "window": config.window,
            "format": config.format,
            "sweep_key": config.sweep[0] if config.sweep else None,
            "sweep_value": sweep_value,
            "dipole_file": dipole_file.name,
            "spectrum_file": spectrum_file.name,
        }
    )
    _write_text(config.out / f"{label}_meta.json", json.dumps(meta, indent=2) + "\n")

    try:
        k_hi = min(_SLOPE_ORDERS[1], config.harmonics)
        slope = envelope_slope(spec, _SLOPE_ORDERS[0], k_hi) if k_hi > _SLOPE_ORDERS[0] else float("nan")
    except UndefinedSlopeError:
        slope = float("nan")
    return slope, series.metadata["max_norm_drift"]


def run(config: RunConfig) -> None:
    """Execute all sweep members and write their artifacts plus a summary."""
    config.out.mkdir(parents=True, exist_ok=True)
    sweep_values = config.sweep[1] if config.sweep else (None,)
    summary = ["sweep_value,slope,max_norm_drift"]
    for params, value in zip(config.members, sweep_values):
        try:
            slope, drift = _run_member(config, params, value)
        except InstabilityError as exc:
            raise InstabilityError(
                exc.step_index,
                f"instability at sweep value {value!r}: {exc}",
            ) from exc
        summary.append(f"{'' if value is None else repr(value)},{slope!r},{drift!r}")
    _write_text(config.out / f"{config.mode}_summary.csv", "\n".join(summary) + "\n")


def _simulate_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="simulate",
        description="Dipole series and harmonic spectra for a driven or breathing 1D box.",
        epilog=(
            "Config files are flat 'key = value' text, one assignment per line, "
            "'#' starts a comment; flags override file values. Keys: "
            "mode, L, F, a, b, omega0, n0, basis, periods, dt, samples, "
            "harmonics, window, sweep, out, format."
        ),
    )
    parser.add_argument("--mode", choices=("static", "moving"))
    parser.add_argument("--config", type=Path, help="flat key = value config file")
    parser.add_argument("--L", type=float, help="box size (static mode)")
    parser.add_argument("--F", type=float, help="drive field strength (static mode)")
    parser.add_argument("--a", type=float, help="mean wall position (moving mode)")
    parser.add_argument("--b", type=float, help="wall oscillation amplitude (moving mode)")
    parser.add_argument("--omega0", type=float, help="drive / wall frequency")
    parser.add_argument("--n0", type=int, help="initial basis state, default 1")
    parser.add_argument("--basis", type=int, help="basis truncation, default 64")
    parser.add_argument("--periods", type=int, help="run length in drive periods, default 20")
    parser.add_argument("--dt", type=float, help="time-step cap (default: built-in step rule)")
    parser.add_argument("--samples", type=int, help="stored samples per period, default 1024")
    parser.add_argument("--harmonics", type=int, help="highest harmonic order, default 30")
    parser.add_argument("--window", choices=("full", "per-harmonic"),
                        help="spectral window (default full record)")
    parser.add_argument("--sweep", help="KEY=v1,v2,... one run per value")
    parser.add_argument("--out", help="output directory, default .")
    parser.add_argument("--format", choices=("csv", "json"), help="series/spectrum format")
    return parser


def simulate_main(argv=None) -> int:
    args = _simulate_parser().parse_args(argv)
    overrides = {
        key: getattr(args, key)
        for key in ("mode", "L", "F", "a", "b", "omega0", "n0", "basis", "periods",
                    "dt", "samples", "harmonics", "window", "sweep", "out", "format")
    }
    try:
        config = parse_config(args.config, overrides)
        run(config)
    except (ConfigurationError, DataError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except InstabilityError as exc:
        print(f"numerical instability: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 4
    return 0


def dump_tables_main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="dump-tables",
        description="Debug dump of the basis matrix-element tables as CSV.",
    )
    parser.add_argument("--L", type=float, required=True, help="box size")
    parser.add_argument("--basis", type=int, required=True, help="basis truncation")
    parser.add_argument("--out", type=Path, default=Path("."), help="output directory")
    args = parser.parse_args(argv)
    try:
        tables = build_tables(BoxSpec(length=args.L, dimension=args.basis))
        args.out.mkdir(parents=True, exist_ok=True)
        for name, matrix in (("V", tables.V), ("Y", tables.Y), ("Q", tables.Q)):
            lines = ["row,col,value"]
            for i in range(matrix.shape[0]):
                for j in range(matrix.shape[1]):
                    lines.append(f"{i + 1},{j + 1},{float(matrix[i, j])!r}")
            _write_text(args.out / f"table_{name}.csv", "\n".join(lines) + "\n")
        lines = ["n,energy"]
        for n, e in enumerate(tables.energies.tolist(), start=1):
            lines.append(f"{n},{e!r}")
        _write_text(args.out / "table_energies.csv", "\n".join(lines) + "\n")
    except (ConfigurationError, DataError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 4
    print(f"wrote tables for L={args.L!r}, N={args.basis} to {args.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(simulate_main())
