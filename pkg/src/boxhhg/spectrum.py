"""Harmonic spectra of dipole time series.

The spectrum is the projection amplitude

    d(k w0) = (1/T) * integral_0^T exp(-i k w0 t) d(t) dt

evaluated by trapezoidal quadrature on the stored sample grid.  With T equal
to the full record (a whole number of drive periods) the harmonics are
orthogonal projections; the alternative literal one-period-per-harmonic
window is kept behind ``window="per-harmonic"`` for comparison only.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, DataError, UndefinedSlopeError


@dataclass
class DipoleSeries:
    """Uniformly sampled real dipole moment with its drive frequency and run metadata."""

    times: np.ndarray
    values: np.ndarray
    drive_frequency: float
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.times.ndim != 1 or self.times.size < 2:
            raise DataError("need at least two samples")
        if self.values.shape != self.times.shape:
            raise DataError("times and values must have equal length")
        if not np.all(np.isfinite(self.values)) or not np.all(np.isfinite(self.times)):
            raise DataError("series contains non-finite entries")
        span = self.times[-1] - self.times[0]
        if not span > 0:
            raise DataError("times must be increasing")
        h = span / (self.times.size - 1)
        affine = self.times[0] + h * np.arange(self.times.size)
        if np.max(np.abs(self.times - affine)) > 1e-12 * max(abs(self.times[0]), span):
            raise DataError("time grid is not uniform")
        if not self.drive_frequency > 0:
            raise ConfigurationError("drive frequency must be positive")
        period = 2.0 * np.pi / self.drive_frequency
        n_periods = round(span / period)
        if n_periods < 1 or abs(span - n_periods * period) > h:
            raise DataError(
                f"record length {span} is not a whole number of drive periods"
            )

    @property
    def dt(self) -> float:
        return (self.times[-1] - self.times[0]) / (self.times.size - 1)

    @property
    def span(self) -> float:
        return float(self.times[-1] - self.times[0])


@dataclass
class Spectrum:
    """Harmonic orders k, their frequencies k*w0, complex amplitudes, intensities."""

    orders: np.ndarray
    frequencies: np.ndarray
    amplitudes: np.ndarray
    intensities: np.ndarray
    drive_frequency: float

    def __post_init__(self):
        if np.any(self.intensities < 0):
            raise DataError("intensities must be non-negative")


def harmonic_spectrum(series: DipoleSeries, max_order: int, window: str = "full") -> Spectrum:
    """Fourier amplitudes of ``series`` at orders 0..max_order of its drive frequency.

    ``window="full"`` (default) integrates over the whole record;
    ``window="per-harmonic"`` integrates each order over its own single
    oscillation period (snapped to the sample grid; order 0 uses one drive
    period).
    """
    if max_order < 1:
        raise ConfigurationError("max_order must be >= 1")
    if window not in ("full", "per-harmonic"):
        raise ConfigurationError(f"unknown window {window!r}")
    w0 = series.drive_frequency
    h = series.dt
    nyquist = np.pi / h
    if max_order * w0 >= nyquist:
        raise ConfigurationError(
            f"order {max_order} at w0={w0} exceeds the Nyquist frequency {nyquist:.6g}"
        )
    orders = np.arange(max_order + 1)
    t = series.times - series.times[0]
    if window == "full":
        phases = np.exp(-1j * w0 * np.outer(orders, t))
        amps = np.trapezoid(phases * series.values, dx=h, axis=1) / series.span
    else:
        amps = np.empty(max_order + 1, dtype=complex)
        for k in orders:
            t_window = 2.0 * np.pi / (w0 * max(k, 1))
            j = max(2, round(t_window / h))
            if j >= t.size:
                j = t.size - 1
            seg = slice(0, j + 1)
            amps[k] = np.trapezoid(
                np.exp(-1j * k * w0 * t[seg]) * series.values[seg], dx=h
            ) / (h * j)
    return Spectrum(
        orders=orders,
        frequencies=orders * w0,
        amplitudes=amps,
        intensities=np.abs(amps) ** 2,
        drive_frequency=w0,
    )


def spectrum_csv(spectrum: Spectrum) -> str:
    """CSV text for a spectrum: header plus one full-precision row per order."""
    lines = ["order,frequency,re_amplitude,im_amplitude,intensity"]
    for k, f, a, i in zip(
        spectrum.orders.tolist(),
        spectrum.frequencies.tolist(),
        spectrum.amplitudes.tolist(),
        spectrum.intensities.tolist(),
    ):
        lines.append(f"{k},{f!r},{a.real!r},{a.imag!r},{i!r}")
    return "\n".join(lines) + "\n"


def envelope_slope(spectrum: Spectrum, k_min: int, k_max: int) -> float:
    """Least-squares slope of log10 intensity versus harmonic order over
    orders k_min..k_max inclusive; the package's proxy for spectral decay."""
    if not 0 <= k_min < k_max:
        raise ConfigurationError(f"bad order interval [{k_min}, {k_max}]")
    if k_max > spectrum.orders[-1]:
        raise ConfigurationError(f"order {k_max} beyond spectrum extent {spectrum.orders[-1]}")
    sel = slice(int(np.searchsorted(spectrum.orders, k_min)), int(np.searchsorted(spectrum.orders, k_max)) + 1)
    intens = spectrum.intensities[sel]
    if np.any(intens <= 0):
        raise UndefinedSlopeError(
            f"zero intensity inside orders [{k_min}, {k_max}]; slope undefined"
        )
    k = spectrum.orders[sel].astype(float)
    return float(np.polyfit(k, np.log10(intens), 1)[0])
