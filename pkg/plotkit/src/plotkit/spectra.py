"""Reader for the harmonic-spectrum CSV contract.

Expected columns: ``order,frequency,re_amplitude,im_amplitude,intensity``
with a header row.  Only the public file format is consumed here; the
simulation package is never imported.
"""

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

HEADER = ["order", "frequency", "re_amplitude", "im_amplitude", "intensity"]


class SpectrumFileError(ValueError):
    """File missing or not a valid spectrum CSV."""


@dataclass(frozen=True)
class SpectrumData:
    path: Path
    orders: np.ndarray
    intensities: np.ndarray


def read_spectrum(path: Path) -> SpectrumData:
    path = Path(path)
    if not path.exists():
        raise SpectrumFileError(f"{path}: no such file")
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0] != HEADER:
        raise SpectrumFileError(f"{path}: missing spectrum header {','.join(HEADER)}")
    if len(rows) < 2:
        raise SpectrumFileError(f"{path}: no data rows")
    try:
        table = np.array([[float(x) for x in r] for r in rows[1:]])
        if table.shape[1] != len(HEADER):
            raise ValueError(f"expected {len(HEADER)} columns")
        orders = table[:, 0].astype(int)
        intensities = table[:, 4]
    except ValueError as exc:
        raise SpectrumFileError(f"{path}: malformed row ({exc})")
    if not np.all(np.isfinite(intensities)):
        raise SpectrumFileError(f"{path}: non-finite intensities")
    return SpectrumData(path=path, orders=orders, intensities=intensities)
