"""Eigenbasis of the 1D hard-wall box and the matrix-element tables both solvers share.

The box eigenfunctions are u_n(x) = sqrt(2/L) sin(n pi x / L) with energies
E_n = n^2 pi^2 / (2 L^2) (atomic units, -1/2 d^2/dx^2 kinetic term).  Three
position-type tables are needed:

* ``V`` -- <u_m| x |u_n> on a box of size L,
* ``Y`` -- <sin(m pi y)| y |sin(n pi y)> on the unit box (unnormalized sines),
* ``Q`` -- <sin(m pi y)| y^2 |sin(n pi y)> on the unit box.

All entries have closed forms, used here for determinism and speed; adaptive
quadrature of the defining integrals is left to the test suite as the oracle.
Indices are 1-based in formulas (n = 1 is the ground state) and 0-based in
array storage.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConfigurationError


@dataclass(frozen=True)
class BoxSpec:
    """Box geometry and basis truncation: size ``length``, first ``dimension`` states."""

    length: float
    dimension: int

    def __post_init__(self):
        if not self.length > 0:
            raise ConfigurationError(f"box length must be positive, got {self.length}")
        if self.dimension < 2:
            raise ConfigurationError(f"basis dimension must be >= 2, got {self.dimension}")


@dataclass(frozen=True)
class BasisTables:
    """Immutable matrix-element tables for one (L, N) pair.

    Attributes
    ----------
    spec : BoxSpec
        Geometry the tables were built for.
    V : ndarray, shape (N, N)
        Position elements on the size-L box.
    Y : ndarray, shape (N, N)
        Position elements on the unit box (plain sines).
    Q : ndarray, shape (N, N)
        Position-squared elements on the unit box.
    energies : ndarray, shape (N,)
        E_n = n^2 pi^2 / (2 L^2), strictly increasing.
    """

    spec: BoxSpec
    V: np.ndarray
    Y: np.ndarray
    Q: np.ndarray
    energies: np.ndarray


def eigen_energy(n: int, length: float) -> float:
    """Energy of level ``n`` in a box of size ``length``: n^2 pi^2 / (2 L^2)."""
    if n < 1:
        raise ConfigurationError(f"basis index must be >= 1, got {n}")
    if not length > 0:
        raise ConfigurationError(f"box length must be positive, got {length}")
    return (n * np.pi / length) ** 2 / 2.0


def _parity_coupling(N: int) -> np.ndarray:
    """Off-diagonal kernel m*n/(m^2-n^2)^2, zeroed on the diagonal."""
    n = np.arange(1, N + 1, dtype=float)
    m = n[:, None]
    with np.errstate(divide="ignore", invalid="ignore"):
        k = m * n / (m**2 - n**2) ** 2
    np.fill_diagonal(k, 0.0)
    return k


def position_matrix(spec: BoxSpec) -> np.ndarray:
    """<u_m| x |u_n> for the size-L box.

    Diagonal entries are L/2; off-diagonal entries vanish for even m+n
    (parity) and equal -8 L m n / (pi^2 (m^2-n^2)^2) for odd m+n.
    """
    N = spec.dimension
    n = np.arange(1, N + 1)
    odd = (n[:, None] + n[None, :]) % 2 == 1
    V = np.where(odd, -8.0 * spec.length / np.pi**2 * _parity_coupling(N), 0.0)
    np.fill_diagonal(V, spec.length / 2.0)
    return V


def unit_position_matrix(N: int) -> np.ndarray:
    """<sin(m pi y)| y |sin(n pi y)> on [0, 1] (sines not normalized).

    Exactly half of ``position_matrix`` at L = 1: diagonal 1/4, odd-parity
    off-diagonal -4 m n / (pi^2 (m^2-n^2)^2), zero otherwise.
    """
    if N < 2:
        raise ConfigurationError(f"basis dimension must be >= 2, got {N}")
    n = np.arange(1, N + 1)
    odd = (n[:, None] + n[None, :]) % 2 == 1
    Y = np.where(odd, -4.0 / np.pi**2 * _parity_coupling(N), 0.0)
    np.fill_diagonal(Y, 0.25)
    return Y


def unit_position_squared_matrix(N: int) -> np.ndarray:
    """<sin(m pi y)| y^2 |sin(n pi y)> on [0, 1] (sines not normalized).

    Diagonal 1/6 - 1/(4 pi^2 n^2); off-diagonal
    (-1)^(m+n) 4 m n / (pi^2 (m^2-n^2)^2) for every m != n.
    """
    if N < 2:
        raise ConfigurationError(f"basis dimension must be >= 2, got {N}")
    n = np.arange(1, N + 1)
    sign = np.where((n[:, None] + n[None, :]) % 2 == 1, -1.0, 1.0)
    Q = sign * 4.0 / np.pi**2 * _parity_coupling(N)
    np.fill_diagonal(Q, 1.0 / 6.0 - 1.0 / (4.0 * np.pi**2 * n.astype(float) ** 2))
    return Q


@lru_cache(maxsize=64)
def _build_tables_cached(length: float, dimension: int) -> BasisTables:
    spec = BoxSpec(length=length, dimension=dimension)
    tables = BasisTables(
        spec=spec,
        V=position_matrix(spec),
        Y=unit_position_matrix(dimension),
        Q=unit_position_squared_matrix(dimension),
        energies=np.array([eigen_energy(n, length) for n in range(1, dimension + 1)]),
    )
    for arr in (tables.V, tables.Y, tables.Q, tables.energies):
        arr.setflags(write=False)
    return tables


def build_tables(spec: BoxSpec) -> BasisTables:
    """Build (or fetch cached) tables for one geometry; the result is read-only."""
    return _build_tables_cached(spec.length, spec.dimension)
