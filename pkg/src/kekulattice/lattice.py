"""Honeycomb lattice geometry and Brillouin-zone sampling.

The triangular lattice spanned by ``a1, a2`` carries the 2-atom honeycomb
cell; the sublattice spanned by ``b1 = 2 a1 - a2`` and ``b2 = 2 a2 - a1``
carries the 6-atom cell of the three-amplitude hopping texture.  Reciprocal
cells of the two lattices are called B2 and B6 throughout; B6 has exactly
one third the area of B2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

TWO_PI = 2.0 * np.pi


class Zone(str, Enum):
    """Which Brillouin zone a k-grid samples."""

    B2 = "B2"
    B6 = "B6"


@dataclass(frozen=True)
class LatticeBasis:
    """Direct and reciprocal bases of the 2-atom and 6-atom cells.

    ``a1s, a2s`` are dual to ``a1, a2`` and span the B2 reciprocal cell;
    ``b1s, b2s`` are dual to ``b1, b2`` and span B6.  Duality means
    ``a_i . a_j* = 2 pi delta_ij`` (same for the b's).
    """

    a1: np.ndarray
    a2: np.ndarray
    b1: np.ndarray
    b2: np.ndarray
    a1s: np.ndarray
    a2s: np.ndarray
    b1s: np.ndarray
    b2s: np.ndarray
    cell_area_2: float
    cell_area_6: float

    def reciprocal(self, zone: Zone) -> tuple[np.ndarray, np.ndarray]:
        if Zone(zone) is Zone.B2:
            return self.a1s, self.a2s
        return self.b1s, self.b2s


def _dual_pair(u: np.ndarray, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # columns of 2*pi*M^-1 satisfy row_i(M) . col_j = 2*pi*delta_ij
    mat = 2.0 * np.pi * np.linalg.inv(np.array([u, v]))
    return mat[:, 0].copy(), mat[:, 1].copy()


def build_basis() -> LatticeBasis:
    """Construct the fixed honeycomb bases and their reciprocal duals."""
    a1 = np.array([np.sqrt(3.0) / 2.0, 0.5])
    a2 = np.array([np.sqrt(3.0) / 2.0, -0.5])
    b1 = 2.0 * a1 - a2
    b2 = 2.0 * a2 - a1
    a1s, a2s = _dual_pair(a1, a2)
    b1s, b2s = _dual_pair(b1, b2)
    area2 = abs(np.linalg.det(np.array([a1s, a2s])))
    area6 = abs(np.linalg.det(np.array([b1s, b2s])))
    return LatticeBasis(a1, a2, b1, b2, a1s, a2s, b1s, b2s, area2, area6)


#: Shared geometry; every module works on the same honeycomb.
BASIS = build_basis()


def dirac_points() -> tuple[np.ndarray, np.ndarray]:
    """Cartesian K and K' of B2, at reduced coordinates (1/3, 2/3) and (2/3, 1/3)."""
    K = (BASIS.a1s + 2.0 * BASIS.a2s) / 3.0
    Kp = (2.0 * BASIS.a1s + BASIS.a2s) / 3.0
    return K, Kp


def reduced_coords(k: np.ndarray, zone: Zone) -> np.ndarray:
    """Fractional coordinates of cartesian k in the zone's reciprocal basis."""
    g1, g2 = BASIS.reciprocal(zone)
    mat = np.array([g1, g2]).T
    return np.asarray(k) @ np.linalg.inv(mat).T


@dataclass(eq=False)
class QuadratureGrid:
    """Shifted uniform k-grid realizing the normalized zone average.

    Points are ``k_ij = ((i+shift1)/n) g1 + ((j+shift2)/n) g2`` in cartesian
    coordinates.  Averages over the grid are plain means in a fixed point
    order, so repeated evaluations are bit-identical.  The default half-step
    shift keeps k = 0 (B6) and the Dirac points (B2) off the sample set.
    """

    zone: Zone
    n: int
    shift: tuple[float, float]
    points: np.ndarray
    weight: float
    _cache: dict = field(default_factory=dict, repr=False)

    def average(self, values: np.ndarray) -> float:
        """Normalized zone average of per-point values (deterministic order)."""
        values = np.asarray(values)
        if values.shape[0] != self.points.shape[0]:
            raise ValueError("values do not match the grid size")
        return float(np.mean(values))

    def half(self) -> "QuadratureGrid":
        """Companion grid at n/2 (floored at 2), used for refinement errors."""
        key = "half_grid"
        if key not in self._cache:
            self._cache[key] = make_grid(self.zone, max(2, self.n // 2), self.shift)
        return self._cache[key]


def make_grid(zone: Zone | str, n: int, shift: tuple[float, float] = (0.5, 0.5)) -> QuadratureGrid:
    """Build an n-by-n shifted uniform grid over the requested zone.

    Parameters
    ----------
    zone : Zone or str
        ``Zone.B2`` or ``Zone.B6``.
    n : int
        Points per axis; must be at least 2.
    shift : pair of floats in [0, 1)
        Fractional half-step offsets of the grid.

    Returns
    -------
    QuadratureGrid
        ``n*n`` cartesian k-points of weight ``1/n**2`` each.
    """
    zone = Zone(zone)
    if n < 2:
        raise ValueError(f"grid needs n >= 2, got {n}")
    s1, s2 = float(shift[0]), float(shift[1])
    if not (0.0 <= s1 < 1.0 and 0.0 <= s2 < 1.0):
        raise ValueError(f"shift components must lie in [0, 1), got {shift}")
    g1, g2 = BASIS.reciprocal(zone)
    frac = (np.arange(n) + s1) / n
    frac2 = (np.arange(n) + s2) / n
    fi, fj = np.meshgrid(frac, frac2, indexing="ij")
    points = fi.reshape(-1, 1) * g1 + fj.reshape(-1, 1) * g2
    return QuadratureGrid(zone=zone, n=n, shift=(s1, s2), points=points, weight=1.0 / (n * n))
