"""Kagome lattice as the honeycomb line graph: Bloch bands and adjacency.

Placing a site on every honeycomb bond gives the Kagome (trihexagonal)
lattice; double hops along adjacent bonds are encoded by its adjacency
matrix.  The adjacency has a flat band pinned at -2, which is the sharp
lower bound on the neighbor quadratic form used in the large-rigidity
argument.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lattice import BASIS

#: Real-space construction cap; beyond this the Bloch route is the tool.
MAX_SUPERCELL = 8


@dataclass(frozen=True)
class KagomeBands:
    """The three adjacency bands at one k: flat = -2, lower in [-2, 1], upper in [1, 4]."""

    k: np.ndarray
    flat: float
    lower: float
    upper: float


def kagome_bloch(k: np.ndarray) -> np.ndarray:
    """3x3 real symmetric Bloch matrix of the Kagome adjacency.

    Off-diagonal entries 2 cos((a1/2).k), 2 cos((a2/2).k),
    2 cos(((a1-a2)/2).k); zero diagonal.
    """
    k = np.asarray(k, dtype=float)
    c1 = 2.0 * np.cos(0.5 * (k @ BASIS.a1))
    c2 = 2.0 * np.cos(0.5 * (k @ BASIS.a2))
    c3 = 2.0 * np.cos(0.5 * (k @ (BASIS.a1 - BASIS.a2)))
    return np.array([[0.0, c1, c2], [c1, 0.0, c3], [c2, c3, 0.0]])


def kagome_bloch_many(kpts: np.ndarray) -> np.ndarray:
    """Batched Bloch matrices for an (N, 2) array of k-points."""
    kpts = np.atleast_2d(np.asarray(kpts, dtype=float))
    c1 = 2.0 * np.cos(0.5 * (kpts @ BASIS.a1))
    c2 = 2.0 * np.cos(0.5 * (kpts @ BASIS.a2))
    c3 = 2.0 * np.cos(0.5 * (kpts @ (BASIS.a1 - BASIS.a2)))
    out = np.zeros((len(kpts), 3, 3))
    out[:, 0, 1] = out[:, 1, 0] = c1
    out[:, 0, 2] = out[:, 2, 0] = c2
    out[:, 1, 2] = out[:, 2, 1] = c3
    return out


def kagome_bands(k: np.ndarray) -> KagomeBands:
    """Closed-form bands: flat -2 and 1 +/- sqrt(3 + 2 sum cos(a_i . k))."""
    k = np.asarray(k, dtype=float)
    radicand = (
        3.0
        + 2.0 * np.cos(k @ BASIS.a1)
        + 2.0 * np.cos(k @ BASIS.a2)
        + 2.0 * np.cos(k @ (BASIS.a1 - BASIS.a2))
    )
    root = np.sqrt(max(radicand, 0.0))
    return KagomeBands(k=k, flat=-2.0, lower=float(1.0 - root), upper=float(1.0 + root))


def bond_index(L: int, i: int, j: int, n: int) -> int:
    """Flat index of bond n of the 2-atom cell at (i, j), periodic in both."""
    return 3 * ((i % L) * L + (j % L)) + n


def line_graph_adjacency(L: int) -> np.ndarray:
    """Kagome adjacency of the L x L periodic honeycomb supercell.

    Bond n=0 joins A(R)-B(R), n=1 joins A(R)-B(R-a1), n=2 joins A(R)-B(R-a2).
    Two bonds are adjacent when they share an atom, so every row sums to 4.
    """
    if L < 1:
        raise ValueError(f"supercell size must be >= 1, got {L}")
    if L > MAX_SUPERCELL:
        raise ValueError(f"real-space construction capped at L = {MAX_SUPERCELL}")
    size = 3 * L * L
    adj = np.zeros((size, size))
    for i in range(L):
        for j in range(L):
            around_a = (bond_index(L, i, j, 0), bond_index(L, i, j, 1), bond_index(L, i, j, 2))
            around_b = (
                bond_index(L, i, j, 0),
                bond_index(L, i + 1, j, 1),
                bond_index(L, i, j + 1, 2),
            )
            for trio in (around_a, around_b):
                for x in range(3):
                    for y in range(x + 1, 3):
                        adj[trio[x], trio[y]] += 1.0
                        adj[trio[y], trio[x]] += 1.0
    return adj


def bloch_spectrum_multiset(L: int) -> np.ndarray:
    """Sorted eigenvalues of the Bloch matrices over the L x L discrete k-grid."""
    ii, jj = np.meshgrid(np.arange(L), np.arange(L), indexing="ij")
    kpts = (ii.reshape(-1, 1) / L) * BASIS.a1s + (jj.reshape(-1, 1) / L) * BASIS.a2s
    return np.sort(np.linalg.eigvalsh(kagome_bloch_many(kpts)).ravel())


def hexagon_mode(L: int, i: int = 0, j: int = 0) -> np.ndarray:
    """Localized flat-band vector: alternating +/-1 on one hexagon's six bonds."""
    if L < 2:
        raise ValueError("a localized hexagon mode needs L >= 2")
    h = np.zeros(3 * L * L)
    ring = [
        (i, j, 0),
        (i + 1, j, 1),
        (i + 1, j, 2),
        (i + 1, j - 1, 0),
        (i + 1, j - 1, 1),
        (i, j, 2),
    ]
    for step, (ci, cj, n) in enumerate(ring):
        h[bond_index(L, ci, cj, n)] = 1.0 if step % 2 == 0 else -1.0
    return h


@dataclass(frozen=True)
class QuadraticBoundCheck:
    """Outcome of the neighbor quadratic-form bound with both sides."""

    passed: bool
    lhs: float
    rhs: float


def neighbor_quadratic_bound(h, L: int) -> QuadraticBoundCheck:
    """Check sum over adjacent bond pairs of h_i h_j >= -sum h_i^2.

    The left side is (1/2) <h, A h> for the periodic Kagome adjacency A;
    the bound is sharp because the flat band sits exactly at -2.
    """
    h = np.asarray(h, dtype=float)
    if h.shape != (3 * L * L,):
        raise ValueError(f"h must have 3*L^2 = {3 * L * L} entries, got {h.shape}")
    adj = line_graph_adjacency(L)
    lhs = 0.5 * float(h @ (adj @ h))
    rhs = -float(h @ h)
    return QuadraticBoundCheck(passed=lhs >= rhs - 1e-10 * max(1.0, -rhs), lhs=lhs, rhs=rhs)
