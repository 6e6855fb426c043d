"""k-resolved tight-binding matrices of the three-amplitude honeycomb model.

Builds the 3x3 hop block A(k), the 6x6 Hermitian T(k) with off-diagonal
blocks A, A*, the single-bond components S1, S2, S3, and the pristine
dispersion m(k).  Eigenvalues of T(k) come in +/- pairs and are computed as
square roots of the eigenvalues of A*A, themselves obtained from the cubic
characteristic polynomial in trigonometric closed form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lattice import BASIS

SQRT2 = np.sqrt(2.0)


@dataclass(frozen=True)
class HoppingTriple:
    """Hopping amplitudes (t, u, v) with their symmetric statistics.

    ``mean`` is the average E, ``spread`` the standard deviation s (with the
    1/3 normalization), ``norm`` the Euclidean norm S, and ``product`` the
    product W.  They satisfy S^2 = 3 (E^2 + s^2).
    """

    t: float
    u: float
    v: float

    @classmethod
    def coerce(cls, cfg) -> "HoppingTriple":
        if isinstance(cfg, cls):
            return cfg
        t, u, v = (float(x) for x in cfg)
        return cls(t, u, v)

    @property
    def mean(self) -> float:
        return (self.t + self.u + self.v) / 3.0

    @property
    def norm(self) -> float:
        return float(np.sqrt(self.t**2 + self.u**2 + self.v**2))

    @property
    def spread(self) -> float:
        E = self.mean
        var = ((self.t - E) ** 2 + (self.u - E) ** 2 + (self.v - E) ** 2) / 3.0
        return float(np.sqrt(max(var, 0.0)))

    @property
    def product(self) -> float:
        return self.t * self.u * self.v

    def as_array(self) -> np.ndarray:
        return np.array([self.t, self.u, self.v])

    def sorted(self) -> "HoppingTriple":
        t, u, v = sorted((self.t, self.u, self.v))
        return HoppingTriple(t, u, v)


@dataclass(frozen=True)
class BlochMatrix:
    """A(k) and the Hermitian T(k) = [[0, A], [A*, 0]] at one k-point."""

    k: np.ndarray
    a: np.ndarray
    t: np.ndarray


@dataclass(frozen=True)
class BandSet:
    """The six eigenvalues of T(k), ascending; values[i] = -values[5-i]."""

    k: np.ndarray
    values: np.ndarray


def bloch_a(cfg, k: np.ndarray) -> np.ndarray:
    """3x3 hop block: t on the diagonal, u below, v carrying the cell phases."""
    c = HoppingTriple.coerce(cfg)
    k = np.asarray(k, dtype=float)
    p1 = np.exp(-1j * (k @ BASIS.b1))
    p2 = np.exp(-1j * (k @ BASIS.b2))
    p12 = np.exp(1j * (k @ (BASIS.b1 + BASIS.b2)))
    return np.array(
        [
            [c.t, c.v * p1, c.u],
            [c.u, c.t, c.v * p12],
            [c.v * p2, c.u, c.t],
        ]
    )


def bloch_a_many(cfg, kpts: np.ndarray) -> np.ndarray:
    """Batched A(k) for an (N, 2) array of k-points; returns (N, 3, 3)."""
    c = HoppingTriple.coerce(cfg)
    kpts = np.atleast_2d(np.asarray(kpts, dtype=float))
    p1 = np.exp(-1j * (kpts @ BASIS.b1))
    p2 = np.exp(-1j * (kpts @ BASIS.b2))
    p12 = np.exp(1j * (kpts @ (BASIS.b1 + BASIS.b2)))
    out = np.zeros((len(kpts), 3, 3), dtype=complex)
    out[:, 0, 0] = out[:, 1, 1] = out[:, 2, 2] = c.t
    out[:, 0, 2] = out[:, 1, 0] = out[:, 2, 1] = c.u
    out[:, 0, 1] = c.v * p1
    out[:, 1, 2] = c.v * p12
    out[:, 2, 0] = c.v * p2
    return out


def bloch_t(cfg, k: np.ndarray) -> BlochMatrix:
    """Assemble T(k) from the hop block A(k)."""
    k = np.asarray(k, dtype=float)
    a = bloch_a(cfg, k)
    zero = np.zeros((3, 3), dtype=complex)
    t = np.block([[zero, a], [a.conj().T, zero]])
    return BlochMatrix(k=k, a=a, t=t)


def hop_components(k: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Single-bond matrices with T(cfg, k) = t S1 + u S2 + v S3; each Si^2 = I."""
    s1 = bloch_t((1.0, 0.0, 0.0), k).t
    s2 = bloch_t((0.0, 1.0, 0.0), k).t
    s3 = bloch_t((0.0, 0.0, 1.0), k).t
    return s1, s2, s3


def dispersion_m(k: np.ndarray) -> np.ndarray | float:
    """Pristine dispersion m(k) = |1 + e^{i k.a1} + e^{i k.a2}|, in [0, 3]."""
    k = np.asarray(k, dtype=float)
    amp = 1.0 + np.exp(1j * (k @ BASIS.a1)) + np.exp(1j * (k @ BASIS.a2))
    m = np.abs(amp)
    return float(m) if m.ndim == 0 else m


def cubic_roots_desc(alpha, beta, gamma) -> np.ndarray:
    """All-real roots of x^3 - alpha x^2 + beta x - gamma, stacked on the last axis.

    Trigonometric closed form for the depressed cubic; exact on triple roots
    (the arccos argument is clipped, so near-degenerate inputs lose at most
    half the working precision -- callers needing better use the eigensolve
    fallback in :func:`singular_values_sq`).
    """
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    gamma = np.asarray(gamma, dtype=float)
    p = beta - alpha * alpha / 3.0
    q = -gamma + alpha * beta / 3.0 - 2.0 * alpha**3 / 27.0
    r = np.sqrt(np.maximum(-p / 3.0, 0.0))
    denom = 2.0 * r**3
    ratio = np.divide(-q, denom, out=np.ones_like(denom), where=denom > 0.0)
    cos3 = np.clip(ratio, -1.0, 1.0)
    phi = np.arccos(cos3) / 3.0
    shift = alpha / 3.0
    roots = np.stack(
        [2.0 * r * np.cos(phi - 2.0 * np.pi * j / 3.0) + shift for j in range(3)],
        axis=-1,
    )
    return roots


def _degenerate_mask(alpha, beta, gamma) -> np.ndarray:
    # discriminant of the depressed cubic, scaled by the root size alpha
    alpha = np.asarray(alpha, dtype=float)
    p = beta - alpha * alpha / 3.0
    q = -gamma + alpha * beta / 3.0 - 2.0 * alpha**3 / 27.0
    disc = -4.0 * p**3 - 27.0 * q * q
    scale = np.maximum(np.abs(alpha), 1e-300)
    near_multiple = np.abs(disc) / scale**6 < 1e-12
    # a true triple root (p ~ 0) is exact in the closed form; skip it
    triple = np.abs(p) / scale**2 < 1e-13
    return near_multiple & ~triple


def singular_values_sq(
    cfg,
    kpts: np.ndarray,
    z_re: np.ndarray | None = None,
    z_abs2: np.ndarray | None = None,
) -> np.ndarray:
    """Eigenvalues of A*A(k) for a batch of k-points, shape (N, 3), unordered.

    Closed-form cubic roots with a dense eigensolve fallback on points whose
    characteristic discriminant is within 1e-12 of a multiple root.  The
    Z-factor arrays may be passed in when precomputed for a fixed grid.
    """
    from .sympoly import coeff_arrays, z_factor

    kpts = np.atleast_2d(np.asarray(kpts, dtype=float))
    if z_re is None or z_abs2 is None:
        z, _ = z_factor(kpts)
        z_re, z_abs2 = z.real, np.abs(z) ** 2
    alpha, beta, gamma = coeff_arrays(cfg, z_re, z_abs2)
    alpha = np.broadcast_to(np.asarray(alpha, dtype=float), beta.shape)
    roots = cubic_roots_desc(alpha, beta, gamma)
    mask = _degenerate_mask(alpha, beta, gamma)
    if np.any(mask):
        a = bloch_a_many(cfg, kpts[mask])
        gram = np.einsum("nji,njl->nil", a.conj(), a)
        roots[mask] = np.linalg.eigvalsh(gram)
    return np.maximum(roots, 0.0)


def singular_values(cfg, k: np.ndarray) -> np.ndarray:
    """Singular values of A(k) at a single k, ascending."""
    sq = singular_values_sq(cfg, np.asarray(k, dtype=float)[None, :])[0]
    return np.sort(np.sqrt(sq))


def band_set(cfg, k: np.ndarray) -> BandSet:
    """Eigenvalues of T(cfg, k): the +/- singular values of A(k), ascending."""
    k = np.asarray(k, dtype=float)
    sv = singular_values(cfg, k)
    values = np.concatenate([-sv[::-1], sv])
    return BandSet(k=k, values=values)


def folded_bands(t: float, k: np.ndarray) -> BandSet:
    """Pristine bands over B6 by folding: +/- t*m at k, k+b1*, k+b2*."""
    k = np.asarray(k, dtype=float)
    m = np.array(
        [
            dispersion_m(k),
            dispersion_m(k + BASIS.b1s),
            dispersion_m(k + BASIS.b2s),
        ]
    )
    vals = np.sort(np.concatenate([t * m, -t * m]))
    return BandSet(k=k, values=vals)


def spectral_bounds(cfg) -> tuple[float, float]:
    """Spectral interval edges (a, b) = (3 s / sqrt(2), 3 E) for t, u, v >= 0.

    The spectrum of the hopping operator is [-b, -a] u [a, b]; both edges are
    attained by |T|(k=0).  Negative amplitudes are rejected because the
    closed form assumes the nonnegative orthant.
    """
    c = HoppingTriple.coerce(cfg)
    if min(c.t, c.u, c.v) < 0.0:
        raise ValueError("spectral_bounds needs nonnegative amplitudes")
    return 3.0 * c.spread / SQRT2, 3.0 * c.mean
