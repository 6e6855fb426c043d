"""Symmetric-polynomial machinery of the three-amplitude model.

The eigenvalues x1, x2, x3 of A*A(k) are the roots of
``x^3 - alpha x^2 + beta x - gamma`` whose coefficients are symmetric
polynomials in (t, u, v); only the factor Z(k) carries the k-dependence.
The sum g = sqrt(x1) + sqrt(x2) + sqrt(x3) solves the quartic
``(g^2 - alpha)^2 / 4 = beta + 2 sqrt(gamma) g`` and is the unique root at
or above sqrt(alpha).  At fixed mean and norm, g is nondecreasing in the
product W = t*u*v, which pushes every minimizer onto a two-equal-amplitude
configuration; ``kekule_projection`` realizes that replacement.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import optimize

from .bloch import HoppingTriple
from .errors import NumericalError
from .lattice import BASIS

SQRT2 = np.sqrt(2.0)


def z_factor(k: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """k-dependent factors (Z, Z~) of the characteristic coefficients.

    ``Z = 3 - e^{-ik.b1} - e^{-ik.b2} - e^{ik.(b1+b2)}`` and Z~ is the same
    combination over the second-shell vectors b1-b2, 2b1+b2, b1+2b2.  Both
    have nonnegative real part everywhere.  Accepts a single k or an (N, 2)
    batch.
    """
    k = np.asarray(k, dtype=float)
    kb1 = k @ BASIS.b1
    kb2 = k @ BASIS.b2
    z = 3.0 - np.exp(-1j * kb1) - np.exp(-1j * kb2) - np.exp(1j * (kb1 + kb2))
    zt = (
        3.0
        - np.exp(1j * (kb1 - kb2))
        - np.exp(-1j * (2.0 * kb1 + kb2))
        - np.exp(-1j * (kb1 + 2.0 * kb2))
    )
    return z, zt


@dataclass(frozen=True)
class CharPolyCoeffs:
    """Coefficients of the characteristic cubic of A*A at one (cfg, k).

    ``beta = beta0 + beta1 * W`` and ``gamma = gamma0 + gamma1 * W +
    gamma2 * W^2`` expose the dependence on the product W at fixed mean and
    norm; ``z_re`` and ``z_abs2`` are Re Z(k) and |Z(k)|^2.
    """

    alpha: float
    beta: float
    gamma: float
    z_re: float
    z_abs2: float
    beta0: float
    beta1: float
    gamma0: float
    gamma1: float
    gamma2: float


def coeff_arrays(cfg, z_re: np.ndarray, z_abs2: np.ndarray):
    """Vectorized (alpha, beta, gamma) over precomputed Z-factor arrays."""
    c = HoppingTriple.coerce(cfg)
    E = c.mean
    S2 = c.t**2 + c.u**2 + c.v**2
    s2 = max(S2 / 3.0 - E * E, 0.0)
    W = c.product
    alpha = 3.0 * S2
    beta = 3.0 * S2 * S2 - 0.75 * (9.0 * E * E - S2) ** 2 + 6.0 * W * E * z_re
    g0 = 13.5 * E * s2
    gamma = g0 * g0 + 2.0 * g0 * W * z_re + W * W * z_abs2
    return alpha, beta, gamma


def charpoly_coeffs(cfg, k: np.ndarray) -> CharPolyCoeffs:
    """Characteristic coefficients of A*A(cfg, k) from the closed forms."""
    c = HoppingTriple.coerce(cfg)
    z, _ = z_factor(np.asarray(k, dtype=float))
    z_re = float(np.real(z))
    z_abs2 = float(np.abs(z) ** 2)
    E = c.mean
    S2 = c.t**2 + c.u**2 + c.v**2
    s2 = max(S2 / 3.0 - E * E, 0.0)
    W = c.product
    beta0 = 3.0 * S2 * S2 - 0.75 * (9.0 * E * E - S2) ** 2
    beta1 = 6.0 * E * z_re
    g0 = 13.5 * E * s2
    return CharPolyCoeffs(
        alpha=3.0 * S2,
        beta=beta0 + beta1 * W,
        gamma=g0 * g0 + 2.0 * g0 * W * z_re + W * W * z_abs2,
        z_re=z_re,
        z_abs2=z_abs2,
        beta0=beta0,
        beta1=beta1,
        gamma0=g0 * g0,
        gamma1=2.0 * g0 * z_re,
        gamma2=z_abs2,
    )


def g_from_quartic(coeffs: CharPolyCoeffs | tuple) -> float:
    """Sum of the square roots of the cubic's roots, via its implicit quartic.

    Solves ``(g^2 - alpha)^2 / 4 = beta + 2 sqrt(gamma) g`` for the unique
    root with ``sqrt(alpha) <= g <= sqrt(3 alpha)`` by bracketed root
    finding to 1e-12 absolute.

    Raises
    ------
    ValueError
        If gamma is negative.
    NumericalError
        If no root is bracketed, which signals inconsistent coefficients.
    """
    if isinstance(coeffs, CharPolyCoeffs):
        alpha, beta, gamma = coeffs.alpha, coeffs.beta, coeffs.gamma
    else:
        alpha, beta, gamma = (float(x) for x in coeffs)
    if gamma < 0.0:
        raise ValueError(f"gamma must be nonnegative, got {gamma}")
    if alpha <= 0.0:
        return 0.0
    sqg = np.sqrt(gamma)

    def quartic_gap(g: float) -> float:
        return 0.25 * (g * g - alpha) ** 2 - beta - 2.0 * sqg * g

    lo = np.sqrt(alpha)
    hi = np.sqrt(3.0 * alpha) * (1.0 + 1e-12) + 1e-12
    flo, fhi = quartic_gap(lo), quartic_gap(hi)
    scale = max(1.0, alpha * alpha)
    if abs(flo) <= 1e-14 * scale:
        return float(lo)
    if flo > 0.0 or fhi < 0.0:
        raise NumericalError(
            f"no root of the quartic bracketed on [{lo:.6g}, {hi:.6g}]; "
            "characteristic coefficients are inconsistent"
        )
    return float(optimize.brentq(quartic_gap, lo, hi, xtol=1e-12, rtol=8.9e-16))


class CaseTag(str, Enum):
    """Which branch of the two-equal-amplitude replacement applies."""

    SPHERE = "SphereCase"
    CIRCLE = "CircleCase"


@dataclass(frozen=True)
class KekuleProjection:
    """Replacement amplitudes (t~, t~, v~) with 0 <= t~ <= v~."""

    t_tilde: float
    v_tilde: float
    case: CaseTag


def kekule_projection(cfg) -> KekuleProjection:
    """Energy-dominating two-equal-amplitude replacement of (t, u, v).

    For mean E and spread s: if E <= s/sqrt(2) the replacement is (0, 0, S)
    on the sphere of radius S; otherwise it is the product-maximizing point
    (E - s/sqrt(2), E - s/sqrt(2), E + s*sqrt(2)) on the circle of fixed
    (E, s).  The total energy of the replacement never exceeds that of the
    input, strictly unless the input already had two equal amplitudes.
    """
    c = HoppingTriple.coerce(cfg)
    E, s = c.mean, c.spread
    if E <= s / SQRT2:
        return KekuleProjection(t_tilde=0.0, v_tilde=c.norm, case=CaseTag.SPHERE)
    return KekuleProjection(
        t_tilde=E - s / SQRT2, v_tilde=E + s * SQRT2, case=CaseTag.CIRCLE
    )


def w_extrema(E: float, s: float) -> tuple[float, float]:
    """Extrema of the product W = t*u*v over the circle of fixed (E, s).

    Both extrema have two equal coordinates:
    ``w_min = (E - s*sqrt(2)) (E + s/sqrt(2))^2`` and
    ``w_max = (E + s*sqrt(2)) (E - s/sqrt(2))^2``.
    """
    if s < 0.0:
        raise ValueError("spread s must be nonnegative")
    w_min = (E - s * SQRT2) * (E + s / SQRT2) ** 2
    w_max = (E + s * SQRT2) * (E - s / SQRT2) ** 2
    return float(w_min), float(w_max)


def w_monotonicity_floor(E: float, s: float) -> float:
    """Floor (9/4) E s^2 below which W cannot drop when E > s/sqrt(2).

    The coefficient ratio gamma1/(2 gamma2) = (Re Z / |Z|^2) (27/2) E s^2 is
    at least (9/4) E s^2 because Re Z / |Z|^2 >= 1/6 for every k, and
    ``w_min + (9/4) E s^2 >= s^3 / (4 sqrt(2)) >= 0``; together these make g
    increasing in W on the whole circle.
    """
    if s < 0.0:
        raise ValueError("spread s must be nonnegative")
    if E <= s / SQRT2:
        raise ValueError(f"requires E > s/sqrt(2), got E={E}, s={s}")
    return 2.25 * E * s * s
