"""Second-order response of the pristine phase and the critical rigidities.

A uniform configuration perturbed along (t+2h, t-h, t-h) changes the
quantum trace at order h^2 with a k-resolved coefficient c(k) built from
the folded dispersion values m(k), m(k+b1*), m(k+b2*) and their phases.
The B6 average of c against the elastic curvature yields the rigidity
below which the pristine phase is unstable, and the B2 average of
(3/m - m) bounds the rigidity above which it is the unique minimizer.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import bloch, energy
from .lattice import BASIS, QuadratureGrid, Zone, make_grid

_DIRAC_TOL = 1e-12


@dataclass(frozen=True)
class IntegralEstimate:
    """A quadrature value with the refinement estimate |value(n) - value(n/2)|."""

    value: float
    error: float
    grid_n: int


@dataclass(frozen=True)
class PerturbationIntegrand:
    """All k-local ingredients of the second-order coefficient c(k).

    ``m0, m1, m2`` are the folded dispersion values at k, k+b1*, k+b2* with
    phases ``theta0..2``; each ``big_theta`` lies in [0, 4] and ``c_value``
    is nonnegative.
    """

    k: np.ndarray
    m0: float
    m1: float
    m2: float
    theta0: float
    theta1: float
    theta2: float
    big_theta1: float
    big_theta2: float
    big_theta3: float
    c_value: float


def _amplitude(kpts: np.ndarray) -> np.ndarray:
    return 1.0 + np.exp(1j * (kpts @ BASIS.a1)) + np.exp(1j * (kpts @ BASIS.a2))


def phase_theta(k: np.ndarray) -> float:
    """Phase of 1 + e^{i k.a1} + e^{i k.a2}; undefined at Dirac points."""
    k = np.asarray(k, dtype=float)
    amp = _amplitude(k[None, :])[0]
    if abs(amp) <= _DIRAC_TOL:
        raise ValueError("phase is undefined at a Dirac point (m(k) ~ 0)")
    return float(np.angle(amp))


def _c_parts(kpts: np.ndarray):
    amp0 = _amplitude(kpts)
    amp1 = _amplitude(kpts + BASIS.b1s)
    amp2 = _amplitude(kpts + BASIS.b2s)
    m0, m1, m2 = np.abs(amp0), np.abs(amp1), np.abs(amp2)
    th0, th1, th2 = np.angle(amp0), np.angle(amp1), np.angle(amp2)
    big1 = 2.0 - 2.0 * np.cos(2.0 * th2 - th0 - th1)
    big2 = 2.0 - 2.0 * np.cos(th0 + th2 - 2.0 * th1)
    big3 = 2.0 - 2.0 * np.cos(th1 + th2 - 2.0 * th0)
    c = (
        m2**2 * big1 / (m0 + m1)
        + m1**2 * big2 / (m0 + m2)
        + m0**2 * big3 / (m1 + m2)
    )
    return m0, m1, m2, th0, th1, th2, big1, big2, big3, c


def c_values(kpts: np.ndarray) -> np.ndarray:
    """Vectorized c(k) over an (N, 2) batch; callers keep k off the B6 origin."""
    return _c_parts(np.atleast_2d(np.asarray(kpts, dtype=float)))[-1]


def c_of_k(k: np.ndarray) -> float:
    """Second-order coefficient c(k) from the closed phase-difference form.

    The three summands cycle the folded points (k, k+b1*, k+b2*); each is a
    nonnegative numerator over a positive denominator away from the folded
    Dirac set.  Rejects k on the B6 origin, where all three denominators'
    ingredients vanish together.
    """
    k = np.asarray(k, dtype=float)
    kpts = k[None, :]
    m0 = np.abs(_amplitude(kpts))[0]
    m1 = np.abs(_amplitude(kpts + BASIS.b1s))[0]
    m2 = np.abs(_amplitude(kpts + BASIS.b2s))[0]
    if min(m0, m1, m2) <= _DIRAC_TOL or m1 + m2 <= 1e-9:
        raise ValueError("c(k) is undefined on the folded Dirac set (k = 0 in B6)")
    return float(_c_parts(kpts)[-1][0])


def integrand_at(k: np.ndarray) -> PerturbationIntegrand:
    """Full record of the c(k) ingredients at one k-point."""
    k = np.asarray(k, dtype=float)
    c_of_k(k)  # reuse the domain check
    m0, m1, m2, th0, th1, th2, b1_, b2_, b3_, c = (
        x[0] for x in _c_parts(k[None, :])
    )
    return PerturbationIntegrand(
        k=k,
        m0=float(m0),
        m1=float(m1),
        m2=float(m2),
        theta0=float(th0),
        theta1=float(th1),
        theta2=float(th2),
        big_theta1=float(b1_),
        big_theta2=float(b2_),
        big_theta3=float(b3_),
        c_value=float(c),
    )


def mean_c(grid: QuadratureGrid) -> float:
    """B6 zone average of c(k) on the shifted grid (never samples k = 0)."""
    if grid.zone is not Zone.B6:
        raise ValueError(f"mean_c needs a B6 grid, got {grid.zone.value}")
    if "mean_c" not in grid._cache:
        grid._cache["mean_c"] = grid.average(c_values(grid.points))
    return grid._cache["mean_c"]


def _companion_b2(grid: QuadratureGrid) -> QuadratureGrid:
    if "companion_b2" not in grid._cache:
        grid._cache["companion_b2"] = make_grid(Zone.B2, grid.n, grid.shift)
    return grid._cache["companion_b2"]


def mu_c(grid_b6: QuadratureGrid) -> IntegralEstimate:
    """Critical rigidity from the Hessian of the pristine branch.

    ``mu_c = (1/9) avg_B6(c) - (2/3) avg_B2(m)``; below this value the
    two-equal-amplitude perturbation lowers the energy at the pristine
    optimum.  The c-integrand has an integrable 1/|k| cone at the origin,
    so the value converges like 1/n and the refinement estimate against the
    half grid tracks the true error.
    """
    if grid_b6.zone is not Zone.B6:
        raise ValueError(f"mu_c needs a B6 grid, got {grid_b6.zone.value}")

    def value_on(grid: QuadratureGrid) -> float:
        avg_m = energy.mean_dispersion(_companion_b2(grid))
        return mean_c(grid) / 9.0 - 2.0 / 3.0 * avg_m

    value = value_on(grid_b6)
    coarse = value_on(grid_b6.half())
    return IntegralEstimate(value=value, error=abs(value - coarse), grid_n=grid_b6.n)


def mu_c_prime_bound(grid_b2: QuadratureGrid) -> IntegralEstimate:
    """Upper bound on the rigidity range of the distorted phase.

    ``avg_B2(3/m - m)``: positive by Cauchy-Schwarz, with the same shifted
    1/n-converging treatment of the conical 1/m poles.
    """
    if grid_b2.zone is not Zone.B2:
        raise ValueError(f"mu_c_prime_bound needs a B2 grid, got {grid_b2.zone.value}")

    def value_on(grid: QuadratureGrid) -> float:
        return 3.0 * energy.mean_inverse_dispersion(grid) - energy.mean_dispersion(grid)

    value = value_on(grid_b2)
    coarse = value_on(grid_b2.half())
    return IntegralEstimate(value=value, error=abs(value - coarse), grid_n=grid_b2.n)


def hessian_coefficient(t: float, grid_b6: QuadratureGrid) -> float:
    """Curvature coefficient (1/t) avg_B6(c) of the uniform branch at amplitude t."""
    if t <= 0.0:
        raise ValueError(f"amplitude t must be positive, got {t}")
    return mean_c(grid_b6) / t


def convexity_lower_bound(
    cfg, mu: float, grid_b2: QuadratureGrid, grid_b6: QuadratureGrid
) -> float:
    """Strong-convexity floor under the total energy near the pristine optimum.

    Returns ``E(t*) + (3 d^2 / 4 t*) [mu + avg(m) - 3 avg(1/m)]`` where t*
    is the pristine optimum on the B6 route (so the floor matches
    ``total_energy`` evaluated on the same grid) and d^2 is the mean square
    of cfg - t*.  Whenever the bracket is positive, every configuration's
    total energy sits above the returned value.
    """
    c = bloch.HoppingTriple.coerce(cfg)
    t_star = energy.pristine_optimum(mu, grid_b6)
    base = energy.total_energy((t_star, t_star, t_star), mu, grid_b6).total
    h = c.as_array() - t_star
    delta_sq = float(h @ h) / 3.0
    bracket = (
        mu
        + energy.mean_dispersion(grid_b2)
        - 3.0 * energy.mean_inverse_dispersion(grid_b2)
    )
    return base + 3.0 * delta_sq / (4.0 * t_star) * bracket
