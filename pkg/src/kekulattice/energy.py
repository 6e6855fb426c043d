"""Trace-per-atom energy: zone quadrature, elastic term, pristine optimum.

The quantum term is the normalized B6 average of the trace of |T|(k) per
Carbon atom, ``(1/3) avg_k sum_i sqrt(eig_i(A*A))``; the elastic term is
``(mu/4) sum (t_i - 1)^2``.  For pristine amplitudes the quantum term equals
the B2 average of the dispersion m, which fixes the closed-form optimum
``t* = 1 + (2 / 3 mu) avg(m)``.  A strongly convex elastic generalization
replaces the quadratic well and keeps a unique pristine optimum and a
finite critical rigidity.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np
from scipy import optimize

from . import bloch
from .bloch import HoppingTriple
from .errors import NumericalError
from .lattice import QuadratureGrid, Zone
from .sympoly import z_factor

_MAX_BRACKET = 1.0e6


@dataclass(frozen=True)
class EnergyBreakdown:
    """Quantum term, elastic term, their sum, and the quadrature metadata.

    ``quad_error`` is the refinement estimate |quantum(n) - quantum(n/2)|.
    """

    quantum: float
    elastic: float
    total: float
    grid_n: int
    quad_error: float


class ElasticKind(str, Enum):
    QUADRATIC = "Quadratic"
    CUSTOM = "Custom"


@dataclass(frozen=True)
class ElasticModel:
    """Per-bond elastic well F with its convexity data.

    ``strong_convexity_alpha`` is half the infimum of F'' and ``minimum_at``
    the unique minimizer C > 0.  Custom wells must not reward negative
    amplitudes: F(t) >= F(|t|) for t < 0 (checked on sample points).
    """

    kind: ElasticKind
    f: Callable[[float], float]
    f_prime: Callable[[float], float]
    strong_convexity_alpha: float
    minimum_at: float

    @classmethod
    def quadratic(cls) -> "ElasticModel":
        return cls(
            kind=ElasticKind.QUADRATIC,
            f=lambda x: (x - 1.0) ** 2,
            f_prime=lambda x: 2.0 * (x - 1.0),
            strong_convexity_alpha=1.0,
            minimum_at=1.0,
        )

    @classmethod
    def custom(
        cls,
        f: Callable[[float], float],
        f_prime: Callable[[float], float],
        strong_convexity_alpha: float,
        minimum_at: float,
    ) -> "ElasticModel":
        if strong_convexity_alpha <= 0.0:
            raise ValueError("strong convexity constant must be positive")
        if minimum_at <= 0.0:
            raise ValueError("the elastic minimum must sit at a positive amplitude")
        for t in np.linspace(-10.0, -1e-3, 64):
            if f(t) < f(abs(t)) - 1e-12:
                raise ValueError("elastic well must satisfy F(t) >= F(|t|) for t < 0")
        return cls(
            kind=ElasticKind.CUSTOM,
            f=f,
            f_prime=f_prime,
            strong_convexity_alpha=strong_convexity_alpha,
            minimum_at=minimum_at,
        )


def _z_arrays(grid: QuadratureGrid) -> tuple[np.ndarray, np.ndarray]:
    if "z_arrays" not in grid._cache:
        z, _ = z_factor(grid.points)
        grid._cache["z_arrays"] = (np.ascontiguousarray(z.real), np.abs(z) ** 2)
    return grid._cache["z_arrays"]


def _require_zone(grid: QuadratureGrid, zone: Zone, what: str) -> None:
    if grid.zone is not zone:
        raise ValueError(f"{what} needs a {zone.value} grid, got {grid.zone.value}")


def mean_dispersion(grid: QuadratureGrid) -> float:
    """B2 zone average of the pristine dispersion m(k)."""
    _require_zone(grid, Zone.B2, "mean_dispersion")
    if "mean_m" not in grid._cache:
        grid._cache["mean_m"] = grid.average(bloch.dispersion_m(grid.points))
    return grid._cache["mean_m"]


def mean_inverse_dispersion(grid: QuadratureGrid) -> float:
    """B2 zone average of 1/m(k); the integrand has integrable conical poles.

    The shifted grid never samples the Dirac points, so the plain mean
    converges like 1/n; pair with ``grid.half()`` for an error estimate.
    """
    _require_zone(grid, Zone.B2, "mean_inverse_dispersion")
    if "mean_inv_m" not in grid._cache:
        m = bloch.dispersion_m(grid.points)
        grid._cache["mean_inv_m"] = grid.average(1.0 / m)
    return grid._cache["mean_inv_m"]


def vtr_abs_t(cfg, grid: QuadratureGrid) -> float:
    """Trace of |T| per Carbon atom as a B6 grid average.

    Parameters
    ----------
    cfg : HoppingTriple or 3-sequence
        Hopping amplitudes; any real values are allowed.
    grid : QuadratureGrid
        Must sample B6 (the integrand is only B6-periodic).

    Returns
    -------
    float
        ``(1/3) avg_k sum_i sqrt(eig_i(A*A(k)))``, nonnegative.
    """
    _require_zone(grid, Zone.B6, "vtr_abs_t")
    z_re, z_abs2 = _z_arrays(grid)
    sq = bloch.singular_values_sq(cfg, grid.points, z_re=z_re, z_abs2=z_abs2)
    return grid.average(np.sqrt(sq).sum(axis=-1)) / 3.0


def elastic_energy(cfg, mu: float) -> float:
    """Quadratic distortion penalty (mu/4) sum (t_i - 1)^2."""
    c = HoppingTriple.coerce(cfg)
    return mu / 4.0 * ((c.t - 1.0) ** 2 + (c.u - 1.0) ** 2 + (c.v - 1.0) ** 2)


def total_energy(cfg, mu: float, grid: QuadratureGrid) -> EnergyBreakdown:
    """Total energy per Carbon atom with its quadrature refinement error."""
    if mu <= 0.0:
        raise ValueError(f"rigidity mu must be positive, got {mu}")
    quantum = -vtr_abs_t(cfg, grid)
    coarse = -vtr_abs_t(cfg, grid.half())
    elastic = elastic_energy(cfg, mu)
    return EnergyBreakdown(
        quantum=quantum,
        elastic=elastic,
        total=quantum + elastic,
        grid_n=grid.n,
        quad_error=abs(quantum - coarse),
    )


def _vtr_pristine_unit(grid: QuadratureGrid) -> float:
    # quantum trace of the unit pristine configuration, on either zone's route
    if "vtr_unit" not in grid._cache:
        if grid.zone is Zone.B2:
            grid._cache["vtr_unit"] = mean_dispersion(grid)
        else:
            grid._cache["vtr_unit"] = vtr_abs_t((1.0, 1.0, 1.0), grid)
    return grid._cache["vtr_unit"]


def pristine_optimum(mu: float, grid: QuadratureGrid) -> float:
    """Unique optimal uniform amplitude t* = 1 + (2 / 3 mu) avg(m).

    Accepts either zone: a B2 grid averages m directly, a B6 grid uses the
    folded route (the two agree within quadrature tolerance).
    """
    if mu <= 0.0:
        raise ValueError(f"rigidity mu must be positive, got {mu}")
    return 1.0 + 2.0 / (3.0 * mu) * _vtr_pristine_unit(grid)


def generalized_pristine_optimum(model: ElasticModel, mu: float, grid: QuadratureGrid) -> float:
    """Optimal uniform amplitude for a strongly convex elastic well.

    Solves ``F'(t*) = (4 / 3 mu) avg(m)`` by bracketed root finding on
    [C, C + 1e6]; t* is unique because F' is increasing, and decreases in mu
    toward C.
    """
    if mu <= 0.0:
        raise ValueError(f"rigidity mu must be positive, got {mu}")
    target = 4.0 / (3.0 * mu) * _vtr_pristine_unit(grid)
    lo = model.minimum_at
    hi = model.minimum_at + _MAX_BRACKET
    if model.f_prime(hi) < target:
        raise NumericalError(
            "elastic well derivative never reaches the pristine target on "
            f"[{lo:.6g}, {hi:.6g}]; the model is not coercive enough"
        )
    if model.f_prime(lo) >= target:
        return float(lo)
    return float(
        optimize.brentq(
            lambda x: model.f_prime(x) - target, lo, hi, xtol=1e-10, rtol=8.9e-16
        )
    )


def generalized_critical_mu_bound(model: ElasticModel, grid: QuadratureGrid) -> float:
    """Smallest mu at which the strong-convexity bracket turns nonnegative.

    The bracket is ``(mu/2) alpha - (1/t*(mu)) avg(3/(2m) - m/6)`` with t*
    the model's pristine optimum at that mu; it is increasing in mu, so a
    single sign change is bisected on the B2 grid's quadrature values.
    Above the returned mu the pristine configuration is the unique
    minimizer.
    """
    _require_zone(grid, Zone.B2, "generalized_critical_mu_bound")
    vtr_m = 1.5 * mean_inverse_dispersion(grid) - mean_dispersion(grid) / 6.0
    alpha = model.strong_convexity_alpha

    def bracket(mu: float) -> float:
        t_star = generalized_pristine_optimum(model, mu, grid)
        return 0.5 * mu * alpha - vtr_m / t_star

    lo, hi = 1e-8, 1.0
    while bracket(hi) < 0.0:
        hi *= 2.0
        if hi > 1e12:
            raise NumericalError("no critical rigidity found below 1e12")
    if bracket(lo) >= 0.0:
        return lo
    return float(optimize.brentq(bracket, lo, hi, xtol=1e-10, rtol=8.9e-16))
