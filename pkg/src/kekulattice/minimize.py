"""Energy minimization over hopping triples, symmetry classes, phase scans.

Every minimizer has two equal amplitudes, so the search runs on the
two-parameter slice (t~, t~, v~) with a derivative-free simplex from a
deterministic set of multistarts; an optional three-parameter multistart
run cross-checks the slice reduction.  A scan over the rigidity locates
the single distorted-to-pristine flip, and bisection refines it.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np
from scipy import optimize

from . import energy
from .bloch import HoppingTriple
from .errors import NumericalError
from .lattice import QuadratureGrid, Zone, make_grid

#: Gap opened by a spread-s configuration: 2 * (3/sqrt(2)) * s.
GAP_FACTOR = 3.0 * np.sqrt(2.0)

#: Deterministic slice multistarts spanning [0.2, 3]^2.
SLICE_STARTS = (
    (0.5, 0.5),
    (0.5, 1.7),
    (1.7, 0.5),
    (1.1, 1.1),
    (0.8, 2.6),
    (2.6, 0.8),
    (2.0, 2.0),
    (2.8, 2.8),
)


class SymmetryClass(str, Enum):
    PRISTINE = "Pristine"
    KEKULE_O = "KekuleO"
    ASYMMETRIC = "Asymmetric"


class Phase(str, Enum):
    DISTORTED = "Distorted"
    PRISTINE = "Pristine"


@dataclass(frozen=True)
class MinimizeOptions:
    """Tuning knobs of the simplex search; defaults match the test contracts."""

    max_iter: int = 200
    energy_tol: float = 1e-9
    sym_tol: float = 1e-5
    coarse_n: int = 64
    seed: int = 0
    cross_check_3d: bool = True
    threads: int = 1
    starts: tuple = SLICE_STARTS


@dataclass(frozen=True)
class MinimizerResult:
    """Canonicalized minimizer (amplitudes ascending) with its diagnostics."""

    cfg: HoppingTriple
    energy: float
    sym_class: SymmetryClass
    gap: float
    mu: float
    iterations: int
    converged: bool


@dataclass(frozen=True)
class PhasePoint:
    """One scan row: the slice minimizer against the pristine optimum."""

    mu: float
    t_low: float
    t_high: float
    gap: float
    energy_kekule: float
    energy_pristine: float
    phase: Phase


def classify_symmetry(cfg, sym_tol: float) -> SymmetryClass:
    """Pristine when all amplitudes agree, KekuleO when exactly one pair does."""
    if sym_tol <= 0.0:
        raise ValueError("symmetry tolerance must be positive")
    t, u, v = sorted(HoppingTriple.coerce(cfg).as_array())
    if v - t <= sym_tol:
        return SymmetryClass.PRISTINE
    if min(u - t, v - u) <= sym_tol:
        return SymmetryClass.KEKULE_O
    return SymmetryClass.ASYMMETRIC


def _map_ordered(fn, items, threads: int):
    # results collected in input order so thread count never changes output
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


def _coarse_grid(grid: QuadratureGrid, coarse_n: int) -> QuadratureGrid:
    n = min(coarse_n, grid.n)
    key = ("coarse_grid", n)
    if key not in grid._cache:
        grid._cache[key] = grid if n == grid.n else make_grid(grid.zone, n, grid.shift)
    return grid._cache[key]


def pristine_slice_energy(mu: float, grid: QuadratureGrid) -> tuple[float, float]:
    """Pristine optimum t* and its total energy on this grid's quadrature."""
    vtr_unit = energy._vtr_pristine_unit(grid)
    t_star = 1.0 + 2.0 / (3.0 * mu) * vtr_unit
    total = -t_star * vtr_unit + mu / 4.0 * 3.0 * (t_star - 1.0) ** 2
    return t_star, total


def _slice_objective(mu: float, grid: QuadratureGrid):
    def f(x: np.ndarray) -> float:
        tt, vv = abs(x[0]), abs(x[1])
        return energy.vtr_abs_t((tt, tt, vv), grid) * -1.0 + energy.elastic_energy(
            (tt, tt, vv), mu
        )

    return f


def _full_objective(mu: float, grid: QuadratureGrid):
    def f(x: np.ndarray) -> float:
        cfg = tuple(abs(v) for v in x)
        return -energy.vtr_abs_t(cfg, grid) + energy.elastic_energy(cfg, mu)

    return f


def _nelder_mead(f, x0, max_iter, xatol, fatol):
    res = optimize.minimize(
        f,
        np.asarray(x0, dtype=float),
        method="Nelder-Mead",
        options={"maxiter": max_iter, "xatol": xatol, "fatol": fatol},
    )
    return np.abs(res.x), float(res.fun), int(res.nit), bool(res.success)


def _dedupe(points, tol: float = 1e-3):
    uniq: list[np.ndarray] = []
    for p in points:
        if not any(np.max(np.abs(p - q)) <= tol for q in uniq):
            uniq.append(p)
    return uniq


def minimize_energy(
    mu: float, grid: QuadratureGrid, opts: MinimizeOptions | None = None
) -> MinimizerResult:
    """Minimize the total energy over (t, u, v) at fixed rigidity.

    Runs the deterministic slice multistarts on a coarse companion grid,
    polishes every distinct candidate (plus seeds bracketing the pristine
    optimum, so the distorted basin survives near the transition) on the
    full grid, and optionally cross-checks with a three-parameter
    multistart.  The result is canonicalized with amplitudes ascending.

    Parameters
    ----------
    mu : float
        Rigidity, positive.
    grid : QuadratureGrid
        B6 quadrature grid for the quantum term.
    opts : MinimizeOptions, optional
        Search controls; ``opts.threads > 1`` runs multistarts in parallel
        without changing the result.
    """
    if mu <= 0.0:
        raise ValueError(f"rigidity mu must be positive, got {mu}")
    if grid.zone is not Zone.B6:
        raise ValueError("minimize_energy needs a B6 grid")
    opts = opts or MinimizeOptions()

    coarse = _coarse_grid(grid, opts.coarse_n)
    f_coarse = _slice_objective(mu, coarse)
    f_full = _slice_objective(mu, grid)
    iterations = 0

    coarse_runs = _map_ordered(
        lambda x0: _nelder_mead(f_coarse, x0, opts.max_iter, 1e-4, 1e-7),
        [np.abs(np.asarray(s, dtype=float)) for s in opts.starts],
        opts.threads,
    )
    candidates = []
    for x, _, nit, _ in coarse_runs:
        candidates.append(x)
        iterations += nit

    # Near the transition the coarse landscape can miss the shallow distorted
    # basin, so always polish seeds straddling the pristine optimum as well.
    t_star, _ = pristine_slice_energy(mu, grid)
    candidates.append(np.array([t_star, t_star]))
    for d in (0.02, 0.1):
        candidates.append(np.array([t_star - d, t_star + 2.0 * d]))
        candidates.append(np.array([t_star + d, t_star - 2.0 * d]))

    polish_iter = max(2 * opts.max_iter, 400)
    polished = _map_ordered(
        lambda x0: _nelder_mead(f_full, x0, polish_iter, 1e-10, 1e-13),
        _dedupe(candidates),
        opts.threads,
    )
    best_x, best_f, best_ok = None, np.inf, False
    for x, fval, nit, ok in polished:
        iterations += nit
        key_new = (fval, tuple(np.sort(np.array([x[0], x[0], x[1]]))))
        key_old = (best_f, tuple(np.sort(np.array([best_x[0], best_x[0], best_x[1]])))) if best_x is not None else None
        if key_old is None or key_new < key_old:
            best_x, best_f, best_ok = x, fval, ok
    cfg_best = np.array([best_x[0], best_x[0], best_x[1]])

    if opts.cross_check_3d:
        rng = np.random.default_rng(opts.seed)
        f3_coarse = _full_objective(mu, coarse)
        f3_full = _full_objective(mu, grid)
        starts3 = [
            cfg_best.copy(),
            cfg_best + rng.uniform(-0.05, 0.05, 3),
            np.array([1.0, 1.0, 1.0]) + rng.uniform(-0.05, 0.05, 3),
            np.array([0.5, 1.2, 2.4]),
        ]
        runs3 = _map_ordered(
            lambda x0: _nelder_mead(f3_coarse, x0, opts.max_iter, 1e-4, 1e-7),
            starts3,
            opts.threads,
        )
        seeds3 = []
        for x, _, nit, _ in runs3:
            seeds3.append(x)
            iterations += nit
        seeds3.append(cfg_best.copy())
        for x0 in _dedupe(seeds3):
            x, fval, nit, ok = _nelder_mead(f3_full, x0, polish_iter, 1e-10, 1e-13)
            iterations += nit
            if fval < best_f - 1e-12:
                cfg_best, best_f, best_ok = x, fval, ok

    cfg = HoppingTriple.coerce(np.sort(np.abs(cfg_best))).sorted()
    return MinimizerResult(
        cfg=cfg,
        energy=best_f,
        sym_class=classify_symmetry(cfg, opts.sym_tol),
        gap=GAP_FACTOR * cfg.spread,
        mu=mu,
        iterations=iterations,
        converged=best_ok,
    )


def phase_scan(
    mu_from: float,
    mu_to: float,
    steps: int,
    grid: QuadratureGrid,
    opts: MinimizeOptions | None = None,
) -> list[PhasePoint]:
    """Minimize at each rigidity on a uniform scan and tag the phase.

    A point is Distorted when its minimizer beats the pristine optimum by
    more than 1e-10 on the same quadrature.  The scan warns (but does not
    fail) if a Pristine point is followed by a Distorted one; monotonicity
    of the phase in mu is observed, not proven.
    """
    if not (0.0 < mu_from < mu_to):
        raise ValueError("need 0 < mu_from < mu_to")
    if steps < 1:
        raise ValueError("need at least one scan step")
    opts = opts or MinimizeOptions()
    mus = [mu_from] if steps == 1 else list(np.linspace(mu_from, mu_to, steps))

    inner = replace(opts, threads=1)

    def scan_point(mu: float) -> PhasePoint:
        res = minimize_energy(mu, grid, inner)
        _, e_pristine = pristine_slice_energy(mu, grid)
        distorted = res.energy < e_pristine - 1e-10
        return PhasePoint(
            mu=mu,
            t_low=res.cfg.t,
            t_high=res.cfg.v,
            gap=res.gap,
            energy_kekule=res.energy,
            energy_pristine=e_pristine,
            phase=Phase.DISTORTED if distorted else Phase.PRISTINE,
        )

    points = _map_ordered(scan_point, mus, opts.threads)
    seen_pristine = False
    for p in points:
        if p.phase is Phase.PRISTINE:
            seen_pristine = True
        elif seen_pristine:
            warnings.warn(
                f"phase scan is not monotone: Distorted point at mu={p.mu:.6g} "
                "after a Pristine one",
                stacklevel=2,
            )
            break
    return points


def transition_estimate(
    grid: QuadratureGrid,
    tol: float,
    opts: MinimizeOptions | None = None,
    bracket: tuple[float, float] = (0.5, 1.5),
) -> float:
    """Bisect the rigidity at which the distorted minimizer stops winning.

    The predicate "the slice minimizer beats the pristine optimum" must be
    true at the low edge and false at the high edge of the initial bracket;
    the returned midpoint is accurate to half the final bracket width
    (<= tol).
    """
    if tol <= 0.0:
        raise ValueError("tolerance must be positive")
    opts = opts or MinimizeOptions()

    def distorted_wins(mu: float) -> bool:
        res = minimize_energy(mu, grid, opts)
        _, e_pristine = pristine_slice_energy(mu, grid)
        return res.energy < e_pristine - 1e-10

    lo, hi = bracket
    if not distorted_wins(lo) or distorted_wins(hi):
        raise NumericalError(
            f"transition predicate is not monotone across [{lo:.6g}, {hi:.6g}]"
        )
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if distorted_wins(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
