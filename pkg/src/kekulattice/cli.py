"""Command-line interface: bands, energies, minimization, phase scans.

Outputs are CSV (default) or JSON with numbers at 12 significant digits;
report paths with ``--out`` also render a matplotlib figure next to the
delimited file (``--no-plot`` disables).  Exit codes: 0 success, 1 usage
error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import energy, kagome, minimize, perturbation, plotting, verify
from .bloch import band_set
from .errors import NumericalError
from .lattice import BASIS, Zone, make_grid

THREADS_ENV = "KEKULATTICE_THREADS"
COMMANDS = ("bands", "energy", "minimize", "phase-scan", "critical", "kagome", "verify")


@dataclass
class RunConfig:
    """Resolved invocation: one command plus its validated knobs."""

    command: str
    grid_n: int = 256
    mu: float | None = None
    tuv: tuple[float, float, float] | None = None
    mu_range: tuple[float, float, int] | None = None
    out: Path | None = None
    format: str = "csv"
    seed: int = 0
    threads: int = 0
    plot: bool = True
    segment_points: int = 128
    inject_fault: str | None = None


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def _csv(header: list[str], rows: list[list]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(x) for x in row) for row in rows)
    return "\n".join(lines) + "\n"


def _json_rows(header: list[str], rows: list[list]) -> str:
    return json.dumps([dict(zip(header, row)) for row in rows], indent=2) + "\n"


def _tabular(cfg: RunConfig, header: list[str], rows: list[list]) -> str:
    if cfg.format == "json":
        return _json_rows(header, rows)
    return _csv(header, rows)


def _parse_tuv(text: str) -> tuple[float, float, float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("--tuv expects three comma-separated reals")
    return tuple(float(p) for p in parts)


def _parse_range(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("--mu-range expects FROM:TO:STEPS")
    return float(parts[0]), float(parts[1]), int(parts[2])


def resolve_threads(flag: int) -> int:
    """Thread count: positive flag wins, then the env variable, then auto."""
    if flag > 0:
        return flag
    env = os.environ.get(THREADS_ENV, "").strip()
    if env:
        try:
            value = int(env)
        except ValueError as exc:
            raise ValueError(f"{THREADS_ENV} must be an integer, got {env!r}") from exc
        if value > 0:
            return value
    return min(8, os.cpu_count() or 1)


def _path_kpoints(corners: list[np.ndarray], per_segment: int) -> tuple[np.ndarray, list[int]]:
    pts = []
    ticks = [0]
    for a, b in zip(corners[:-1], corners[1:]):
        frac = np.arange(per_segment) / per_segment
        pts.append(a[None, :] * (1.0 - frac[:, None]) + b[None, :] * frac[:, None])
        ticks.append(ticks[-1] + per_segment)
    pts.append(corners[-1][None, :])
    return np.vstack(pts), ticks


def _band_rows(cfg: RunConfig):
    gamma = np.zeros(2)
    corner_k = (BASIS.b1s + BASIS.b2s) / 3.0
    edge_m = BASIS.b1s / 2.0
    kpts, ticks = _path_kpoints([gamma, corner_k, edge_m, gamma], cfg.segment_points)
    values = np.array([band_set(cfg.tuv, k).values for k in kpts])
    rows = [
        [i, float(k[0]), float(k[1])] + [float(e) for e in v]
        for i, (k, v) in enumerate(zip(kpts, values))
    ]
    return rows, values, ticks


def _cmd_bands(cfg: RunConfig):
    if cfg.tuv is None:
        raise ValueError("bands needs --tuv t,u,v")
    rows, values, ticks = _band_rows(cfg)
    text = _tabular(cfg, ["i", "kx", "ky", "e1", "e2", "e3", "e4", "e5", "e6"], rows)

    def figure(path: Path) -> None:
        label = ",".join(_fmt(x) for x in cfg.tuv)
        plotting.save_band_figure(
            values, ticks, ["G", "K", "M", "G"], path, f"bands for ({label})"
        )

    return text, figure


def _cmd_energy(cfg: RunConfig):
    if cfg.tuv is None or cfg.mu is None:
        raise ValueError("energy needs --tuv and --mu")
    grid = make_grid(Zone.B6, cfg.grid_n)
    breakdown = energy.total_energy(cfg.tuv, cfg.mu, grid)
    header = ["quantum", "elastic", "total", "grid_n", "quad_error"]
    row = [
        breakdown.quantum,
        breakdown.elastic,
        breakdown.total,
        breakdown.grid_n,
        breakdown.quad_error,
    ]
    return _tabular(cfg, header, [row]), None


def _minimize_opts(cfg: RunConfig) -> minimize.MinimizeOptions:
    return minimize.MinimizeOptions(seed=cfg.seed, threads=resolve_threads(cfg.threads))


def _cmd_minimize(cfg: RunConfig):
    if cfg.mu is None:
        raise ValueError("minimize needs --mu")
    grid = make_grid(Zone.B6, cfg.grid_n)
    res = minimize.minimize_energy(cfg.mu, grid, _minimize_opts(cfg))
    if not res.converged:
        raise NumericalError(f"minimizer did not converge at mu={cfg.mu:.6g}")
    header = ["mu", "t", "u", "v", "class", "gap", "energy", "iterations", "converged"]
    row = [
        res.mu,
        res.cfg.t,
        res.cfg.u,
        res.cfg.v,
        res.sym_class.value,
        res.gap,
        res.energy,
        res.iterations,
        res.converged,
    ]
    return _tabular(cfg, header, [row]), None


def _cmd_phase_scan(cfg: RunConfig):
    if cfg.mu_range is None:
        raise ValueError("phase-scan needs --mu-range FROM:TO:STEPS")
    lo, hi, steps = cfg.mu_range
    grid = make_grid(Zone.B6, cfg.grid_n)
    points = minimize.phase_scan(lo, hi, steps, grid, _minimize_opts(cfg))
    header = ["mu", "t", "u", "v", "class", "gap", "energy", "energy_pristine"]
    rows = [
        [p.mu, p.t_low, p.t_low, p.t_high, p.phase.value, p.gap, p.energy_kekule, p.energy_pristine]
        for p in points
    ]

    def figure(path: Path) -> None:
        plotting.save_phase_scan_figure(points, path)

    return _tabular(cfg, header, rows), figure


def _cmd_critical(cfg: RunConfig):
    grid6 = make_grid(Zone.B6, cfg.grid_n)
    grid2 = make_grid(Zone.B2, cfg.grid_n)
    lower = perturbation.mu_c(grid6)
    upper = perturbation.mu_c_prime_bound(grid2)
    if not lower.value < upper.value:
        raise NumericalError(
            f"mu_c = {lower.value:.6g} is not below its upper bound {upper.value:.6g}"
        )
    report = {
        "mu_c": lower.value,
        "mu_c_prime_bound": upper.value,
        "grid_n": cfg.grid_n,
        "err_mu_c": lower.error,
        "err_mu_c_prime": upper.error,
    }
    return json.dumps(report, indent=2) + "\n", None


def _cmd_kagome(cfg: RunConfig):
    gamma = np.zeros(2)
    corner_k = (BASIS.a1s + 2.0 * BASIS.a2s) / 3.0
    edge_m = BASIS.a1s / 2.0
    kpts, ticks = _path_kpoints([gamma, corner_k, edge_m, gamma], cfg.segment_points)
    bands = [kagome.kagome_bands(k) for k in kpts]
    values = np.array([[b.flat, b.lower, b.upper] for b in bands])
    rows = [
        [i, float(k[0]), float(k[1]), b.flat, b.lower, b.upper]
        for i, (k, b) in enumerate(zip(kpts, bands))
    ]
    text = _tabular(cfg, ["i", "kx", "ky", "flat", "lower", "upper"], rows)

    def figure(path: Path) -> None:
        plotting.save_kagome_figure(values, ticks, ["G", "K", "M", "G"], path)

    return text, figure


def _cmd_verify(cfg: RunConfig):
    report, ok = verify.run_suites(seed=cfg.seed, fault=cfg.inject_fault)
    return report, None, ok


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--grid", dest="grid_n", type=int, default=256, metavar="N",
                        help="quadrature points per axis (default 256)")
    common.add_argument("--mu", type=float, default=None, help="rigidity parameter")
    common.add_argument("--tuv", type=_parse_tuv, default=None, metavar="t,u,v",
                        help="hopping amplitudes")
    common.add_argument("--mu-range", type=_parse_range, default=None, metavar="FROM:TO:STEPS",
                        help="rigidity scan range")
    common.add_argument("--out", type=Path, default=None, metavar="PATH",
                        help="output file (default stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--seed", type=int, default=0, help="multistart determinism seed")
    common.add_argument("--threads", type=int, default=0,
                        help=f"worker threads, 0 = auto (env {THREADS_ENV})")
    common.add_argument("--no-plot", dest="plot", action="store_false",
                        help="skip the figure next to --out")
    common.add_argument("--segment-points", type=int, default=128, metavar="N",
                        help="band-path samples per segment (default 128)")

    parser = argparse.ArgumentParser(
        prog="kekulattice",
        description="Tight-binding energetics of Kekule-distorted graphene.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "bands": "band diagram along the G-K-M-G path of the 6-atom zone",
        "energy": "energy breakdown of one configuration",
        "minimize": "minimize the energy at fixed rigidity",
        "phase-scan": "minimize across a rigidity range and tag phases",
        "critical": "critical-rigidity integrals (JSON report)",
        "kagome": "Kagome adjacency bands along the G-K-M-G path",
        "verify": "run the cross-module invariant suites",
    }
    for name in COMMANDS:
        cmd = sub.add_parser(name, parents=[common], help=helps[name])
        if name == "verify":
            cmd.add_argument("--inject-fault", choices=verify.FAULTS, default=None,
                             help="testing hook: force the named suite to fail")
    return parser


def _run(cfg: RunConfig) -> int:
    if cfg.grid_n < 8:
        raise ValueError(f"--grid must be at least 8, got {cfg.grid_n}")
    if cfg.mu_range is not None and not cfg.mu_range[0] < cfg.mu_range[1]:
        raise ValueError("--mu-range needs FROM < TO")
    handlers = {
        "bands": _cmd_bands,
        "energy": _cmd_energy,
        "minimize": _cmd_minimize,
        "phase-scan": _cmd_phase_scan,
        "critical": _cmd_critical,
        "kagome": _cmd_kagome,
    }
    if cfg.command == "verify":
        text, _, ok = _cmd_verify(cfg)
        exit_code = 0 if ok else 2
    else:
        text, figure = handlers[cfg.command](cfg)
        exit_code = 0
        if cfg.out is not None and figure is not None and cfg.plot:
            figure(cfg.out.with_suffix(".png"))
    if cfg.out is not None:
        cfg.out.write_text(text)
    else:
        sys.stdout.write(text)
    return exit_code


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    cfg = RunConfig(
        command=args.command,
        grid_n=args.grid_n,
        mu=args.mu,
        tuv=args.tuv,
        mu_range=args.mu_range,
        out=args.out,
        format=args.format,
        seed=args.seed,
        threads=args.threads,
        plot=args.plot,
        segment_points=args.segment_points,
        inject_fault=getattr(args, "inject_fault", None),
    )
    try:
        return _run(cfg)
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
