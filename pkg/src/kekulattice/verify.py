"""Cross-module invariant suites behind the `verify` CLI command.

Each suite draws its samples from one seeded generator, so a fixed seed
reproduces the report byte for byte.  The optional fault name flips a sign
inside the targeted suite to prove the harness actually fails.
"""

from __future__ import annotations

import numpy as np

from . import bloch, energy, kagome, sympoly
from .lattice import BASIS, Zone, make_grid

FAULTS = ("ztilde-sign",)


def _random_k(rng: np.random.Generator, count: int) -> np.ndarray:
    frac = rng.uniform(0.05, 0.95, size=(count, 2))
    return frac @ np.array([BASIS.b1s, BASIS.b2s])


def _suite_spectral_bounds(rng):
    worst = 0.0
    for _ in range(100):
        cfg = bloch.HoppingTriple.coerce(rng.uniform(0.0, 2.5, 3))
        lo, hi = bloch.spectral_bounds(cfg)
        t_mat = bloch.bloch_t(cfg, np.zeros(2)).t
        sv = np.abs(np.linalg.eigvalsh(t_mat))
        worst = max(worst, abs(sv.min() - lo), abs(sv.max() - hi))
    return worst <= 1e-9, worst


def _suite_omega_containment(rng):
    worst = 0.0
    for k in _random_k(rng, 40):
        s1, s2, s3 = bloch.hop_components(k)
        for a, b in ((s1, s2), (s1, s3), (s2, s3)):
            eigs = np.linalg.eigvalsh(a @ b + b @ a)
            worst = max(worst, float(np.min(np.abs(eigs[:, None] - np.array([-1.0, 2.0])), axis=1).max()))
    return worst <= 1e-9, worst


def _suite_flat_band(rng):
    worst = 0.0
    for k in _random_k(rng, 40):
        mat = kagome.kagome_bloch(k)
        worst = max(worst, abs(float(np.linalg.det(mat + 2.0 * np.eye(3)))))
        worst = max(worst, abs(kagome.kagome_bands(k).flat + 2.0))
    return worst <= 1e-9, worst


def _suite_projection_dominance(rng):
    grid = make_grid(Zone.B6, 32)
    worst = -np.inf
    for _ in range(100):
        cfg = tuple(rng.normal(0.8, 1.0, 3))
        proj = sympoly.kekule_projection(cfg)
        replaced = (proj.t_tilde, proj.t_tilde, proj.v_tilde)
        for mu in (0.3, 1.0, 3.0):
            excess = (
                energy.total_energy(replaced, mu, grid).total
                - energy.total_energy(cfg, mu, grid).total
            )
            worst = max(worst, excess)
    return worst <= 1e-9, worst


def _suite_quartic_consistency(rng):
    worst = 0.0
    for _ in range(100):
        cfg = tuple(rng.normal(1.0, 0.8, 3))
        k = _random_k(rng, 1)[0]
        g = sympoly.g_from_quartic(sympoly.charpoly_coeffs(cfg, k))
        a = bloch.bloch_a(cfg, k)
        g_dense = float(np.sqrt(np.maximum(np.linalg.eigvalsh(a.conj().T @ a), 0.0)).sum())
        worst = max(worst, abs(g - g_dense) / max(1.0, g_dense))
    return worst <= 1e-8, worst


def _suite_hessian_oracle(rng):
    from .perturbation import c_of_k

    eta = 1e-4
    worst = 0.0
    for k in _random_k(rng, 10):
        h_mat = bloch.bloch_t((1.0, 1.0, 1.0), k).t
        s1 = bloch.hop_components(k)[0]

        def half_trace(e: float) -> float:
            return 0.5 * float(np.abs(np.linalg.eigvalsh(h_mat + e * s1)).sum())

        coef = (half_trace(eta) + half_trace(-eta) - 2.0 * half_trace(0.0)) / (2.0 * eta * eta)
        c = c_of_k(k)
        worst = max(worst, abs(c - 18.0 * coef) / max(1e-12, c))
    return worst <= 1e-3, worst


def _suite_ztilde_positivity(rng, fault: str | None):
    worst = 0.0
    _, zt = sympoly.z_factor(_random_k(rng, 200))
    if fault == "ztilde-sign":
        zt = -zt
    worst = float(np.maximum(0.0, -zt.real).max())
    return worst <= 1e-12, worst


def run_suites(seed: int = 0, fault: str | None = None) -> tuple[str, bool]:
    """Run every suite; returns the printable report and the overall verdict."""
    if fault is not None and fault not in FAULTS:
        raise ValueError(f"unknown fault {fault!r}; known: {', '.join(FAULTS)}")
    rng = np.random.default_rng(seed)
    suites = [
        ("spectral-bounds", lambda: _suite_spectral_bounds(rng)),
        ("omega-containment", lambda: _suite_omega_containment(rng)),
        ("flat-band", lambda: _suite_flat_band(rng)),
        ("projection-dominance", lambda: _suite_projection_dominance(rng)),
        ("quartic-consistency", lambda: _suite_quartic_consistency(rng)),
        ("hessian-oracle", lambda: _suite_hessian_oracle(rng)),
        ("ztilde-positivity", lambda: _suite_ztilde_positivity(rng, fault)),
    ]
    lines = []
    all_ok = True
    for name, run in suites:
        ok, worst = run()
        all_ok &= ok
        lines.append(f"{'PASS' if ok else 'FAIL'} {name:<22} worst={worst:.3e}")
    lines.append(f"RESULT: {'PASS' if all_ok else 'FAIL'} ({sum(1 for n, _ in suites)} suites, seed={seed})")
    return "\n".join(lines) + "\n", all_ok
