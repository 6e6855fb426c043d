"""Matplotlib figure rendering for the CLI report paths.

Figures are written next to the delimited output files.  PNG metadata is
stripped so byte-identical reruns stay byte-identical.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

_SAVE_KW = {"dpi": 150, "metadata": {"Software": None}}


def _axes():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    return plt, fig, ax


def save_band_figure(
    values: np.ndarray,
    ticks: list[int],
    tick_labels: list[str],
    path: Path,
    title: str,
) -> None:
    """Band diagram along a high-symmetry path; one line per band."""
    plt, fig, ax = _axes()
    x = np.arange(values.shape[0])
    for band in range(values.shape[1]):
        ax.plot(x, values[:, band], lw=1.0, color="tab:blue")
    for t in ticks:
        ax.axvline(t, color="0.8", lw=0.8, zorder=0)
    ax.axhline(0.0, color="0.8", lw=0.8, zorder=0)
    ax.set_xticks(ticks)
    ax.set_xticklabels(tick_labels)
    ax.set_xlim(x[0], x[-1])
    ax.set_ylabel("energy")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)


def save_phase_scan_figure(points, path: Path) -> None:
    """Amplitudes and gap against rigidity, with the phase flip visible."""
    plt, fig, _ = _axes()
    fig.clf()
    ax_top, ax_bot = fig.subplots(2, 1, sharex=True)
    mu = [p.mu for p in points]
    ax_top.plot(mu, [p.t_low for p in points], "o-", ms=3, label="t = u")
    ax_top.plot(mu, [p.t_high for p in points], "s-", ms=3, label="v")
    ax_top.set_ylabel("amplitude")
    ax_top.legend(loc="best", fontsize=8)
    ax_bot.plot(mu, [p.gap for p in points], "o-", ms=3, color="tab:red")
    ax_bot.set_ylabel("spectral gap")
    ax_bot.set_xlabel("rigidity mu")
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)


def save_kagome_figure(
    values: np.ndarray,
    ticks: list[int],
    tick_labels: list[str],
    path: Path,
) -> None:
    """Three adjacency bands along the triangular-lattice path."""
    plt, fig, ax = _axes()
    x = np.arange(values.shape[0])
    for band, label in zip(range(values.shape[1]), ("flat", "lower", "upper")):
        ax.plot(x, values[:, band], lw=1.2, label=label)
    for t in ticks:
        ax.axvline(t, color="0.8", lw=0.8, zorder=0)
    ax.set_xticks(ticks)
    ax.set_xticklabels(tick_labels)
    ax.set_xlim(x[0], x[-1])
    ax.set_ylabel("adjacency eigenvalue")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)
