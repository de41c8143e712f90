"""Figure rendering for scan results.

Every CLI command accepts ``--plot FILE`` and calls one of these; figures are
written next to the delimited output, never shown interactively.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .grids import ScanGrid


def _finish(fig, path: str) -> None:
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_curve(grid: ScanGrid, path: str, ylabel: str = "G") -> None:
    """Line plot of a 1-D scan."""
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(grid.axis1, grid.values, lw=1.2)
    ax.set_xlabel(r"$\delta_1$ (rad)")
    ax.set_ylabel(ylabel)
    title = grid.metadata.get("command", "scan")
    n = grid.metadata.get("n_atoms")
    ax.set_title(f"{title} (N={n})" if n else title)
    ax.grid(True, alpha=0.3)
    _finish(fig, path)


def plot_map(grid: ScanGrid, path: str) -> None:
    """Density map of a 2-D scan."""
    fig, ax = plt.subplots(figsize=(6, 5))
    mesh = ax.pcolormesh(grid.axis2, grid.axis1, grid.values, shading="nearest", cmap="viridis")
    ax.set_xlabel(r"$\delta_2$ (rad)")
    ax.set_ylabel(r"$\delta_1$ (rad)")
    n = grid.metadata.get("n_atoms")
    ax.set_title(f"scan2d (N={n})" if n else "scan2d")
    fig.colorbar(mesh, ax=ax, label="G")
    _finish(fig, path)


def plot_noise_sweep(rows, path: str) -> None:
    """Fitted visibility with error bars against the reference factor."""
    sigmas = [r.sigma for r in rows]
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.errorbar(
        sigmas,
        [r.visibility for r in rows],
        yerr=[3 * r.standard_error for r in rows],
        fmt="o",
        capsize=3,
        label="fit (3 s.e.)",
    )
    ax.plot(sigmas, [r.analytic for r in rows], "--", label=r"$e^{-N\sigma^2/4}$")
    ax.set_xlabel(r"$\sigma$ (rad)")
    ax.set_ylabel("visibility")
    ax.set_ylim(bottom=0)
    ax.legend()
    ax.grid(True, alpha=0.3)
    _finish(fig, path)


def plot_events(batch, n_bins: int, fringe_multiplier: int, path: str) -> None:
    """Event histogram with the normalized fringe density overlaid."""
    lo, hi = batch.range
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.hist(batch.delta1_values, bins=n_bins, range=(lo, hi), density=True, alpha=0.6)
    x = np.linspace(lo, hi, 512)
    m = fringe_multiplier
    norm = (hi - lo) + (np.sin(m * hi) - np.sin(m * lo)) / m
    ax.plot(x, (1.0 + np.cos(m * x)) / norm, "k-", lw=1.2, label="target density")
    ax.set_xlabel(r"$\delta_1$ (rad)")
    ax.set_ylabel("density")
    ax.legend()
    _finish(fig, path)
