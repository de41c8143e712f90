"""Independent closed-form oracles used only by the tests.

These deliberately re-derive results through routes the package does not use,
so agreement is meaningful.
"""

from __future__ import annotations

import itertools
import math

import numpy as np


def collapsed_tail(n: int) -> np.ndarray:
    """Fixed phases of detectors 3..N of the collapsing placement."""
    step = 2.0 * math.pi / (n if n % 2 == 0 else n + 1)
    return np.array([step if i % 2 == 1 else -step for i in range(3, n + 1)])


def jitter_mean_curve(n: int, sigma: float, delta1_grid) -> np.ndarray:
    """Exact expectation of the jittered collapsed scan, no Monte Carlo.

    gamma = sum over permutations pi of cos(phi_pi) with
    ``phi_pi = A_pi + d_pi * delta1 + a_pi . xi``: A_pi collects the fixed
    detector phases, d_pi = j_pi(1) - j_pi(2) is the delta1 coefficient
    (detector 2 is tied to -delta1), and a_pi = j_pi(2..N) are the
    coefficients of the independent jitters xi ~ N(0, sigma^2).

    G = gamma^2 / N^N expands into permutation pairs; each product of
    cosines splits into sum/difference terms, and the Gaussian average of
    ``cos(C + w . xi)`` is ``cos(C) * exp(-sigma^2 |w|^2 / 2)``.  Collecting
    terms by their (integer) delta1 frequency gives the exact mean curve.
    """
    j = np.arange(n) - (n - 1) / 2.0
    perms = np.array(list(itertools.permutations(j)))
    tail = collapsed_tail(n)
    d1c = perms[:, 0] - perms[:, 1]
    const = perms[:, 2:] @ tail if n > 2 else np.zeros(len(perms))
    ajit = perms[:, 1:]
    n_freq = 4 * (n - 1) + 1  # frequencies -2(N-1) .. +2(N-1)
    amps = np.zeros(n_freq, dtype=complex)
    half = 2 * (n - 1)
    for p in range(len(perms)):
        for s in (1.0, -1.0):
            freqs = np.rint(d1c[p] + s * d1c).astype(int) + half
            damp = np.exp(-0.5 * sigma**2 * ((ajit[p] + s * ajit) ** 2).sum(axis=1))
            np.add.at(amps, freqs, 0.5 * damp * np.exp(1j * (const[p] + s * const)))
    grid = np.asarray(delta1_grid, dtype=float)
    freqs = np.arange(n_freq) - half
    curve = (amps[None, :] * np.exp(1j * np.outer(grid, freqs))).sum(axis=1).real
    return curve / float(n**n)


def fringe_cdf(x, multiplier: int, lo: float, hi: float):
    """CDF of the density proportional to 1 + cos(multiplier * delta) on [lo, hi]."""
    m = multiplier
    x = np.asarray(x, dtype=float)
    norm = (hi - lo) + (math.sin(m * hi) - math.sin(m * lo)) / m
    return ((x - lo) + (np.sin(m * x) - math.sin(m * lo)) / m) / norm


def fringe_bin_masses(multiplier: int, lo: float, hi: float, n_bins: int) -> np.ndarray:
    """Exact probability mass of each equal bin under the fringe density."""
    edges = np.linspace(lo, hi, n_bins + 1)
    cdf = fringe_cdf(edges, multiplier, lo, hi)
    return np.diff(cdf)
