"""Simulated coincidence events drawn from the collapsed fringe density.

A post-selected experiment registers discrete N-fold coincidences; scanning
detector 1 maps out the collapsed fringe as an event histogram.  Here the
detection phase delta_1 of each event is drawn from the normalized density

    f(delta_1) proportional to 1 + cos(multiplier * delta_1)

over a caller-chosen interval, by rejection against a uniform proposal (the
acceptance probability is just ``(1 + cos)/2``, and rejection keeps working
unchanged if the density is later replaced by a jittered one).  Visibility is
then recovered from finite counts by binning and reusing the harmonic fit of
:mod:`nfringe.noise` on the bin densities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import detectors
from .errors import InsufficientStatisticsError
from .geometry import AtomChain
from .noise import VisibilityEstimate, _harmonic_fit

__all__ = ["EventBatch", "default_range", "sample_events", "estimate_visibility_from_events"]


@dataclass(frozen=True)
class EventBatch:
    """Detection phases of simulated coincidences plus the window and seed that made them."""

    delta1_values: np.ndarray
    range: tuple[float, float]
    seed: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "delta1_values", np.asarray(self.delta1_values, dtype=float))
        lo, hi = self.range
        vals = self.delta1_values
        if vals.size and (vals.min() < lo or vals.max() > hi):
            raise ValueError("event values fall outside the stated range")


def default_range(n: int) -> tuple[float, float]:
    """One full fringe period centred on zero: (-pi/m, +pi/m)."""
    m = detectors.fringe_multiplier(n)
    return (-math.pi / m, math.pi / m)


def sample_events(
    chain: AtomChain,
    n_events: int,
    range_: tuple[float, float] | None = None,
    seed: int = 0,
) -> EventBatch:
    """Draw i.i.d. detection phases from the collapsed fringe density.

    Parameters
    ----------
    chain : AtomChain
        Needs n_atoms >= 2.
    n_events : int
        Number of events, >= 1.
    range_ : (float, float), optional
        Sampling interval for delta_1; must be non-empty and lie within
        [-kd, +kd] (the physically reachable phases).  Defaults to one full
        fringe period centred on zero.
    seed : int
        RNG seed (default 0, the package-wide documented default).

    Returns
    -------
    EventBatch
        Deterministic for a given seed: draws happen in fixed-size blocks and
        survivors are concatenated in draw order.
    """
    n = chain.n_atoms
    m = detectors.fringe_multiplier(n)
    if n_events < 1:
        raise ValueError("n_events must be >= 1")
    lo, hi = range_ if range_ is not None else default_range(n)
    if not (lo < hi):
        raise ValueError(f"empty sampling range ({lo!r}, {hi!r})")
    if lo < -chain.kd - 1e-12 or hi > chain.kd + 1e-12:
        raise ValueError(
            f"range ({lo!r}, {hi!r}) exceeds the reachable phases [-kd, kd] with kd={chain.kd!r}"
        )
    rng = np.random.default_rng(seed)
    out = np.empty(n_events)
    filled = 0
    # The acceptance rate is ~1/2 independent of the interval, so 2x
    # oversampling per block keeps the loop count small.
    block = max(2 * n_events, 1024)
    while filled < n_events:
        proposals = rng.uniform(lo, hi, block)
        accept = rng.random(block) <= 0.5 * (1.0 + np.cos(m * proposals))
        kept = proposals[accept]
        take = min(kept.size, n_events - filled)
        out[filled : filled + take] = kept[:take]
        filled += take
    return EventBatch(delta1_values=out, range=(lo, hi), seed=seed)


def estimate_visibility_from_events(
    batch: EventBatch, fringe_multiplier: int, n_bins: int
) -> VisibilityEstimate:
    """Recover fringe visibility from an event batch by binning and fitting.

    Events are histogrammed into ``n_bins`` equal bins over the batch range,
    converted to a density estimate, and fed through the harmonic fit at the
    known fringe frequency.  The statistical error shrinks as
    ``1/sqrt(n_events)``.

    Raises
    ------
    ValueError
        If the batch is empty or ``n_bins < 3 * fringe_multiplier``.
    InsufficientStatisticsError
        If more than half of the bins are empty.
    """
    vals = batch.delta1_values
    if vals.size == 0:
        raise ValueError("empty event batch")
    m = int(fringe_multiplier)
    if n_bins < 3 * m:
        raise ValueError(f"need n_bins >= {3 * m} for multiplier {m}, got {n_bins}")
    lo, hi = batch.range
    counts, edges = np.histogram(vals, bins=n_bins, range=(lo, hi))
    empty = int(np.count_nonzero(counts == 0))
    if empty > 0.5 * n_bins:
        raise InsufficientStatisticsError(
            f"{empty}/{n_bins} bins are empty; draw more events or use fewer bins"
        )
    centres = 0.5 * (edges[:-1] + edges[1:])
    width = (hi - lo) / n_bins
    density = counts / (vals.size * width)
    return _harmonic_fit(centres, density, m)
