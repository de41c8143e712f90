"""Detector placements that collapse G to a single cosine fringe.

For the N-emitter chain there is a family of detector placements that reduce
the N!/2-term cosine sum to a pure single-cosine signal in the first
detector's phase:

* even N:  delta_2 = -delta_1, and the remaining detectors alternate between
  ``+2*pi/N`` (detectors 3, 5, ..., N-1) and ``-2*pi/N`` (4, 6, ..., N);
  the signal becomes ``A_N * (1 + cos(N * delta_1))``.
* odd N:   delta_2 = -delta_1, with the alternating values ``+-2*pi/(N+1)``
  (detector N takes ``+``); the signal becomes
  ``A_N * (1 + cos((N+1) * delta_1))``.

Either way the fringe spacing in delta_1 is 2*pi/multiplier — an effective
wavelength of lambda/N (even) or lambda/(N+1) (odd) — at full contrast.  The
overall amplitude A_N has no simple closed form beyond A_2 = 1/2 and
A_4 = 1/8; :func:`derive_amplitude` computes it numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import correlation
from .geometry import AtomChain

__all__ = [
    "MagicConfig",
    "fringe_multiplier",
    "magic_config",
    "magic_config_even",
    "magic_config_odd",
    "magic_phase_matrix",
    "closed_form",
    "derive_amplitude",
    "verify_collapse",
]


def fringe_multiplier(n: int) -> int:
    """Fringe frequency in delta_1 of the collapsed signal: N (even) or N+1 (odd)."""
    if int(n) != n or n < 2:
        raise ValueError(f"need an integer n >= 2, got {n!r}")
    return int(n) if n % 2 == 0 else int(n) + 1


def _fixed_tail(n: int) -> np.ndarray:
    """Constant phases of detectors 3..N: alternating +-2*pi/multiplier."""
    step = 2.0 * math.pi / fringe_multiplier(n)
    signs = np.array([1.0 if i % 2 == 1 else -1.0 for i in range(3, n + 1)])
    return signs * step


def _phases(n: int, delta1: float) -> np.ndarray:
    return np.concatenate(([delta1, -delta1], _fixed_tail(n)))


def magic_config_even(n: int, delta1: float) -> np.ndarray:
    """Collapsing placement for even N; see the module docstring for the layout."""
    if n % 2 != 0:
        raise ValueError(f"magic_config_even needs even n, got {n}")
    return _phases(n, delta1)


def magic_config_odd(n: int, delta1: float) -> np.ndarray:
    """Collapsing placement for odd N >= 3."""
    if n % 2 != 1 or n < 3:
        raise ValueError(f"magic_config_odd needs odd n >= 3, got {n}")
    return _phases(n, delta1)


def magic_phase_matrix(n: int, delta1_values) -> np.ndarray:
    """Collapsing placements for many delta_1 values as a (len, N) matrix."""
    d1 = np.asarray(delta1_values, dtype=float)
    fringe_multiplier(n)  # validates n
    out = np.empty((d1.size, n))
    out[:, 0] = d1
    out[:, 1] = -d1
    if n > 2:
        out[:, 2:] = _fixed_tail(n)
    return out


@dataclass(frozen=True)
class MagicConfig:
    """A collapsing placement together with its derived fringe parameters.

    ``phases(delta1)`` yields the full detector-phase vector; ``closed_form``
    (module function) evaluates the predicted single-cosine signal.
    """

    n: int
    parity: str
    fringe_multiplier: int
    amplitude: float

    def phases(self, delta1: float) -> np.ndarray:
        return _phases(self.n, delta1)


def magic_config(n: int, *, spacing_over_lambda: float = 0.5) -> MagicConfig:
    """Build the :class:`MagicConfig` for ``n`` emitters, deriving A_N numerically."""
    return MagicConfig(
        n=int(n),
        parity="even" if n % 2 == 0 else "odd",
        fringe_multiplier=fringe_multiplier(n),
        amplitude=derive_amplitude(n, spacing_over_lambda=spacing_over_lambda),
    )


def closed_form(config: MagicConfig, delta1):
    """Predicted collapsed signal ``A_N * (1 + cos(multiplier * delta_1))``."""
    d = np.asarray(delta1, dtype=float)
    out = config.amplitude * (1.0 + np.cos(config.fringe_multiplier * d))
    return float(out) if out.ndim == 0 else out


def derive_amplitude(n: int, *, spacing_over_lambda: float = 0.5) -> float:
    """Amplitude A_N of the collapsed fringe, computed from G at delta_1 = 0.

    At delta_1 = 0 the collapsed signal equals ``A_N * (1 + cos 0) = 2 A_N``.
    The value depends only on N (the spacing parameter merely completes the
    chain object), and reproduces A_2 = 1/2 and A_4 = 1/8.
    """
    chain = AtomChain(n, spacing_over_lambda)
    return correlation.g_n(chain, _phases(n, 0.0)) / 2.0


def verify_collapse(n: int, grid_points: int = 1001) -> float:
    """Numerical certificate that the placement collapses G to the single cosine.

    Evaluates G on a uniform inclusive delta_1 grid over [-pi, pi] and returns
    ``max |G - closed_form|``; exactness of the collapse shows up as a result
    at rounding level (< 1e-10).
    """
    if grid_points < 3:
        raise ValueError("grid_points must be >= 3")
    config = magic_config(n)
    chain = AtomChain(n, 0.5)
    axis = np.linspace(-math.pi, math.pi, grid_points)
    values = correlation.g_n_batch(chain, magic_phase_matrix(n, axis))
    return float(np.max(np.abs(values - closed_form(config, axis))))
