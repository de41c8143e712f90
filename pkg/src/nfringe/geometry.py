"""Chain and detector geometry in dimensionless units.

Every correlation quantity downstream depends on detector positions only
through the optical phase accumulated between adjacent emitters,

    delta = k * d * sin(theta),

so the chain itself is described by the single dimensionless ratio d/lambda.
Physical SI lengths enter only through :class:`FeasibilityParams`, which feeds
the far-field bound and the error-budget propagation.

Conventions
-----------
* ``theta`` is the observation angle measured from the *normal* to the chain
  axis, in radians; ``theta = 0`` looks broadside at the chain.
* All phases are in radians.  Over the physical angle range
  ``|theta| <= pi/2`` the phase covers ``[-kd, +kd]`` with
  ``kd = 2*pi*(d/lambda)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "AtomChain",
    "FeasibilityParams",
    "phase_from_angle",
    "atom_positions",
    "min_farfield_distance",
    "phase_resolution",
]

_HALF_PI = math.pi / 2.0


@dataclass(frozen=True)
class AtomChain:
    """Equidistant linear chain of identical two-level emitters.

    Parameters
    ----------
    n_atoms : int
        Number of emitters N, at least 1.
    spacing_over_lambda : float
        Nearest-neighbour spacing divided by the optical wavelength (d/lambda),
        strictly positive.
    """

    n_atoms: int
    spacing_over_lambda: float

    def __post_init__(self) -> None:
        if int(self.n_atoms) != self.n_atoms or self.n_atoms < 1:
            raise ValueError(f"n_atoms must be a positive integer, got {self.n_atoms!r}")
        s = self.spacing_over_lambda
        if not (math.isfinite(s) and s > 0):
            raise ValueError(f"spacing_over_lambda must be finite and > 0, got {s!r}")

    @property
    def kd(self) -> float:
        """Phase accumulated between adjacent emitters at grazing angle, 2*pi*(d/lambda)."""
        return 2.0 * math.pi * self.spacing_over_lambda

    @property
    def j(self) -> np.ndarray:
        """Symmetric emitter indices (-(N-1)/2, ..., +(N-1)/2), in units of d."""
        n = self.n_atoms
        return np.arange(n) - (n - 1) / 2.0


@dataclass(frozen=True)
class FeasibilityParams:
    """Physical parameters (SI units) for far-field and error-budget estimates.

    Parameters
    ----------
    detector_size : float
        Linear detector extent s in metres; zero is allowed as the degenerate
        point-detector limit.
    theta : float
        Observation angle from the chain normal, radians, ``|theta| <= pi/2``.
    delta_theta : float
        1-sigma pointing uncertainty, radians.
    delta_d : float
        1-sigma uncertainty of the emitter spacing, metres.
    delta_k_rel : float
        Relative 1-sigma wavenumber uncertainty (delta_k / k).
    spacing : float
        Emitter spacing d, metres.
    wavelength : float
        Optical wavelength lambda, metres.
    """

    detector_size: float
    theta: float
    delta_theta: float
    delta_d: float
    delta_k_rel: float
    spacing: float
    wavelength: float

    def __post_init__(self) -> None:
        if self.detector_size < 0:
            raise ValueError("detector_size must be >= 0")
        if self.spacing <= 0 or self.wavelength <= 0:
            raise ValueError("spacing and wavelength must be > 0")
        if min(self.delta_theta, self.delta_d, self.delta_k_rel) < 0:
            raise ValueError("uncertainties must be >= 0")
        if abs(self.theta) > _HALF_PI:
            raise ValueError(f"|theta| must be <= pi/2, got {self.theta!r}")


def phase_from_angle(chain: AtomChain, theta: float) -> float:
    """Optical phase between adjacent emitters for a detector at angle ``theta``.

    Parameters
    ----------
    chain : AtomChain
    theta : float
        Angle from the chain normal, radians, ``|theta| <= pi/2``.

    Returns
    -------
    float
        ``delta = kd * sin(theta)``, in ``[-kd, +kd]``.

    Raises
    ------
    ValueError
        If ``theta`` lies outside the physical half-circle.
    """
    if not (abs(theta) <= _HALF_PI):
        raise ValueError(f"|theta| must be <= pi/2, got {theta!r}")
    return chain.kd * math.sin(theta)


def atom_positions(chain: AtomChain) -> np.ndarray:
    """Emitter positions along the chain axis in units of the spacing d.

    The chain is centred on the origin: for N emitters the positions are the
    symmetric half-integer ladder ``-(N-1)/2, ..., +(N-1)/2``, e.g. ``(-0.5,
    +0.5)`` for N=2.
    """
    return chain.j.copy()


def min_farfield_distance(
    params: FeasibilityParams, n_atoms: int, safety_factor: float = 1.0
) -> float:
    """Minimum chain-to-detector distance for the far-field treatment to hold.

    The phase spread across a detector of size s must stay well below the
    fringe scale, which requires ``L >= s * N * d / lambda``; a
    ``safety_factor`` of 10-100 gives a comfortably conservative bound.

    Parameters
    ----------
    params : FeasibilityParams
        Supplies s, d and lambda.
    n_atoms : int
        Chain length N.
    safety_factor : float
        Multiplier >= 1 on the bare bound.

    Returns
    -------
    float
        Distance in metres; scales linearly in each of s, N, d and 1/lambda.
    """
    if int(n_atoms) != n_atoms or n_atoms < 1:
        raise ValueError(f"n_atoms must be a positive integer, got {n_atoms!r}")
    if safety_factor < 1:
        raise ValueError("safety_factor must be >= 1")
    return safety_factor * params.detector_size * n_atoms * params.spacing / params.wavelength


def phase_resolution(chain: AtomChain, theta: float, delta_theta: float) -> float:
    """Phase uncertainty induced by a pointing uncertainty ``delta_theta``.

    First-order propagation of ``delta = kd * sin(theta)`` gives
    ``Delta(delta) = kd * cos(theta) * Delta(theta)``; the resolution is best
    at grazing incidence where the phase is stationary in the angle.
    """
    if not (abs(theta) <= _HALF_PI):
        raise ValueError(f"|theta| must be <= pi/2, got {theta!r}")
    if delta_theta < 0:
        raise ValueError("delta_theta must be >= 0")
    return chain.kd * math.cos(theta) * delta_theta
