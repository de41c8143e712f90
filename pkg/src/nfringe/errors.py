"""Exception types shared across the package.

The CLI maps these onto exit codes (see :mod:`nfringe.cli`): configuration
problems exit 2, size-cap refusals exit 3, numerical/fit failures exit 4.
"""

from __future__ import annotations


class FringeError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(FringeError):
    """A scenario file or parameter combination is invalid."""


class CapExceededError(FringeError):
    """A requested problem size exceeds the configured safety cap."""


class FitError(FringeError):
    """A harmonic fit could not be carried out on the given data."""


class InsufficientStatisticsError(FitError):
    """Too few events to support the requested binning."""
