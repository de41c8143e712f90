"""Scenario files: INI-style description of a scan, sweep or sampling run.

A scenario is a flat key-value file with up to six sections::

    [chain]
    n_atoms = 4
    spacing_over_lambda = 0.5

    [detectors]
    mode = magic            ; or: explicit
    ; fixed_phases = 1.5707963267948966, -1.5707963267948966

    [grid]
    delta1_min = -6.283185307179586
    delta1_max = 6.283185307179586
    points = 1001
    ; delta2_min / delta2_max / points2 control the second axis of 2-D scans
    ; and default to the delta1 settings.

    [noise]
    sigma = 0.5
    n_samples = 10000
    seed = 0
    points = 201

    [sampler]
    n_events = 100000
    seed = 0
    n_bins = 64
    ; range_low / range_high default to one fringe period.

    [output]
    format = csv            ; or: json

Unknown sections or keys are hard errors, not warnings: a silently ignored
typo would corrupt physics fixtures downstream.  All values echo back out of
:func:`serialize` with full float precision, so parse -> serialize -> parse
is the identity.
"""

from __future__ import annotations

import configparser
import io
import math
from dataclasses import dataclass, fields

from .errors import ConfigError

__all__ = ["Scenario", "parse_scenario", "load_scenario", "serialize_scenario"]

_TWO_PI = 2.0 * math.pi

# section -> {key -> Scenario field}
_SCHEMA: dict[str, dict[str, str]] = {
    "chain": {"n_atoms": "n_atoms", "spacing_over_lambda": "spacing_over_lambda"},
    "detectors": {"mode": "mode", "fixed_phases": "fixed_phases"},
    "grid": {
        "delta1_min": "delta1_min",
        "delta1_max": "delta1_max",
        "points": "points",
        "delta2_min": "delta2_min",
        "delta2_max": "delta2_max",
        "points2": "points2",
    },
    "noise": {
        "sigma": "sigma",
        "n_samples": "n_samples",
        "seed": "noise_seed",
        "points": "noise_points",
    },
    "sampler": {
        "n_events": "n_events",
        "seed": "sampler_seed",
        "n_bins": "n_bins",
        "range_low": "range_low",
        "range_high": "range_high",
    },
    "output": {"format": "out_format"},
}


@dataclass(frozen=True)
class Scenario:
    """Validated run description; every field has a working default."""

    n_atoms: int = 4
    spacing_over_lambda: float = 0.5
    mode: str = "magic"
    fixed_phases: tuple[float, ...] | None = None
    delta1_min: float = -_TWO_PI
    delta1_max: float = _TWO_PI
    points: int = 1001
    delta2_min: float | None = None
    delta2_max: float | None = None
    points2: int | None = None
    sigma: float = 0.5
    n_samples: int = 10_000
    noise_seed: int = 0
    noise_points: int = 201
    n_events: int = 100_000
    sampler_seed: int = 0
    n_bins: int = 64
    range_low: float | None = None
    range_high: float | None = None
    out_format: str = "csv"

    def __post_init__(self) -> None:
        if int(self.n_atoms) != self.n_atoms or self.n_atoms < 1:
            raise ConfigError(f"chain.n_atoms must be a positive integer, got {self.n_atoms!r}")
        if not (self.spacing_over_lambda > 0):
            raise ConfigError("chain.spacing_over_lambda must be > 0")
        if self.mode not in ("magic", "explicit"):
            raise ConfigError(f"detectors.mode must be 'magic' or 'explicit', got {self.mode!r}")
        if self.mode == "explicit" and self.fixed_phases is None:
            raise ConfigError("detectors.mode = explicit requires detectors.fixed_phases")
        if self.points < 2:
            raise ConfigError("grid.points must be >= 2")
        if self.points2 is not None and self.points2 < 2:
            raise ConfigError("grid.points2 must be >= 2")
        if not (self.delta1_min < self.delta1_max):
            raise ConfigError("grid.delta1_min must be < grid.delta1_max")
        if (self.delta2_min is None) != (self.delta2_max is None):
            raise ConfigError("grid.delta2_min and grid.delta2_max must be given together")
        if self.delta2_min is not None and not (self.delta2_min < self.delta2_max):
            raise ConfigError("grid.delta2_min must be < grid.delta2_max")
        if self.sigma < 0:
            raise ConfigError("noise.sigma must be >= 0")
        if self.n_samples < 1:
            raise ConfigError("noise.n_samples must be >= 1")
        if self.noise_points < 2:
            raise ConfigError("noise.points must be >= 2")
        if self.n_events < 1:
            raise ConfigError("sampler.n_events must be >= 1")
        if self.n_bins < 3:
            raise ConfigError("sampler.n_bins must be >= 3")
        if (self.range_low is None) != (self.range_high is None):
            raise ConfigError("sampler.range_low and sampler.range_high must be given together")
        if self.range_low is not None and not (self.range_low < self.range_high):
            raise ConfigError("sampler.range_low must be < sampler.range_high")
        for name in ("noise_seed", "sampler_seed"):
            seed = getattr(self, name)
            if not 0 <= seed < 2**64:
                raise ConfigError(f"{name.replace('_', '.')} must fit an unsigned 64-bit integer")
        if self.out_format not in ("csv", "json"):
            raise ConfigError(f"output.format must be 'csv' or 'json', got {self.out_format!r}")


def _convert(section: str, key: str, raw: str, kind: type):
    try:
        if kind is int:
            return int(raw)
        if kind is float:
            return float(raw)
    except ValueError:
        raise ConfigError(f"{section}.{key}: cannot parse {raw!r}") from None
    return raw


def parse_scenario(text: str) -> Scenario:
    """Parse scenario text; unknown sections/keys and bad values raise ConfigError."""
    cp = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    cp.optionxform = str  # keep key case as written
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"scenario syntax: {exc}") from None
    values: dict[str, object] = {}
    for section in cp.sections():
        if section not in _SCHEMA:
            raise ConfigError(f"unknown section [{section}]")
        for key, raw in cp.items(section):
            if key not in _SCHEMA[section]:
                raise ConfigError(f"unknown key {section}.{key}")
            field = _SCHEMA[section][key]
            raw = raw.strip()
            if field == "fixed_phases":
                if raw.lower() in ("", "none"):
                    values[field] = None
                    continue
                try:
                    values[field] = tuple(float(p) for p in raw.split(","))
                except ValueError:
                    raise ConfigError(f"{section}.{key}: cannot parse {raw!r}") from None
                continue
            if field in ("mode", "out_format"):
                values[field] = raw
                continue
            if field in ("delta2_min", "delta2_max", "points2", "range_low", "range_high"):
                if raw.lower() == "none":
                    values[field] = None
                    continue
            kind = int if field in (
                "n_atoms", "points", "points2", "n_samples", "noise_seed",
                "noise_points", "n_events", "sampler_seed", "n_bins",
            ) else float
            values[field] = _convert(section, key, raw, kind)
    return Scenario(**values)


def load_scenario(path: str) -> Scenario:
    """Read and parse a scenario file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_scenario(fh.read())
    except OSError as exc:
        raise ConfigError(f"cannot read scenario file: {exc}") from None


def serialize_scenario(sc: Scenario) -> str:
    """Canonical INI text for a scenario; floats keep full precision."""
    cp = configparser.ConfigParser()
    cp.optionxform = str
    by_field = {field: (section, key) for section, keys in _SCHEMA.items() for key, field in keys.items()}
    for f in fields(sc):
        value = getattr(sc, f.name)
        if value is None:
            continue
        section, key = by_field[f.name]
        if not cp.has_section(section):
            cp.add_section(section)
        if f.name == "fixed_phases":
            cp.set(section, key, ", ".join(repr(p) for p in value))
        elif isinstance(value, float):
            cp.set(section, key, repr(value))
        else:
            cp.set(section, key, str(value))
    out = io.StringIO()
    cp.write(out)
    return out.getvalue()
