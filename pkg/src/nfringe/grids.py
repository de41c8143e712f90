"""Sampled scan grids and their delimited / JSON serialization.

A :class:`ScanGrid` is the common result container for 1-D and 2-D scans:
axis values in radians, non-negative signal values, and a string metadata
mapping (scenario echo, seed, package version) that travels with the data.

Both emitters write floats with full round-trip precision (``repr``), so a
file can be parsed back to the bit-identical grid.  CSV rows are in row-major
grid order; metadata becomes leading ``# key = value`` comment lines in CSV
and an explicit object in JSON.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import IO

import numpy as np

__all__ = ["ScanGrid"]


@dataclass
class ScanGrid:
    """Axis values plus signal values, 1-D (axis1) or 2-D (axis1 x axis2)."""

    axis1: np.ndarray
    values: np.ndarray
    axis2: np.ndarray | None = None
    metadata: dict[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.axis1 = np.asarray(self.axis1, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.axis2 is not None:
            self.axis2 = np.asarray(self.axis2, dtype=float)
            expected = (self.axis1.size, self.axis2.size)
            if self.values.shape != expected:
                raise ValueError(f"values shape {self.values.shape} != {expected}")
        elif self.values.shape != self.axis1.shape:
            raise ValueError(
                f"values shape {self.values.shape} != axis shape {self.axis1.shape}"
            )
        if self.values.size and np.min(self.values) < 0:
            raise ValueError("signal values must be non-negative")

    @property
    def is_2d(self) -> bool:
        return self.axis2 is not None

    def write_csv(self, stream: IO[str], value_label: str = "G") -> None:
        """CSV with ``# key = value`` comment header, full-precision floats."""
        for key, val in self.metadata.items():
            stream.write(f"# {key} = {val}\n")
        if self.is_2d:
            stream.write(f"delta1,delta2,{value_label}\n")
            for i, a in enumerate(self.axis1.tolist()):
                for b, v in zip(self.axis2.tolist(), self.values[i].tolist()):
                    stream.write(f"{a!r},{b!r},{v!r}\n")
        else:
            stream.write(f"delta1,{value_label}\n")
            for a, v in zip(self.axis1.tolist(), self.values.tolist()):
                stream.write(f"{a!r},{v!r}\n")

    def write_json(self, stream: IO[str]) -> None:
        """JSON mirror of the grid: explicit axis arrays, nested value rows."""
        doc = {
            "metadata": self.metadata,
            "axis1": self.axis1.tolist(),
            "axis2": None if self.axis2 is None else self.axis2.tolist(),
            "values": self.values.tolist(),
        }
        json.dump(doc, stream, indent=1)
        stream.write("\n")
