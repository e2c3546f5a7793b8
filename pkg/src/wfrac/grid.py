"""Time grids and sampled functions.

Grids are strictly increasing positive sample times. Graded grids cluster
algebraically toward t = 0 (default exponent 2) to resolve the kernel
singularities t**(-alpha) and t**(alpha-1); uniform grids are supported but
lower-accuracy for convolution work.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

__all__ = ["TimeGrid", "SampledFunction"]


@dataclass(frozen=True)
class TimeGrid:
    """Strictly increasing positive sample times with spacing metadata."""

    points: np.ndarray
    spacing: str = "custom"  # uniform | graded | log | custom
    grading_exponent: float | None = None

    def __post_init__(self) -> None:
        pts = np.atleast_1d(np.asarray(self.points, dtype=float))
        object.__setattr__(self, "points", pts)
        if pts.size < 1:
            raise DomainError("grid needs at least one point")
        if pts[0] <= 0.0:
            raise DomainError(f"grid points must be positive, first is {pts[0]}")
        if pts.size > 1 and not np.all(np.diff(pts) > 0.0):
            raise DomainError("grid points must be strictly increasing")

    def __len__(self) -> int:
        return int(self.points.size)

    @property
    def t_min(self) -> float:
        return float(self.points[0])

    @property
    def t_max(self) -> float:
        return float(self.points[-1])

    def describe(self) -> str:
        """Short descriptor for output metadata."""
        tag = self.spacing
        if self.spacing == "graded" and self.grading_exponent is not None:
            tag = f"graded(p={self.grading_exponent:g})"
        return f"{tag}[{self.t_min:g},{self.t_max:g}]x{len(self)}"

    @classmethod
    def uniform(cls, t_min: float, t_max: float, n: int) -> "TimeGrid":
        if n < 1 or t_min <= 0.0 or t_max <= t_min:
            raise DomainError("uniform grid needs n >= 1 and 0 < t_min < t_max")
        return cls(np.linspace(t_min, t_max, n), spacing="uniform")

    @classmethod
    def graded(cls, t_max: float, n: int, exponent: float = 2.0) -> "TimeGrid":
        """t_i = t_max * (i/n)**exponent, i = 1..n; clusters toward 0."""
        if n < 1 or t_max <= 0.0 or exponent <= 0.0:
            raise DomainError("graded grid needs n >= 1, t_max > 0, exponent > 0")
        i = np.arange(1, n + 1, dtype=float)
        return cls(t_max * (i / n) ** exponent, spacing="graded", grading_exponent=exponent)

    @classmethod
    def logspaced(cls, t_min: float, t_max: float, n: int) -> "TimeGrid":
        if n < 1 or t_min <= 0.0 or t_max <= t_min:
            raise DomainError("log grid needs n >= 1 and 0 < t_min < t_max")
        return cls(np.logspace(np.log10(t_min), np.log10(t_max), n), spacing="log")


@dataclass(frozen=True)
class SampledFunction:
    """Samples on a positive grid plus the value at t = 0.

    The explicit value_at_zero carries the u(0) normalization of the
    Caputo-type derivative; convolution operators prepend it as the node
    at the origin.
    """

    grid: TimeGrid
    values: np.ndarray
    value_at_zero: float = 0.0

    def __post_init__(self) -> None:
        vals = np.atleast_1d(np.asarray(self.values, dtype=float))
        object.__setattr__(self, "values", vals)
        if vals.size != len(self.grid):
            raise DomainError(
                f"{vals.size} values for a {len(self.grid)}-point grid"
            )
        if not np.isfinite(self.value_at_zero):
            raise DomainError("value_at_zero must be finite")

    @classmethod
    def from_callable(cls, f, grid: TimeGrid) -> "SampledFunction":
        vals = np.array([f(t) for t in grid.points], dtype=float)
        return cls(grid, vals, value_at_zero=float(f(0.0)))
