"""Node sets and trapezoid quadrature on an interval.

Two point families are supported: uniform nodes and Chebyshev-Gauss-Lobatto
nodes.  Both nest under doubling (every node of the n-point grid reappears in
the 2n-point grid), which the convergence studies rely on to difference
solutions at coincident nodes without interpolation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError

FAMILIES = ("uniform", "chebyshev")


@dataclass(frozen=True)
class GridSpec:
    """Requested node family, subinterval count and interval."""

    family: str
    n: int
    interval: tuple[float, float] = (-1.0, 1.0)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ConfigError(f"unknown grid family {self.family!r}; expected one of {FAMILIES}")
        if self.n < 2:
            raise ConfigError(f"need at least 2 subintervals, got n={self.n}")
        left, right = self.interval
        if not np.isfinite(left) or not np.isfinite(right) or not left < right:
            raise ConfigError(f"degenerate interval {self.interval}")


@dataclass(frozen=True)
class Grid:
    """Realized grid: nodes x, spacings h, subinterval midpoints and trapezoid weights.

    Arrays are read-only; build a new grid instead of mutating one.
    """

    spec: GridSpec
    x: np.ndarray
    h: np.ndarray
    mid: np.ndarray
    w: np.ndarray

    @property
    def n(self) -> int:
        return self.spec.n

    def __post_init__(self):
        for arr in (self.x, self.h, self.mid, self.w):
            arr.flags.writeable = False


def build_grid(spec: GridSpec) -> Grid:
    """Construct the node set for ``spec`` along with derived quadrature data."""
    left, right = spec.interval
    n = spec.n
    k = np.arange(n + 1)
    # Both families are built from the same affine map of a reference grid on
    # [0, 1] so that the n and 2n grids share nodes bitwise.
    if spec.family == "uniform":
        ref = k / n
    else:
        ref = (1.0 - np.cos(k * np.pi / n)) / 2.0
    x = left + (right - left) * ref
    x[0] = left
    x[-1] = right
    h = np.diff(x)
    if np.any(h <= 0):
        raise ConfigError("grid nodes are not strictly increasing")
    mid = 0.5 * (x[:-1] + x[1:])
    w = np.empty(n + 1)
    w[0] = 0.5 * h[0]
    w[-1] = 0.5 * h[-1]
    w[1:-1] = 0.5 * (h[:-1] + h[1:])
    return Grid(spec=spec, x=x, h=h, mid=mid, w=w)


def trapezoid_sum(grid: Grid, values: np.ndarray) -> float:
    """Composite trapezoid rule of nodal ``values`` over the grid interval."""
    values = np.asarray(values)
    if values.shape != grid.x.shape:
        raise ValueError(f"values shape {values.shape} does not match grid with {grid.n + 1} nodes")
    return float(np.dot(grid.w, values))
