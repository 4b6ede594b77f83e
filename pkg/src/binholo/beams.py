"""Hermite-Gaussian mode targets."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Field, GridSpec


@dataclass(frozen=True)
class BeamSpec:
    """TEM_mn mode at its waist plane.

    ``m`` counts nodal lines across x, ``n`` across y. ``waist`` of ``None``
    means one eighth of the grid width.
    """

    m: int = 9
    n: int = 7
    waist: float | None = None
    center: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        for name in ("m", "n"):
            v = getattr(self, name)
            if int(v) != v or v < 0:
                raise ValueError(f"mode order {name} must be a non-negative integer, got {v!r}")
            object.__setattr__(self, name, int(v))
        if self.waist is not None and not self.waist > 0:
            raise ValueError(f"waist must be > 0, got {self.waist!r}")

    def resolved_waist(self, grid: GridSpec) -> float:
        return grid.width * grid.pitch / 8.0 if self.waist is None else float(self.waist)


def hermite(k: int, x):
    """Physicists' Hermite polynomial H_k via the three-term recurrence."""
    x = np.asarray(x, dtype=np.float64)
    h_prev = np.ones_like(x)
    if k == 0:
        return h_prev
    h = 2.0 * x
    for j in range(1, k):
        h_prev, h = h, 2.0 * x * h - 2.0 * j * h_prev
    return h


def hermite_gaussian(grid: GridSpec, spec: BeamSpec = BeamSpec()) -> Field:
    """Sample ``H_m(sqrt2 x/w) H_n(sqrt2 y/w) exp(-(x^2+y^2)/w^2)``, peak amplitude 1."""
    w = spec.resolved_waist(grid)
    if w < 4 * grid.pitch:
        raise ValueError(f"waist {w:g} m is below the resolvable limit of 4 pixels ({4 * grid.pitch:g} m)")
    x, y = grid.coordinates()
    x = x - spec.center[0]
    y = y - spec.center[1]
    u = (
        hermite(spec.m, math.sqrt(2) * x / w)
        * hermite(spec.n, math.sqrt(2) * y / w)
        * np.exp(-(x**2 + y**2) / w**2)
    )
    peak = np.abs(u).max()
    if not peak > 0:
        raise ValueError("mode vanishes on this grid; move the center or enlarge the grid")
    return Field(grid, (u / peak).astype(np.complex128))
