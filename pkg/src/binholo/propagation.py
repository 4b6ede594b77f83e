"""Scalar diffraction by FFT transfer functions, and 4f spectrum filtering.

DFT convention: ``numpy.fft.fft2`` (negative exponent, unnormalized) forward,
``ifft2`` (carries ``1/(W*H)``) inverse. Frequencies follow ``fftfreq``
ordering, so no shifts are applied anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Field, GridSpec

METHODS = ("angular_spectrum", "fresnel")
PADDINGS = ("none", "double")
APERTURE_SHAPES = ("circle", "square")


@dataclass(frozen=True)
class PropagationSpec:
    """How to carry a field over ``distance`` meters (negative = backwards)."""

    distance: float
    method: str = "angular_spectrum"
    band_limit: bool = False
    padding: str = "none"

    def __post_init__(self):
        if not math.isfinite(self.distance):
            raise ValueError(f"propagation distance must be finite, got {self.distance!r}")
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.padding not in PADDINGS:
            raise ValueError(f"padding must be one of {PADDINGS}, got {self.padding!r}")
        object.__setattr__(self, "distance", float(self.distance))

    def reversed(self) -> "PropagationSpec":
        return PropagationSpec(-self.distance, self.method, self.band_limit, self.padding)

    def as_dict(self) -> dict:
        return {
            "distance": self.distance,
            "method": self.method,
            "band_limit": self.band_limit,
            "padding": self.padding,
        }


@dataclass(frozen=True)
class ApertureSpec:
    """Binary Fourier-plane aperture centered on DC.

    ``fraction`` is the diameter (circle) or side (square) as a fraction of the
    grid size along each axis. A bin at integer frequency index ``(kx, ky)``
    passes when ``|k| <= size/2``; ``fraction=1/8`` reproduces an N/8 iris.
    """

    fraction: float = 1.0 / 8.0
    shape: str = "circle"

    def __post_init__(self):
        if self.shape not in APERTURE_SHAPES:
            raise ValueError(f"aperture shape must be one of {APERTURE_SHAPES}, got {self.shape!r}")
        if not (math.isfinite(self.fraction) and self.fraction > 0):
            raise ValueError(f"aperture fraction must be > 0, got {self.fraction!r}")
        if self.fraction > 1:
            raise ValueError(f"aperture larger than the grid (fraction {self.fraction} > 1)")
        object.__setattr__(self, "fraction", float(self.fraction))

    @classmethod
    def full(cls) -> "ApertureSpec":
        return cls(1.0, "square")

    def mask(self, shape: tuple[int, int]) -> np.ndarray:
        """Boolean pass mask in unshifted FFT order for an array of ``shape``."""
        ny, nx = shape
        ky = np.fft.fftfreq(ny) * ny
        kx = np.fft.fftfreq(nx) * nx
        rx = self.fraction * nx / 2.0
        ry = self.fraction * ny / 2.0
        if self.shape == "square":
            return (np.abs(ky)[:, None] <= ry) & (np.abs(kx)[None, :] <= rx)
        return (ky[:, None] / ry) ** 2 + (kx[None, :] / rx) ** 2 <= 1.0

    def as_dict(self) -> dict:
        return {"fraction": self.fraction, "shape": self.shape}


def _check_finite(data: np.ndarray):
    if data.size == 0:
        raise ValueError("cannot propagate a zero-sized field")
    if not np.all(np.isfinite(data)):
        raise ValueError("field contains non-finite samples")


def transfer_function(grid: GridSpec, spec: PropagationSpec, shape=None) -> np.ndarray:
    """Frequency response for ``spec`` on an FFT grid of ``shape`` (default: grid shape)."""
    ny, nx = grid.shape if shape is None else shape
    lam, z = grid.wavelength, spec.distance
    fx = np.fft.fftfreq(nx, d=grid.pitch)
    fy = np.fft.fftfreq(ny, d=grid.pitch)
    fxx = fx[None, :] ** 2
    fyy = fy[:, None] ** 2

    if spec.method == "angular_spectrum":
        arg = 1.0 / lam**2 - fxx - fyy
        propagating = arg >= 0
        kz = np.sqrt(np.where(propagating, arg, 0.0))
        h = np.where(propagating, np.exp(2j * np.pi * z * kz), 0.0)
    else:
        h = np.exp(2j * np.pi * z / lam) * np.exp(-1j * np.pi * lam * z * (fxx + fyy))

    if spec.band_limit and z != 0:
        # band-limited ASM cutoff; beyond it the sampled chirp aliases
        dfx = 1.0 / (nx * grid.pitch)
        dfy = 1.0 / (ny * grid.pitch)
        fx_lim = 1.0 / (lam * math.sqrt((2 * dfx * z) ** 2 + 1))
        fy_lim = 1.0 / (lam * math.sqrt((2 * dfy * z) ** 2 + 1))
        h = h * ((np.abs(fx)[None, :] <= fx_lim) & (np.abs(fy)[:, None] <= fy_lim))
    return h


def propagate(f: Field, spec: PropagationSpec) -> Field:
    """Propagate ``f`` by ``spec.distance`` and return a field on the same grid."""
    data = f.data
    _check_finite(data)
    if spec.padding == "double":
        ny, nx = data.shape
        oy, ox = ny // 2, nx // 2
        padded = np.zeros((2 * ny, 2 * nx), dtype=np.complex128)
        padded[oy:oy + ny, ox:ox + nx] = data
        h = transfer_function(f.grid, spec, padded.shape)
        out = np.fft.ifft2(np.fft.fft2(padded) * h)[oy:oy + ny, ox:ox + nx]
    else:
        h = transfer_function(f.grid, spec)
        out = np.fft.ifft2(np.fft.fft2(data) * h)
    return Field(f.grid, out)


def spectrum_filter(f: Field, aperture: ApertureSpec) -> Field:
    """4f low-pass: keep only the spectral bins inside ``aperture``."""
    _check_finite(f.data)
    spectrum = np.fft.fft2(f.data)
    return Field(f.grid, np.fft.ifft2(spectrum * aperture.mask(f.grid.shape)))
