"""Sampled complex fields, grid geometry and 8-bit image interchange."""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from pathlib import Path

import numpy as np
from PIL import Image

TWO_PI = 2.0 * math.pi


def wrap_phase(phase):
    """Wrap radians into [0, 2*pi).

    ``np.mod`` can return exactly ``2*pi`` for tiny negative inputs, so those
    samples are folded back to zero.
    """
    wrapped = np.mod(phase, TWO_PI)
    return np.where(wrapped >= TWO_PI, 0.0, wrapped)


def round_half_away(x):
    """Round to nearest integer, ties away from zero."""
    x = np.asarray(x, dtype=float)
    return np.sign(x) * np.floor(np.abs(x) + 0.5)


def _readonly(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class GridSpec:
    """Sampling geometry of a hologram or object plane.

    Parameters
    ----------
    width, height : int
        Pixel counts. Must be even and at least 2.
    pitch : float
        Pixel pitch in meters.
    wavelength : float
        Illumination wavelength in meters.
    """

    width: int = 1024
    height: int = 1024
    pitch: float = 8e-6
    wavelength: float = 532e-9

    def __post_init__(self):
        for name in ("width", "height"):
            v = getattr(self, name)
            if int(v) != v or v < 2 or v % 2:
                raise ValueError(f"{name} must be an even integer >= 2, got {v!r}")
            object.__setattr__(self, name, int(v))
        for name in ("pitch", "wavelength"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be finite and > 0, got {v!r}")
            object.__setattr__(self, name, float(v))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.height, self.width)

    def coordinates(self) -> tuple[np.ndarray, np.ndarray]:
        """Physical sample positions ``(x, y)`` in meters, origin at pixel (W/2, H/2)."""
        x = (np.arange(self.width) - self.width // 2) * self.pitch
        y = (np.arange(self.height) - self.height // 2) * self.pitch
        return np.meshgrid(x, y)

    def with_size(self, width: int, height: int | None = None) -> "GridSpec":
        return GridSpec(width, width if height is None else height, self.pitch, self.wavelength)

    def as_dict(self) -> dict:
        return {
            "width": self.width,
            "height": self.height,
            "pitch": self.pitch,
            "wavelength": self.wavelength,
        }


@dataclass(frozen=True)
class Field:
    """Complex scalar field sampled on a :class:`GridSpec`.

    ``data`` is stored row-major with shape ``(height, width)`` and is made
    read-only on construction.
    """

    grid: GridSpec
    data: np.ndarray = dc_field(repr=False)

    def __post_init__(self):
        data = np.array(self.data, dtype=np.complex128, copy=True)
        if data.shape != self.grid.shape:
            raise ValueError(
                f"field data has shape {data.shape}, grid expects {self.grid.shape}"
            )
        object.__setattr__(self, "data", _readonly(data))

    @property
    def amplitude(self) -> np.ndarray:
        return np.abs(self.data)

    @property
    def phase(self) -> np.ndarray:
        return wrap_phase(np.angle(self.data))

    @property
    def energy(self) -> float:
        return float(np.sum(np.abs(self.data) ** 2))

    def replace(self, data) -> "Field":
        return Field(self.grid, data)


@dataclass(frozen=True)
class GrayImage:
    """8-bit single channel image, shape ``(height, width)``."""

    pixels: np.ndarray = dc_field(repr=False)

    def __post_init__(self):
        px = np.asarray(self.pixels)
        if px.ndim != 2:
            raise ValueError(f"gray image must be 2-D, got shape {px.shape}")
        if px.dtype != np.uint8:
            if px.size and (px.min() < 0 or px.max() > 255):
                raise ValueError("gray image samples must lie in [0, 255]")
            px = px.astype(np.uint8)
        object.__setattr__(self, "pixels", _readonly(np.array(px, copy=True)))

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @classmethod
    def read(cls, path) -> "GrayImage":
        """Read a PNG or PGM file; color sources are reduced to BT.601 luma."""
        path = Path(path)
        if not path.is_file():
            raise FileNotFoundError(f"image not found: {path}")
        with Image.open(path) as im:
            if im.mode in ("I;16", "I;16B", "I"):
                px = np.asarray(im, dtype=np.float64) / 257.0
                return cls(round_half_away(px).clip(0, 255).astype(np.uint8))
            if im.mode != "L":
                # PIL's "L" conversion is the ITU-R 601-2 luma transform
                im = im.convert("RGB").convert("L")
            return cls(np.asarray(im, dtype=np.uint8))

    def write(self, path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        Image.fromarray(np.ascontiguousarray(self.pixels)).save(path, optimize=False)
        return path

    def resized(self, width: int, height: int) -> "GrayImage":
        """Nearest-neighbour resample to ``(width, height)``."""
        if (width, height) == (self.width, self.height):
            return self
        rows = (np.arange(height) * self.height) // height
        cols = (np.arange(width) * self.width) // width
        return GrayImage(self.pixels[np.ix_(rows, cols)])


def field_from_images(amp: GrayImage, phase: GrayImage, grid: GridSpec) -> Field:
    """Build an object field ``(amp/255) * exp(2j*pi*phase/255)``.

    Gray level 255 in the phase image maps to 2*pi, which wraps to the same
    value as level 0.
    """
    for name, img in (("amplitude", amp), ("phase", phase)):
        if (img.width, img.height) != (grid.width, grid.height):
            raise ValueError(
                f"{name} image is {img.width}x{img.height}, "
                f"grid is {grid.width}x{grid.height}"
            )
    a = amp.pixels.astype(np.float64) / 255.0
    theta = TWO_PI * phase.pixels.astype(np.float64) / 255.0
    return Field(grid, a * np.exp(1j * theta))


def amplitude_to_image(amplitude, scale: float | None = None) -> GrayImage:
    """Map an amplitude plane to 8 bits, dividing by ``scale`` (default: its max)."""
    amplitude = np.asarray(amplitude, dtype=float)
    if scale is None:
        scale = float(amplitude.max()) if amplitude.size else 0.0
        if scale <= 0:
            raise ValueError("cannot max-normalize an all-zero amplitude")
    elif not scale > 0:
        raise ValueError(f"amplitude scale must be > 0, got {scale!r}")
    px = round_half_away(255.0 * amplitude / scale).clip(0, 255)
    return GrayImage(px.astype(np.uint8))


def phase_to_image(phase) -> GrayImage:
    """Map radians (wrapped into [0, 2*pi)) linearly onto gray levels [0, 255]."""
    px = round_half_away(255.0 * wrap_phase(phase) / TWO_PI).clip(0, 255)
    return GrayImage(px.astype(np.uint8))


def field_to_images(f: Field, amp_norm: str | float = "max") -> tuple[GrayImage, GrayImage]:
    """Render a field as ``(amplitude, phase)`` 8-bit images.

    ``amp_norm`` is ``"max"`` to divide by the peak amplitude, or a positive
    number used as a fixed full-scale amplitude.
    """
    if f.data.size == 0:
        raise ValueError("empty field")
    if amp_norm == "max":
        scale = None
    elif isinstance(amp_norm, str):
        raise ValueError(f"unknown amplitude normalization {amp_norm!r}")
    else:
        scale = float(amp_norm)
    return amplitude_to_image(f.amplitude, scale), phase_to_image(np.angle(f.data))


def phase_to_image16(phase) -> np.ndarray:
    """16-bit quantization of a phase plane, for lossless hologram export."""
    px = round_half_away(65535.0 * wrap_phase(phase) / TWO_PI).clip(0, 65535)
    return px.astype(np.uint16)


def write_png16(pixels: np.ndarray, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    Image.fromarray(np.ascontiguousarray(pixels, dtype=np.uint16)).save(path)
    return path
