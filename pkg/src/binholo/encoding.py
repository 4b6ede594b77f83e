"""Phase-only encodings of a complex hologram-plane field.

Three encoders are provided:

* :func:`encode_proposed` binarizes the amplitude by error diffusion, keeps
  the field phase on on-pixels and writes a 0/pi canceling wave on
  off-pixels, so the hologram is ``exp(i*(theta*a_on + theta_c))``.
* :func:`encode_dph` is the checkerboard-multiplexed double-phase hologram.
* :func:`encode_naive` drops the amplitude.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .binarize import BinaryMask, binarize
from .core import Field, GrayImage, GridSpec, phase_to_image, phase_to_image16, wrap_phase

CANCEL_KINDS = ("checkerboard", "random", "alternate")
DITHER_NORMS = ("max", "rms")


@dataclass(frozen=True)
class PhaseHologram:
    """Unit-amplitude hologram ``exp(1j * phase)`` with phase in [0, 2*pi)."""

    grid: GridSpec
    phase: np.ndarray = dc_field(repr=False)

    def __post_init__(self):
        phase = np.array(self.phase, dtype=np.float64, copy=True)
        if phase.shape != self.grid.shape:
            raise ValueError(f"phase has shape {phase.shape}, grid expects {self.grid.shape}")
        phase = wrap_phase(phase)
        phase.flags.writeable = False
        object.__setattr__(self, "phase", phase)

    def field(self) -> Field:
        return Field(self.grid, np.exp(1j * self.phase))

    def to_image(self) -> GrayImage:
        return phase_to_image(self.phase)

    def to_image16(self) -> np.ndarray:
        return phase_to_image16(self.phase)


@dataclass(frozen=True)
class CancelSpec:
    """Canceling-wave generator choice. ``seed`` is required for, and only for, ``random``."""

    kind: str = "alternate"
    seed: int | None = None

    def __post_init__(self):
        if self.kind not in CANCEL_KINDS:
            raise ValueError(f"cancel kind must be one of {CANCEL_KINDS}, got {self.kind!r}")
        if (self.kind == "random") != (self.seed is not None):
            raise ValueError("a seed must be given for the random canceling wave, and only for it")
        if self.seed is not None:
            if not 0 <= int(self.seed) < 2**64:
                raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
            object.__setattr__(self, "seed", int(self.seed))


def canceling_phase(mask: BinaryMask, spec: CancelSpec) -> np.ndarray:
    """0/pi phase plane on the off-pixels of ``mask`` (zero on on-pixels)."""
    off = mask.off
    h, w = off.shape
    if spec.kind == "checkerboard":
        y, x = np.indices((h, w))
        pattern = ((x + y) % 2) * math.pi
    elif spec.kind == "random":
        rng = np.random.Generator(np.random.PCG64(spec.seed))
        pattern = np.zeros((h, w))
        pattern[off] = rng.integers(0, 2, size=int(np.count_nonzero(off))) * math.pi
    else:
        # one toggle shared by the whole raster scan, starting at 0
        order = np.cumsum(off.ravel()) - 1
        pattern = ((order % 2) * math.pi).reshape(h, w)
    return np.where(off, pattern, 0.0)


def _normalized_amplitude(holo_field: Field) -> np.ndarray:
    amp = holo_field.amplitude
    peak = float(amp.max()) if amp.size else 0.0
    if not peak > 0:
        raise ValueError("cannot encode an all-zero field")
    return amp / peak


def dither_input(holo_field: Field, norm: str = "max") -> np.ndarray:
    """Amplitude plane handed to the binarizer.

    ``"max"`` divides by the peak amplitude. ``"rms"`` takes twice the RMS
    amplitude as full scale and clips above it, which saturates only the
    brightest few percent of a speckle-like field and raises the on-pixel
    density.
    """
    a = _normalized_amplitude(holo_field)
    if norm == "max":
        return a
    if norm == "rms":
        return np.minimum(a / (2.0 * np.sqrt(np.mean(a**2))), 1.0)
    raise ValueError(f"dither normalization must be one of {DITHER_NORMS}, got {norm!r}")


def encode_proposed(
    holo_field: Field,
    kernel="floyd_steinberg",
    cancel: CancelSpec | None = None,
    norm: str = "max",
) -> tuple[PhaseHologram, BinaryMask]:
    """Binarized-amplitude phase-only encoding.

    Returns the hologram and the on/off mask produced by dithering the
    amplitude (normalized per ``norm``, see :func:`dither_input`).
    """
    cancel = CancelSpec() if cancel is None else cancel
    mask = binarize(dither_input(holo_field, norm), kernel)
    theta = np.angle(holo_field.data)
    phase = np.where(mask.on, theta, canceling_phase(mask, cancel))
    return PhaseHologram(holo_field.grid, phase), mask


def double_phase(amplitude, theta) -> tuple[np.ndarray, np.ndarray]:
    """Split ``a*exp(i*theta)`` (``a`` in [0, 1]) into two unit phasors averaging to it."""
    offset = np.arccos(np.clip(amplitude, 0.0, 1.0))
    return theta + offset, theta - offset


def encode_dph(holo_field: Field) -> PhaseHologram:
    """Double-phase hologram, first phase on even ``x+y`` pixels, second on odd."""
    a = _normalized_amplitude(holo_field)
    theta1, theta2 = double_phase(a, np.angle(holo_field.data))
    y, x = np.indices(a.shape)
    return PhaseHologram(holo_field.grid, np.where((x + y) % 2 == 0, theta1, theta2))


def encode_naive(holo_field: Field) -> PhaseHologram:
    """Keep the phase, discard the amplitude."""
    _normalized_amplitude(holo_field)
    return PhaseHologram(holo_field.grid, np.angle(holo_field.data))
