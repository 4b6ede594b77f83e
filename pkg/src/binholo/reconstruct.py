"""Simulated optical read-out of a phase-only hologram."""

from __future__ import annotations

from .core import Field
from .encoding import PhaseHologram
from .propagation import ApertureSpec, PropagationSpec, propagate, spectrum_filter


def reconstruct(h, prop: PropagationSpec, aperture: ApertureSpec | None = None) -> Field:
    """Low-pass ``h`` through a 4f aperture, then carry it back to the object plane.

    ``prop`` is the spec used for encoding; the field travels ``-prop.distance``.
    ``h`` may also be a complex :class:`Field`, which is how the unencoded
    complex reference is read out.
    """
    aperture = ApertureSpec() if aperture is None else aperture
    wave = h.field() if isinstance(h, PhaseHologram) else h
    return propagate(spectrum_filter(wave, aperture), prop.reversed())
