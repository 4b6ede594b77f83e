"""scikit-learn style wrappers around the encoding pipeline.

Each estimator accepts one complex field of shape ``(H, W)`` or a stack of
shape ``(n, H, W)`` and is stateless apart from remembering the field shape
seen in :meth:`fit`. They chain with :class:`sklearn.pipeline.Pipeline`::

    pipe = make_pipeline(Propagator(0.2), BinarizedAmplitudeEncoder(),
                         HologramReconstructor(0.2))
    recon = pipe.fit_transform(obj)
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .binarize import get_kernel
from .core import Field, GridSpec
from .encoding import (
    DITHER_NORMS,
    CancelSpec,
    PhaseHologram,
    encode_dph,
    encode_naive,
    encode_proposed,
)
from .propagation import ApertureSpec, PropagationSpec, propagate
from .reconstruct import reconstruct


def check_fields(X, *, dtype=np.complex128):
    """Validate a field or stack of fields; return ``(stack, was_single)``.

    The stack is 3-D with even, >= 2 sized trailing axes and finite samples.
    """
    X = np.asarray(X)
    if X.ndim not in (2, 3):
        raise ValueError(f"expected a (H, W) field or (n, H, W) stack, got shape {X.shape}")
    single = X.ndim == 2
    stack = np.asarray(X[None] if single else X, dtype=dtype)
    h, w = stack.shape[1:]
    if h < 2 or w < 2 or h % 2 or w % 2:
        raise ValueError(f"field dimensions must be even and >= 2, got {h}x{w}")
    if not np.all(np.isfinite(stack)):
        raise ValueError("input contains non-finite samples")
    return stack, single


class _FieldTransformer(TransformerMixin, BaseEstimator):
    # encoders never propagate, so they only need a placeholder geometry
    pitch = 8e-6
    wavelength = 532e-9
    _input_dtype = np.complex128

    def fit(self, X, y=None):
        stack, _ = check_fields(X, dtype=self._input_dtype)
        self._validate_params_()
        self.field_shape_ = stack.shape[1:]
        return self

    def _validate_params_(self):
        pass

    def _grid(self, shape) -> GridSpec:
        return GridSpec(shape[1], shape[0], self.pitch, self.wavelength)

    def _map(self, X, fn, out_dtype):
        check_is_fitted(self, "field_shape_")
        stack, single = check_fields(X, dtype=self._input_dtype)
        if stack.shape[1:] != self.field_shape_:
            raise ValueError(
                f"{type(self).__name__} was fitted on {self.field_shape_} fields, got {stack.shape[1:]}"
            )
        grid = self._grid(self.field_shape_)
        out = np.stack([fn(grid, x) for x in stack]).astype(out_dtype, copy=False)
        return out[0] if single else out


class Propagator(_FieldTransformer):
    """Free-space propagation by ``distance`` meters; ``inverse_transform`` goes back."""

    def __init__(self, distance=0.2, pitch=8e-6, wavelength=532e-9,
                 method="angular_spectrum", band_limit=False, padding="none"):
        self.distance = distance
        self.pitch = pitch
        self.wavelength = wavelength
        self.method = method
        self.band_limit = band_limit
        self.padding = padding

    def _spec(self, sign=1.0) -> PropagationSpec:
        return PropagationSpec(sign * self.distance, self.method, self.band_limit, self.padding)

    def _validate_params_(self):
        self._spec()

    def transform(self, X):
        spec = self._spec()
        return self._map(X, lambda g, x: propagate(Field(g, x), spec).data, np.complex128)

    def inverse_transform(self, X):
        spec = self._spec(-1.0)
        return self._map(X, lambda g, x: propagate(Field(g, x), spec).data, np.complex128)


class BinarizedAmplitudeEncoder(_FieldTransformer):
    """Hologram-plane field to phase-only hologram via dithered amplitude and canceling wave.

    ``transform`` returns phases in [0, 2*pi). ``masks(X)`` returns the on/off
    patterns for the same input.
    """

    def __init__(self, kernel="floyd_steinberg", cancel="alternate", seed=None, dither_norm="max"):
        self.kernel = kernel
        self.cancel = cancel
        self.seed = seed
        self.dither_norm = dither_norm

    def _cancel(self) -> CancelSpec:
        if self.cancel == "random":
            return CancelSpec("random", 0 if self.seed is None else self.seed)
        return CancelSpec(self.cancel)

    def _validate_params_(self):
        get_kernel(self.kernel)
        self._cancel()
        if self.dither_norm not in DITHER_NORMS:
            raise ValueError(f"dither_norm must be one of {DITHER_NORMS}, got {self.dither_norm!r}")

    def _encode(self, grid, x):
        return encode_proposed(Field(grid, x), self.kernel, self._cancel(), self.dither_norm)

    def transform(self, X):
        return self._map(X, lambda g, x: self._encode(g, x)[0].phase, np.float64)

    def masks(self, X):
        return self._map(X, lambda g, x: self._encode(g, x)[1].bits, bool)


class DoublePhaseEncoder(_FieldTransformer):
    """Checkerboard double-phase hologram."""

    def transform(self, X):
        return self._map(X, lambda g, x: encode_dph(Field(g, x)).phase, np.float64)


class PhaseOnlyEncoder(_FieldTransformer):
    """Keep the phase of the field, drop its amplitude."""

    def transform(self, X):
        return self._map(X, lambda g, x: encode_naive(Field(g, x)).phase, np.float64)


class HologramReconstructor(_FieldTransformer):
    """4f low-pass plus back-propagation of phase holograms to the object plane.

    Real input is read as hologram phase; complex input as the field itself.
    """

    _input_dtype = None

    def __init__(self, distance=0.2, pitch=8e-6, wavelength=532e-9,
                 aperture=1.0 / 8.0, aperture_shape="circle",
                 method="angular_spectrum", band_limit=False, padding="none"):
        self.distance = distance
        self.pitch = pitch
        self.wavelength = wavelength
        self.aperture = aperture
        self.aperture_shape = aperture_shape
        self.method = method
        self.band_limit = band_limit
        self.padding = padding

    def _validate_params_(self):
        PropagationSpec(self.distance, self.method, self.band_limit, self.padding)
        ApertureSpec(self.aperture, self.aperture_shape)

    def _one(self, grid, x):
        prop = PropagationSpec(self.distance, self.method, self.band_limit, self.padding)
        aperture = ApertureSpec(self.aperture, self.aperture_shape)
        if np.iscomplexobj(x):
            wave = Field(grid, x)
        else:
            wave = PhaseHologram(grid, x)
        return reconstruct(wave, prop, aperture).data

    def transform(self, X):
        return self._map(X, self._one, np.complex128)
