"""Error-diffusion binarization of hologram-plane amplitudes."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numba
import numpy as np

from .core import GrayImage

#: Inputs this far outside [0, 1] are clamped; anything further is an error.
CLAMP_EPS = 1e-9


@dataclass(frozen=True)
class DitherKernel:
    """Error-diffusion weights as ``((dy, dx), weight)`` pairs."""

    name: str
    weights: tuple

    def __post_init__(self):
        total = sum(w for _, w in self.weights)
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"kernel {self.name!r} weights sum to {total}, not 1")
        for (dy, dx), _ in self.weights:
            if not (dy > 0 or (dy == 0 and dx > 0)):
                raise ValueError(f"kernel {self.name!r} offset {(dy, dx)} is not ahead in raster order")

    def arrays(self):
        dy = np.array([o[0] for o, _ in self.weights], dtype=np.int64)
        dx = np.array([o[1] for o, _ in self.weights], dtype=np.int64)
        w = np.array([float(v) for _, v in self.weights], dtype=np.float64)
        return dy, dx, w


def _kernel(name, denom, rows):
    # rows: {dy: {dx: numerator}}
    weights = tuple(
        ((dy, dx), float(Fraction(num, denom)))
        for dy, row in rows.items()
        for dx, num in row.items()
    )
    return DitherKernel(name, weights)


FLOYD_STEINBERG = _kernel("floyd_steinberg", 16, {
    0: {1: 7},
    1: {-1: 3, 0: 5, 1: 1},
})
JARVIS_JUDICE_NINKE = _kernel("jarvis_judice_ninke", 48, {
    0: {1: 7, 2: 5},
    1: {-2: 3, -1: 5, 0: 7, 1: 5, 2: 3},
    2: {-2: 1, -1: 3, 0: 5, 1: 3, 2: 1},
})
STUCKI = _kernel("stucki", 42, {
    0: {1: 8, 2: 4},
    1: {-2: 2, -1: 4, 0: 8, 1: 4, 2: 2},
    2: {-2: 1, -1: 2, 0: 4, 1: 2, 2: 1},
})
BURKES = _kernel("burkes", 32, {
    0: {1: 8, 2: 4},
    1: {-2: 2, -1: 4, 0: 8, 1: 4, 2: 2},
})

KERNELS = {k.name: k for k in (FLOYD_STEINBERG, JARVIS_JUDICE_NINKE, STUCKI, BURKES)}
KERNEL_ALIASES = {"fs": "floyd_steinberg", "jjn": "jarvis_judice_ninke"}


def get_kernel(kernel) -> DitherKernel:
    """Resolve a kernel name, CLI alias or :class:`DitherKernel` instance."""
    if isinstance(kernel, DitherKernel):
        return kernel
    name = KERNEL_ALIASES.get(kernel, kernel)
    try:
        return KERNELS[name]
    except KeyError:
        raise ValueError(
            f"unknown dither kernel {kernel!r}; choose from "
            f"{sorted(KERNELS) + sorted(KERNEL_ALIASES)}"
        ) from None


@dataclass(frozen=True)
class BinaryMask:
    """On/off pattern; ``bits[y, x]`` is True for on-pixels."""

    bits: np.ndarray = dc_field(repr=False)

    def __post_init__(self):
        bits = np.array(self.bits, dtype=bool, copy=True)
        if bits.ndim != 2:
            raise ValueError(f"mask must be 2-D, got shape {bits.shape}")
        bits.flags.writeable = False
        object.__setattr__(self, "bits", bits)

    @property
    def shape(self):
        return self.bits.shape

    @property
    def width(self) -> int:
        return self.bits.shape[1]

    @property
    def height(self) -> int:
        return self.bits.shape[0]

    @property
    def on(self) -> np.ndarray:
        return self.bits

    @property
    def off(self) -> np.ndarray:
        return ~self.bits

    def density(self) -> float:
        return mask_density(self)

    def to_image(self) -> GrayImage:
        """White on-pixels, black off-pixels."""
        return GrayImage(np.where(self.bits, 255, 0).astype(np.uint8))


@numba.njit(cache=True)
def _diffuse(values, dy, dx, w, threshold):
    h, wd = values.shape
    out = np.zeros((h, wd), dtype=np.bool_)
    nk = dy.shape[0]
    for y in range(h):
        for x in range(wd):
            v = values[y, x]
            if v >= threshold:
                out[y, x] = True
                err = v - 1.0
            else:
                err = v
            for k in range(nk):
                yy = y + dy[k]
                xx = x + dx[k]
                if yy < h and 0 <= xx < wd:
                    values[yy, xx] += err * w[k]
    return out


def binarize(amplitude, kernel="floyd_steinberg", threshold: float = 0.5) -> BinaryMask:
    """Binarize a [0, 1] plane by raster-order error diffusion.

    A pixel turns on when its accumulated value reaches ``threshold``. Error
    that would diffuse past the image border is dropped.
    """
    a = np.array(amplitude, dtype=np.float64, copy=True)
    if a.ndim != 2:
        raise ValueError(f"amplitude plane must be 2-D, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("amplitude plane contains non-finite samples")
    if a.size and (a.min() < -CLAMP_EPS or a.max() > 1 + CLAMP_EPS):
        raise ValueError(
            f"amplitude samples must lie in [0, 1] (got [{a.min():.6g}, {a.max():.6g}]); "
            "normalize before binarizing"
        )
    np.clip(a, 0.0, 1.0, out=a)
    dy, dx, w = get_kernel(kernel).arrays()
    return BinaryMask(_diffuse(a, dy, dx, w, float(threshold)))


def mask_density(mask) -> float:
    """Fraction of on-pixels."""
    bits = mask.bits if isinstance(mask, BinaryMask) else np.asarray(mask, dtype=bool)
    if bits.size == 0:
        return 0.0
    return float(np.count_nonzero(bits)) / bits.size
