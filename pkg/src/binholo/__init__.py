"""Phase-only hologram encoding with binarized amplitude and canceling waves."""

from .beams import BeamSpec, hermite, hermite_gaussian
from .binarize import KERNELS, BinaryMask, DitherKernel, binarize, get_kernel, mask_density
from .core import (
    Field,
    GrayImage,
    GridSpec,
    field_from_images,
    field_to_images,
    wrap_phase,
)
from .encoding import (
    CancelSpec,
    PhaseHologram,
    canceling_phase,
    double_phase,
    encode_dph,
    encode_naive,
    encode_proposed,
)
from .metrics import ScenarioReport, amplitude_psnr, light_efficiency, phase_psnr, psnr
from .propagation import ApertureSpec, PropagationSpec, propagate, spectrum_filter
from .reconstruct import reconstruct

__version__ = "0.1.0"
