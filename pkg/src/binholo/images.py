"""Locating the standard test images, plus a synthetic stand-in."""

from __future__ import annotations

import os
from pathlib import Path

import numpy as np

from .core import GrayImage, round_half_away

#: Canonical file stems looked up in the image directory.
STANDARD_IMAGES = ("mandrill", "pepper", "cameraman", "house")
EXTENSIONS = (".png", ".pgm", ".tif", ".tiff")
SYNTHETIC = "synthetic"


def image_dir(path=None) -> Path:
    """``path``, else ``$BINHOLO_IMAGES``, else ``./images``."""
    if path is not None:
        return Path(path)
    return Path(os.environ.get("BINHOLO_IMAGES", "images"))


def find_image(name: str, directory=None) -> Path:
    d = image_dir(directory)
    for ext in EXTENSIONS:
        candidate = d / f"{name}{ext}"
        if candidate.is_file():
            return candidate
    raise FileNotFoundError(
        f"test image {name!r} not found: expected {d / (name + '.png')} "
        "(see scripts/fetch_test_images.py)"
    )


def synthetic_pair(width: int, height: int) -> tuple[GrayImage, GrayImage]:
    """Radial chirp amplitude and a diagonal linear phase ramp."""
    y, x = np.mgrid[0:height, 0:width]
    r2 = ((x - width / 2) / width) ** 2 + ((y - height / 2) / height) ** 2
    amp = 0.5 + 0.5 * np.cos(2 * np.pi * 24.0 * r2)
    ramp = ((x / width + y / height) / 2.0) % 1.0
    return (
        GrayImage(round_half_away(255 * amp).astype(np.uint8)),
        GrayImage(round_half_away(255 * ramp).clip(0, 255).astype(np.uint8)),
    )


def load_image(spec: str, width: int, height: int, directory=None) -> GrayImage:
    """Load a named standard image or a file path, resampled nearest-neighbour to size."""
    path = Path(spec)
    if spec in STANDARD_IMAGES:
        path = find_image(spec, directory)
    return GrayImage.read(path).resized(width, height)
