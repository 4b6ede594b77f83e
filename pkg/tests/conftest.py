import os
from pathlib import Path

import numpy as np
import pytest

from binholo import GridSpec
from binholo.images import STANDARD_IMAGES, find_image

REPO = Path(__file__).resolve().parents[1]

# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES = []


def standard_image_dir():
    """$BINHOLO_IMAGES if set, else the repo's images/ folder."""
    return Path(os.environ.get("BINHOLO_IMAGES", REPO / "images"))


def missing_images(names, directory=None):
    directory = standard_image_dir() if directory is None else directory
    missing = []
    for name in names:
        try:
            find_image(name, directory)
        except FileNotFoundError:
            missing.append(name)
    return missing


def pytest_report_header(config):
    d = standard_image_dir()
    have = [n for n in STANDARD_IMAGES if not missing_images([n], d)]
    return f"binholo test images: {d} (found: {', '.join(have) or 'none'})"


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def small_grid():
    return GridSpec(64, 64, 8e-6, 532e-9)


@pytest.fixture
def random_field(rng, small_grid):
    shape = small_grid.shape
    data = rng.random(shape) * np.exp(2j * np.pi * rng.random(shape))
    from binholo import Field

    return Field(small_grid, data)
