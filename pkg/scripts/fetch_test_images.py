#!/usr/bin/env python3
"""Fetch or import the four standard test images into ``images/``.

The images are not redistributed with the package. Canonical sources:

    mandrill   USC-SIPI Miscellaneous 4.2.03 ("Mandrill", 512x512 color)
    pepper     USC-SIPI Miscellaneous 4.2.07 ("Peppers", 512x512 color)
    house      USC-SIPI Miscellaneous 4.1.05 ("House", 256x256 color)
    cameraman  scikit-image ``skimage.data.camera()`` (512x512 gray)

Usage::

    python scripts/fetch_test_images.py                 # try the network
    python scripts/fetch_test_images.py --from ~/dl     # import local copies

``--from`` looks for files whose stem contains the image name (for example
``4.2.07.tiff`` can be passed as ``--pepper ~/dl/4.2.07.tiff``). Everything
is stored as 8-bit PNG; color is kept and reduced to BT.601 luma on load.
"""

from __future__ import annotations

import argparse
import io
import sys
import urllib.request
from pathlib import Path

from PIL import Image

SIPI = "https://sipi.usc.edu/database/download.php?vol=misc&img={}"
SOURCES = {
    "mandrill": [SIPI.format("4.2.03")],
    "pepper": [SIPI.format("4.2.07")],
    "house": [SIPI.format("4.1.05")],
    "cameraman": [],  # scikit-image ships it
}
ALIASES = {
    "mandrill": ("mandrill", "baboon", "4.2.03"),
    "pepper": ("pepper", "4.2.07"),
    "house": ("house", "4.1.05"),
    "cameraman": ("cameraman", "camera"),
}


def save(img: Image.Image, dest: Path):
    dest.parent.mkdir(parents=True, exist_ok=True)
    if img.mode not in ("L", "RGB"):
        img = img.convert("RGB")
    img.save(dest)
    print(f"wrote {dest} ({img.width}x{img.height} {img.mode})")


def download(url: str, timeout: float) -> Image.Image:
    with urllib.request.urlopen(url, timeout=timeout) as resp:
        return Image.open(io.BytesIO(resp.read())).copy()


def from_skimage(name: str):
    if name != "cameraman":
        return None
    try:
        from skimage import data
    except ImportError:
        return None
    return Image.fromarray(data.camera())


def find_local(name: str, folder: Path):
    for p in sorted(folder.iterdir()):
        if p.is_file() and any(a in p.stem.lower() for a in ALIASES[name]):
            return p
    return None


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parents[1] / "images")
    ap.add_argument("--from", dest="src", type=Path, help="folder with already downloaded originals")
    for name in SOURCES:
        ap.add_argument(f"--{name}", type=Path, help=f"explicit file for {name}")
    ap.add_argument("--timeout", type=float, default=30.0)
    ap.add_argument("--force", action="store_true", help="overwrite existing files")
    args = ap.parse_args(argv)

    failed = []
    for name, urls in SOURCES.items():
        dest = args.out / f"{name}.png"
        if dest.exists() and not args.force:
            print(f"keep {dest}")
            continue
        local = getattr(args, name) or (find_local(name, args.src) if args.src else None)
        if local is not None:
            with Image.open(local) as im:
                save(im.copy(), dest)
            continue
        img = from_skimage(name)
        for url in urls:
            if img is not None:
                break
            try:
                img = download(url, args.timeout)
            except Exception as exc:  # network errors vary by platform
                print(f"  {name}: {url} failed ({exc})", file=sys.stderr)
        if img is None:
            failed.append(name)
        else:
            save(img, dest)

    if failed:
        print(
            "\nCould not obtain: " + ", ".join(failed) + ".\n"
            "Download them by hand (sources in this script's docstring) and rerun with "
            "--from <folder>, or place <name>.png in " + str(args.out),
            file=sys.stderr,
        )
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
