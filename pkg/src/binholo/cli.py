"""Command line front end: ``binholo encode|reconstruct|scenario|sweep``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np
from PIL import Image

from .binarize import KERNEL_ALIASES, KERNELS
from .core import TWO_PI, Field, field_to_images
from .encoding import CANCEL_KINDS, DITHER_NORMS, PhaseHologram, encode_dph, encode_naive, encode_proposed
from .metrics import amplitude_psnr, phase_psnr
from .propagation import APERTURE_SHAPES, METHODS, propagate
from .reconstruct import reconstruct
from .scenarios import (
    SCENARIOS,
    SWEEP_AXES,
    RunConfig,
    check_sweep,
    object_field,
    run_scenario,
    run_sweep,
    scenario_config,
)

log = logging.getLogger("binholo")

ENCODERS = ("proposed", "dph", "naive")


def _u64(text):
    v = int(text, 0)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError(f"seed must fit in 64 unsigned bits: {text}")
    return v


def _common(p: argparse.ArgumentParser):
    g = p.add_argument_group("geometry and optics")
    g.add_argument("--width", type=int)
    g.add_argument("--height", type=int)
    g.add_argument("--pitch", type=float, help="pixel pitch [m]")
    g.add_argument("--wavelength", type=float, help="[m]")
    g.add_argument("--distance", type=float, help="object-hologram distance [m]")
    g.add_argument("--propagation", choices=METHODS)
    g.add_argument("--pad", action="store_true", default=None, help="zero-pad to twice the size")
    g.add_argument("--band-limit", action="store_true", default=None)
    g.add_argument("--aperture", type=float, help="4f aperture size as a fraction of N (default 1/8)")
    g.add_argument("--aperture-shape", choices=APERTURE_SHAPES)
    e = p.add_argument_group("encoding")
    e.add_argument("--kernel", choices=sorted(KERNELS) + sorted(KERNEL_ALIASES))
    e.add_argument("--cancel", choices=CANCEL_KINDS)
    e.add_argument("--seed", type=_u64, help="seed of the random canceling wave")
    e.add_argument("--dither-norm", choices=DITHER_NORMS)
    i = p.add_argument_group("inputs and outputs")
    i.add_argument("--amp", help="amplitude image: path, standard name or 'synthetic'")
    i.add_argument("--phase", help="phase image: path, standard name or 'synthetic'")
    i.add_argument("--images", dest="image_dir", help="directory holding the standard test images")
    i.add_argument("--waist", type=float, help="Hermite-Gaussian waist [m] (fig7)")
    i.add_argument("--out", type=Path, default=Path("out"))


_CONFIG_KEYS = (
    "width", "height", "pitch", "wavelength", "distance", "propagation", "pad", "band_limit",
    "aperture", "aperture_shape", "kernel", "cancel", "seed", "dither_norm", "amp", "phase",
    "image_dir", "waist",
)


def _overrides(args) -> dict:
    d = {k: getattr(args, k, None) for k in _CONFIG_KEYS}
    if d["kernel"] is not None:
        d["kernel"] = KERNEL_ALIASES.get(d["kernel"], d["kernel"])
    if d["width"] is not None and d["height"] is None:
        d["height"] = d["width"]
    return {k: v for k, v in d.items() if v is not None}


def _config(args) -> RunConfig:
    return RunConfig(**_overrides(args)).validate()


def _object(cfg: RunConfig) -> Field:
    if cfg.amp is None or cfg.phase is None:
        raise SystemExit("error: --amp and --phase are required")
    return object_field(cfg)


def cmd_encode(args):
    cfg = _config(args)
    holo_field = propagate(_object(cfg), cfg.prop)
    out = args.out
    files = []
    if args.method == "proposed":
        holo, mask = encode_proposed(holo_field, cfg.kernel, cfg.cancel_spec(), cfg.dither_norm)
        files.append(mask.to_image().write(out / "encode_proposed_mask.png"))
    elif args.method == "dph":
        holo = encode_dph(holo_field)
    else:
        holo = encode_naive(holo_field)
    files.append(holo.to_image().write(out / f"encode_{args.method}_hologram.png"))
    for f in files:
        print(f)


def read_hologram(path, cfg: RunConfig) -> PhaseHologram:
    """Load an 8- or 16-bit phase PNG written by ``encode``."""
    with Image.open(path) as im:
        px = np.asarray(im)
    if px.ndim != 2:
        raise SystemExit(f"error: hologram {path} must be single channel")
    full = 65535.0 if px.dtype == np.uint16 or px.max() > 255 else 255.0
    grid = cfg.grid.with_size(px.shape[1], px.shape[0])
    return PhaseHologram(grid, TWO_PI * px.astype(np.float64) / full)


def cmd_reconstruct(args):
    cfg = _config(args)
    holo = read_hologram(args.hologram, cfg)
    recon = reconstruct(holo, cfg.prop, cfg.aperture_spec)
    amp_img, phase_img = field_to_images(recon)
    print(amp_img.write(args.out / "reconstruct_amp.png"))
    print(phase_img.write(args.out / "reconstruct_phase.png"))
    if cfg.amp is not None and cfg.phase is not None:
        ref = _object(replace(cfg, width=holo.grid.width, height=holo.grid.height))
        summary = {
            "amp_psnr_db": amplitude_psnr(recon, ref.amplitude),
            "phase_psnr_db": phase_psnr(recon, np.angle(ref.data)),
            "energy": recon.energy,
            "config": cfg.as_dict(),
        }
        path = args.out / "reconstruct.json"
        path.write_text(json.dumps(summary, sort_keys=True, indent=2) + "\n")
        print(path)


def _print_reports(reports):
    for r in reports:
        print(f"{r.method:24s} amp {r.amp_psnr_db:7.2f} dB  phase {r.phase_psnr_db:7.2f} dB  eta {r.eta:.3f}")


def cmd_scenario(args):
    cfg = scenario_config(args.name, **_overrides(args))
    reports = run_scenario(args.name, cfg, out=args.out)
    _print_reports(reports)
    print(args.out / "report.json")


def cmd_sweep(args):
    values = [int(v) if args.axis == "size" else float(v) for v in args.values]
    check_sweep(args.axis, values)
    cfg = scenario_config(args.scenario, **_overrides(args))
    header, rows = run_sweep(args.axis, values, cfg, out=args.out, scenario=args.scenario)
    print(",".join(header))
    for row in rows:
        print(",".join(str(c) for c in row))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="binholo", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="object images -> phase-only hologram")
    p.add_argument("--method", choices=ENCODERS, default="proposed")
    _common(p)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("reconstruct", help="phase hologram PNG -> object-plane amplitude/phase")
    p.add_argument("--hologram", type=Path, required=True)
    _common(p)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("scenario", help="run a named experiment")
    p.add_argument("name", choices=SCENARIOS)
    _common(p)
    p.set_defaults(func=cmd_scenario)

    p = sub.add_parser("sweep", help="proposed vs DPH over hologram size or distance")
    p.add_argument("--axis", choices=SWEEP_AXES, required=True)
    p.add_argument("--values", nargs="+", required=True)
    p.add_argument("--scenario", choices=SCENARIOS, default="fig3")
    _common(p)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
