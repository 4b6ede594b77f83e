"""End-to-end experiment runs: named scenarios and parameter sweeps."""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, replace
from pathlib import Path

import numpy as np

from .beams import BeamSpec, hermite_gaussian
from .binarize import get_kernel
from .core import Field, GridSpec, field_from_images, field_to_images, write_png16
from .encoding import DITHER_NORMS, CancelSpec, encode_dph, encode_naive, encode_proposed
from .images import SYNTHETIC, load_image, synthetic_pair
from .metrics import (
    ScenarioReport,
    amplitude_psnr,
    append_csv,
    light_efficiency,
    phase_psnr,
    write_reports_json,
)
from .propagation import ApertureSpec, PropagationSpec, propagate
from .reconstruct import reconstruct

log = logging.getLogger(__name__)

SCENARIOS = ("fig1", "fig3", "fig4", "fig7")
SWEEP_AXES = ("size", "distance")

_DEFAULT_INPUTS = {
    "fig1": ("mandrill", "pepper"),
    "fig3": ("mandrill", "pepper"),
    "fig4": ("cameraman", "house"),
}


@dataclass(frozen=True)
class RunConfig:
    """Every knob of a run. Reports echo this in full."""

    width: int = 1024
    height: int = 1024
    pitch: float = 8e-6
    wavelength: float = 532e-9
    distance: float = 0.2
    propagation: str = "angular_spectrum"
    pad: bool = False
    band_limit: bool = False
    kernel: str = "floyd_steinberg"
    dither_norm: str = "max"
    cancel: str = "alternate"
    seed: int | None = None
    aperture: float = 1.0 / 8.0
    aperture_shape: str = "circle"
    amp: str | None = None
    phase: str | None = None
    image_dir: str | None = None
    waist: float | None = None
    mode_m: int = 9
    mode_n: int = 7

    @property
    def grid(self) -> GridSpec:
        return GridSpec(self.width, self.height, self.pitch, self.wavelength)

    @property
    def prop(self) -> PropagationSpec:
        return PropagationSpec(
            self.distance, self.propagation, self.band_limit, "double" if self.pad else "none"
        )

    @property
    def aperture_spec(self) -> ApertureSpec:
        return ApertureSpec(self.aperture, self.aperture_shape)

    def cancel_spec(self, kind: str | None = None) -> CancelSpec:
        kind = kind or self.cancel
        if kind == "random":
            return CancelSpec("random", 0 if self.seed is None else self.seed)
        return CancelSpec(kind)

    def as_dict(self) -> dict:
        return asdict(self)

    def validate(self):
        self.grid
        self.prop
        self.aperture_spec
        self.cancel_spec()
        get_kernel(self.kernel)
        if self.dither_norm not in DITHER_NORMS:
            raise ValueError(f"dither_norm must be one of {DITHER_NORMS}, got {self.dither_norm!r}")
        return self


def scenario_config(name: str, **overrides) -> RunConfig:
    """Defaults for a named scenario, with ``overrides`` applied on top."""
    if name not in SCENARIOS:
        raise ValueError(f"unknown scenario {name!r}; choose from {SCENARIOS}")
    base = {}
    if name in _DEFAULT_INPUTS:
        base["amp"], base["phase"] = _DEFAULT_INPUTS[name]
    else:
        base["distance"] = 0.05
    base.update({k: v for k, v in overrides.items() if v is not None})
    return RunConfig(**base).validate()


def object_field(cfg: RunConfig) -> Field:
    grid = cfg.grid
    if cfg.amp is None and cfg.phase is None:
        raise ValueError("no object: give amplitude and phase images (or 'synthetic')")
    if SYNTHETIC in (cfg.amp, cfg.phase):
        syn_amp, syn_phase = synthetic_pair(grid.width, grid.height)
    amp = syn_amp if cfg.amp == SYNTHETIC else load_image(cfg.amp, grid.width, grid.height, cfg.image_dir)
    phase = (
        syn_phase if cfg.phase == SYNTHETIC
        else load_image(cfg.phase, grid.width, grid.height, cfg.image_dir)
    )
    return field_from_images(amp, phase, grid)


def beam_field(cfg: RunConfig) -> Field:
    return hermite_gaussian(cfg.grid, BeamSpec(cfg.mode_m, cfg.mode_n, cfg.waist))


def _save_outputs(out, stem, recon, hologram=None, mask=None, hologram16=False) -> dict:
    if out is None:
        return {}
    out = Path(out)
    amp_img, phase_img = field_to_images(recon)
    files = {
        "amp": amp_img.write(out / f"{stem}_amp.png"),
        "phase": phase_img.write(out / f"{stem}_phase.png"),
    }
    if hologram is not None:
        files["hologram"] = hologram.to_image().write(out / f"{stem}_hologram.png")
        if hologram16:
            files["hologram16"] = write_png16(hologram.to_image16(), out / f"{stem}_hologram16.png")
    if mask is not None:
        files["mask"] = mask.to_image().write(out / f"{stem}_mask.png")
    return {k: v.name for k, v in sorted(files.items())}


def evaluate(cfg: RunConfig, target: Field, methods, scenario: str = "run", out=None):
    """Encode ``target`` with each method, read it back, and score it.

    ``methods`` holds labels ``proposed[-<cancel>]``, ``dph``, ``naive`` or
    ``complex``. The DPH read-out is always computed since it is the
    light-efficiency reference.
    """
    prop, aperture = cfg.prop, cfg.aperture_spec
    holo_field = propagate(target, prop)
    ref_amp, ref_phase = target.amplitude, np.angle(target.data)

    dph_holo = encode_dph(holo_field)
    dph_recon = reconstruct(dph_holo, prop, aperture)
    reports = []
    for label in methods:
        seed = None
        mask = None
        if label.startswith("proposed"):
            kind = label.partition("-")[2] or cfg.cancel
            cancel = cfg.cancel_spec(kind)
            seed = cancel.seed
            holo, mask = encode_proposed(holo_field, cfg.kernel, cancel, cfg.dither_norm)
            recon = reconstruct(holo, prop, aperture)
        elif label == "dph":
            holo, recon = dph_holo, dph_recon
        elif label == "naive":
            holo = encode_naive(holo_field)
            recon = reconstruct(holo, prop, aperture)
        elif label == "complex":
            holo = None
            recon = reconstruct(holo_field, prop, aperture)
        else:
            raise ValueError(f"unknown method {label!r}")
        config = {**cfg.as_dict(), "scenario": scenario}
        if label.startswith("proposed"):
            config["cancel"] = kind
        report = ScenarioReport(
            method=label,
            amp_psnr_db=amplitude_psnr(recon, ref_amp),
            phase_psnr_db=phase_psnr(recon, ref_phase),
            eta=light_efficiency(recon, dph_recon),
            seed=seed,
            config=config,
            images=_save_outputs(out, f"{scenario}_{label}", recon, holo, mask),
        )
        log.info("%s %s: amp %.2f dB, phase %.2f dB, eta %.3f", scenario, label,
                 report.amp_psnr_db, report.phase_psnr_db, report.eta)
        reports.append(report)
    return reports


def _methods(name: str):
    if name == "fig1":
        return ["proposed-checkerboard", "proposed-random", "proposed-alternate"]
    if name == "fig7":
        return ["naive", "complex", "dph", "proposed"]
    return ["proposed", "dph"]


def run_scenario(name: str, config: RunConfig | None = None, out=None, **overrides):
    """Run a named scenario and, when ``out`` is given, write images and ``report.json``."""
    cfg = config.validate() if config is not None else scenario_config(name, **overrides)
    target = beam_field(cfg) if name == "fig7" else object_field(cfg)
    reports = evaluate(cfg, target, _methods(name), scenario=name, out=out)
    if out is not None:
        write_reports_json(reports, Path(out) / "report.json", scenario=name)
    return reports


def check_sweep(axis: str, values):
    if axis not in SWEEP_AXES:
        raise ValueError(f"sweep axis must be one of {SWEEP_AXES}, got {axis!r}")
    if not values:
        raise ValueError("sweep needs at least one value")
    for v in values:
        if axis == "size" and (int(v) != v or v < 128 or v % 2):
            raise ValueError(f"sweep size must be an even integer >= 128, got {v!r}")
        if axis == "distance" and not v > 0:
            raise ValueError(f"sweep distance must be > 0, got {v!r}")


def run_sweep(axis: str, values, config: RunConfig | None = None, out=None, scenario: str = "fig3"):
    """Re-run ``scenario`` (proposed and DPH) at each value of ``axis``.

    Returns ``(header, rows)``; with ``out`` the rows are appended to
    ``sweep.csv``.
    """
    check_sweep(axis, values)
    base = config if config is not None else scenario_config(scenario)
    header = ScenarioReport.csv_header(("axis", "value"))
    rows = []
    for v in values:
        if axis == "size":
            cfg = replace(base, width=int(v), height=int(v)).validate()
        else:
            cfg = replace(base, distance=float(v)).validate()
        target = beam_field(cfg) if scenario == "fig7" else object_field(cfg)
        for report in evaluate(cfg, target, ["proposed", "dph"], scenario=scenario):
            rows.append(report.csv_row((axis, v)))
    if out is not None:
        append_csv(Path(out) / "sweep.csv", header, rows)
    return header, rows
