"""Reconstruction quality (PSNR) and light efficiency."""

from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, dataclass, field as dc_field
from pathlib import Path

import numpy as np

from .core import TWO_PI, Field, wrap_phase


def psnr(test, reference, peak: float = 1.0) -> float:
    """``10*log10(peak**2 / MSE)`` in dB; ``math.inf`` for identical planes."""
    test = np.asarray(test, dtype=np.float64)
    reference = np.asarray(reference, dtype=np.float64)
    if test.shape != reference.shape:
        raise ValueError(f"shape mismatch: {test.shape} vs {reference.shape}")
    if not peak > 0:
        raise ValueError(f"peak must be > 0, got {peak!r}")
    mse = float(np.mean((test - reference) ** 2))
    if mse == 0:
        return math.inf
    return 10.0 * math.log10(peak**2 / mse)


def _max_normalized(a):
    a = np.asarray(a, dtype=np.float64)
    peak = a.max()
    if not peak > 0:
        raise ValueError("cannot max-normalize an all-zero amplitude")
    return a / peak


def amplitude_psnr(recon: Field, reference_amplitude) -> float:
    """PSNR of max-normalized amplitudes, peak 1."""
    return psnr(_max_normalized(recon.amplitude), _max_normalized(reference_amplitude))


def phase_psnr(recon: Field, reference_phase) -> float:
    """PSNR of phases scaled from [0, 2*pi) to [0, 1], peak 1, no piston removal."""
    return psnr(recon.phase / TWO_PI, wrap_phase(reference_phase) / TWO_PI)


def light_efficiency(proposed_obj: Field, dph_obj: Field) -> float:
    """Ratio of total reconstructed energy, ``sum|a_P|^2 / sum|a_D|^2``."""
    if proposed_obj.grid.shape != dph_obj.grid.shape:
        raise ValueError("fields must share a grid")
    denom = dph_obj.energy
    if denom == 0:
        raise ValueError("reference field carries no energy")
    return proposed_obj.energy / denom


def _json_float(v):
    if isinstance(v, float) and math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return v


@dataclass
class ScenarioReport:
    """Metrics for one encoding method plus the configuration that produced them."""

    method: str
    amp_psnr_db: float
    phase_psnr_db: float
    eta: float
    seed: int | None = None
    config: dict = dc_field(default_factory=dict)
    images: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if not self.eta > 0:
            raise ValueError(f"eta must be > 0, got {self.eta!r}")

    def to_dict(self) -> dict:
        d = asdict(self)
        return {k: _json_float(v) for k, v in d.items()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    @staticmethod
    def csv_header(extra=()) -> list[str]:
        return [*extra, "method", "amp_psnr_db", "phase_psnr_db", "eta", "seed"]

    def csv_row(self, extra=()) -> list:
        return [*extra, self.method, repr(self.amp_psnr_db), repr(self.phase_psnr_db),
                repr(self.eta), "" if self.seed is None else self.seed]


def write_reports_json(reports, path, **header) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = {**header, "reports": [r.to_dict() for r in reports]}
    path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    return path


def append_csv(path, header, rows) -> Path:
    """Append ``rows`` to a CSV file, writing ``header`` first if the file is new."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    new = not path.exists() or path.stat().st_size == 0
    with path.open("a", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        if new:
            writer.writerow(header)
        writer.writerows(rows)
    return path
