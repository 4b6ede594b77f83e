import json
import math

import numpy as np
import pytest

from binholo import Field, GridSpec, ScenarioReport, amplitude_psnr, light_efficiency, phase_psnr, psnr
from binholo.metrics import append_csv, write_reports_json


def test_identical_is_inf():
    a = np.arange(12.0).reshape(3, 4)
    assert psnr(a, a) == math.inf


def test_closed_form_16_levels(rng):
    ref = rng.integers(0, 200, (32, 32)).astype(float)
    got = psnr(ref + 16, ref, peak=255)
    assert abs(got - 20 * math.log10(255 / 16)) <= 1e-9
    assert round(got, 2) == 24.05


def test_symmetric(rng):
    a, b = rng.random((8, 8)), rng.random((8, 8))
    assert psnr(a, b) == psnr(b, a)


def test_shift_invariant(rng):
    a, b = rng.random((8, 8)), rng.random((8, 8))
    assert psnr(a + 0.25, b + 0.25) == pytest.approx(psnr(a, b), abs=1e-12)


def test_shape_mismatch():
    with pytest.raises(ValueError, match="shape"):
        psnr(np.zeros((2, 2)), np.zeros((2, 3)))


def test_amplitude_psnr_is_scale_free(random_field):
    # a power-of-two gain survives the round trip bit-exactly
    scaled = random_field.replace(random_field.data * 8)
    assert amplitude_psnr(scaled, random_field.amplitude) == math.inf
    assert amplitude_psnr(random_field.replace(random_field.data * 7.5), random_field.amplitude) > 250


def test_phase_psnr_raw_comparison(small_grid):
    f = Field(small_grid, np.exp(1j * np.full(small_grid.shape, 0.5)))
    # piston of 0.1 rad -> error 0.1 / (2 pi) everywhere
    expected = 20 * math.log10(2 * math.pi / 0.1)
    assert phase_psnr(f, np.full(small_grid.shape, 0.6)) == pytest.approx(expected)


class TestLightEfficiency:
    def test_identity(self, random_field):
        assert light_efficiency(random_field, random_field) == 1.0

    def test_quadratic(self, random_field):
        double = random_field.replace(2 * random_field.data)
        assert light_efficiency(double, random_field) == pytest.approx(4.0, rel=1e-14)

    def test_reciprocity(self, rng, small_grid):
        for _ in range(20):
            a = Field(small_grid, rng.standard_normal(small_grid.shape))
            b = Field(small_grid, rng.standard_normal(small_grid.shape) * rng.random())
            assert abs(light_efficiency(a, b) * light_efficiency(b, a) - 1) <= 1e-12

    def test_zero_reference(self, random_field):
        zero = random_field.replace(np.zeros(random_field.grid.shape))
        with pytest.raises(ValueError):
            light_efficiency(random_field, zero)

    def test_grid_mismatch(self, random_field):
        other = Field(GridSpec(8, 8), np.ones((8, 8)))
        with pytest.raises(ValueError):
            light_efficiency(random_field, other)


class TestReport:
    def test_json_stable_and_inf(self):
        r = ScenarioReport("dph", math.inf, 11.0, 1.0, config={"z": 0.2, "a": 1})
        d = json.loads(r.to_json())
        assert d["amp_psnr_db"] == "inf"
        assert r.to_json() == r.to_json()
        assert list(d) == sorted(d)

    def test_eta_must_be_positive(self):
        with pytest.raises(ValueError):
            ScenarioReport("x", 1.0, 1.0, 0.0)

    def test_csv_append(self, tmp_path):
        rows = [ScenarioReport("dph", 20.0, 11.0, 1.0).csv_row(("size", 512))]
        p = tmp_path / "s.csv"
        append_csv(p, ScenarioReport.csv_header(("axis", "value")), rows)
        append_csv(p, ScenarioReport.csv_header(("axis", "value")), rows)
        lines = p.read_text().splitlines()
        assert lines[0] == "axis,value,method,amp_psnr_db,phase_psnr_db,eta,seed"
        assert len(lines) == 3

    def test_reports_json(self, tmp_path):
        p = write_reports_json([ScenarioReport("a", 1.0, 2.0, 3.0, seed=5)], tmp_path / "r.json", scenario="t")
        d = json.loads(p.read_text())
        assert d["scenario"] == "t" and d["reports"][0]["seed"] == 5
