import csv
import json
import math

import numpy as np
import pytest

from cryomux import export
from cryomux.campaign import CampaignConfig, FluxSweepConfig, run_coherence_campaign, run_flux_sweep
from cryomux.device import table_qubit


@pytest.fixture(scope="module")
def campaign():
    cfg = CampaignConfig(qubit=table_qubit(2), n_add=0.022, duration=3 * 3600.0)
    return run_coherence_campaign(cfg, seed=4)


def test_csv_round_trip_is_exact(tmp_path, campaign):
    ref, _ = campaign
    path = export.write_table(tmp_path / "ref", export.campaign_rows(ref), export.CAMPAIGN_COLUMNS)
    assert path.suffix == ".csv"
    back, header = export.read_campaign_csv(path)
    assert header == export.CAMPAIGN_COLUMNS
    assert back.path == "reference"
    for name in ("timestamps", "t1", "t2e", "gamma_phi", "tphi"):
        assert np.array_equal(getattr(back, name), getattr(ref, name))


def test_csv_is_rfc4180(tmp_path, campaign):
    path = export.write_table(tmp_path / "t", export.campaign_rows(campaign[0]), export.CAMPAIGN_COLUMNS)
    raw = path.read_bytes()
    lines = raw.split(b"\r\n")
    assert lines[-1] == b""
    assert b"\n" not in b"".join(lines)
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh, strict=True))
    assert all(len(r) == len(export.CAMPAIGN_COLUMNS) for r in rows)


def test_json_table(tmp_path, campaign):
    path = export.write_table(tmp_path / "t", export.campaign_rows(campaign[1]), export.CAMPAIGN_COLUMNS, "json")
    records = json.loads(path.read_text())
    assert records[0]["path"] == "mux"
    assert set(records[0]) == set(export.CAMPAIGN_COLUMNS)
    with pytest.raises(ValueError):
        export.write_table(tmp_path / "t", [], export.CAMPAIGN_COLUMNS, "xml")


def test_clean_json():
    text = export.dumps_json({"b": np.float64(math.inf), "a": np.arange(2), "c": np.bool_(True)})
    assert text.endswith("\n")
    assert json.loads(text) == {"a": [0, 1], "b": None, "c": True}
    assert text.index('"a"') < text.index('"b"')


def test_missing_column(tmp_path):
    p = tmp_path / "x.csv"
    p.write_text("repetition,t1_s\r\n0,1e-4\r\n")
    with pytest.raises(export.SchemaMismatchError):
        export.read_campaign_csv(p)


def test_non_numeric_column(tmp_path):
    p = tmp_path / "x.csv"
    p.write_text("dispersion_hz_per_phi0,gamma_phi_e_hz\r\n1e9,fast\r\n")
    with pytest.raises(export.SchemaMismatchError):
        export.read_noise_table(p)


def test_sweep_rows_with_sweet_spot(tmp_path):
    sweep = run_flux_sweep(FluxSweepConfig(), np.linspace(-0.2, 0.2, 5), seed=0)
    rows = export.sweep_rows(sweep, include_sweet_spot=True)
    assert len(rows) == 5 + sweep.sweet_spot_t1.size
    assert rows[0]["dispersion_hz_per_phi0"] == 0.0
    path = export.write_table(tmp_path / "s", rows, export.SWEEP_COLUMNS)
    df, gamma = export.read_noise_table(path)
    assert df.size == len(rows)


def test_sha256(tmp_path):
    p = tmp_path / "f"
    p.write_bytes(b"abc")
    assert export.sha256_file(p) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
