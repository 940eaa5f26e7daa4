"""Tabular and JSON export of campaign, sweep and RF results.

CSV files follow RFC 4180 (comma separated, CRLF line ends, minimal
quoting) and write floats with ``repr`` so a reload is bit-exact and two
runs with the same seed produce byte-identical files.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
from pathlib import Path

import numpy as np

from .campaign import CampaignResult

__all__ = [
    "SchemaMismatchError",
    "CAMPAIGN_COLUMNS",
    "SWEEP_COLUMNS",
    "NOISE_TABLE_COLUMNS",
    "RF_COLUMNS",
    "campaign_rows",
    "sweep_rows",
    "write_table",
    "write_json",
    "dumps_json",
    "read_campaign_csv",
    "read_noise_table",
    "sha256_file",
    "clean_json",
]

CAMPAIGN_COLUMNS = ("repetition", "timestamp_s", "path", "t1_s", "t2e_s", "gamma_phi_hz", "tphi_s")
SWEEP_COLUMNS = (
    "phi_e",
    "dispersion_hz_per_phi0",
    "t1_s",
    "t2e_s",
    "gamma_phi_e_hz",
    "gamma_phi_e_err_hz",
)
NOISE_TABLE_COLUMNS = ("dispersion_hz_per_phi0", "gamma_phi_e_hz")
RF_COLUMNS = ("freq_hz", "insertion_loss_db", "isolation_db")


class SchemaMismatchError(ValueError):
    """A table lacks required columns or two tables disagree on layout."""


def clean_json(obj):
    """Recursively convert numpy scalars/arrays and non-finite floats for JSON."""
    if isinstance(obj, dict):
        return {str(k): clean_json(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [clean_json(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return clean_json(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else None
    return obj


def dumps_json(obj):
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(clean_json(obj), sort_keys=True, indent=2, allow_nan=False) + "\n"


def write_json(path, obj):
    path = Path(path)
    path.write_text(dumps_json(obj))
    return path


def _cell(v):
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, (np.integer,)):
        return str(int(v))
    return v


def write_table(path, rows, columns, fmt="csv"):
    """Write ``rows`` (dicts keyed by ``columns``) as CSV or a JSON record list.

    Returns the written path; the suffix is set from ``fmt``.
    """
    path = Path(path).with_suffix("." + fmt)
    if fmt == "csv":
        with open(path, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=list(columns), lineterminator="\r\n")
            writer.writeheader()
            for row in rows:
                writer.writerow({k: _cell(row[k]) for k in columns})
    elif fmt == "json":
        write_json(path, [{k: row[k] for k in columns} for row in rows])
    else:
        raise ValueError(f"unknown format {fmt!r}")
    return path


def campaign_rows(result):
    """One dict per repetition of a :class:`CampaignResult`."""
    return [
        {
            "repetition": k,
            "timestamp_s": float(result.timestamps[k]),
            "path": result.path,
            "t1_s": float(result.t1[k]),
            "t2e_s": float(result.t2e[k]),
            "gamma_phi_hz": float(result.gamma_phi[k]),
            "tphi_s": float(result.tphi[k]),
        }
        for k in range(len(result))
    ]


def sweep_rows(sweep, include_sweet_spot=False):
    """One dict per flux point.

    With ``include_sweet_spot`` the dedicated zero-flux repeats come first,
    so the table alone carries its sweet-spot reference rate.
    """
    head = []
    if include_sweet_spot and sweep.sweet_spot_t1 is not None:
        spread = sweep.gamma_phi_ss_err * math.sqrt(sweep.sweet_spot_t1.size)
        head = [
            {
                "phi_e": 0.0,
                "dispersion_hz_per_phi0": 0.0,
                "t1_s": float(t1),
                "t2e_s": float(t2e),
                "gamma_phi_e_hz": float(1.0 / t2e - 0.5 / t1),
                "gamma_phi_e_err_hz": float(spread),
            }
            for t1, t2e in zip(sweep.sweet_spot_t1, sweep.sweet_spot_t2e)
        ]
    return head + [
        {
            "phi_e": float(sweep.phi_e[k]),
            "dispersion_hz_per_phi0": float(sweep.dispersion[k]),
            "t1_s": float(sweep.t1[k]),
            "t2e_s": float(sweep.t2e[k]),
            "gamma_phi_e_hz": float(sweep.gamma_phi[k]),
            "gamma_phi_e_err_hz": float(sweep.gamma_phi_err[k]),
        }
        for k in range(sweep.phi_e.size)
    ]


def _read_rows(path, required):
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = tuple(reader.fieldnames or ())
        missing = [c for c in required if c not in header]
        if missing:
            raise SchemaMismatchError(f"{path}: missing column(s) {', '.join(missing)}")
        rows = list(reader)
    return header, rows


def _float_col(rows, name, path):
    try:
        return np.array([float(r[name]) for r in rows])
    except (TypeError, ValueError) as exc:
        raise SchemaMismatchError(f"{path}: column {name} is not numeric ({exc})") from None


def read_campaign_csv(path):
    """Load a campaign CSV written by :func:`write_table`.

    The stored ``gamma_phi_hz`` and ``tphi_s`` are used as written.

    Returns
    -------
    (result, header) : (CampaignResult, tuple of str)
    """
    header, rows = _read_rows(path, CAMPAIGN_COLUMNS)
    paths = {r["path"] for r in rows}
    return CampaignResult(
        path=paths.pop() if len(paths) == 1 else "mixed",
        timestamps=_float_col(rows, "timestamp_s", path),
        t1=_float_col(rows, "t1_s", path),
        t2e=_float_col(rows, "t2e_s", path),
        gamma_phi=_float_col(rows, "gamma_phi_hz", path),
        tphi=_float_col(rows, "tphi_s", path),
        config_fingerprint="",
        label=Path(path).stem,
    ), header


def read_noise_table(path):
    """``(dispersion_hz_per_phi0, gamma_phi_e_hz)`` arrays from a CSV table."""
    _, rows = _read_rows(path, NOISE_TABLE_COLUMNS)
    return (
        _float_col(rows, "dispersion_hz_per_phi0", path),
        _float_col(rows, "gamma_phi_e_hz", path),
    )


def sha256_file(path):
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()
