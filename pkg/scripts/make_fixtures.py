"""Regenerate the bundled test fixtures.

* ``synthetic_sweep.csv``: flux sweep through the multiplexer with
  √A = 2.8 μΦ0 and √B = 15 nΦ0/√Hz, fit noise σ = 0.02, sweet-spot repeats
  first, then 21 biases over [-0.2, 0.2] Φ0.
* ``qubit2_reference.csv`` / ``qubit2_mux.csv``: 12 h interleaved campaign of
  table qubit 2 with 0.022 photons added by the multiplexer.

Run from the repository root::

    python3 scripts/make_fixtures.py
"""

from dataclasses import replace
from pathlib import Path

import numpy as np

from cryomux import export
from cryomux.campaign import CampaignConfig, FluxSweepConfig, run_coherence_campaign, run_flux_sweep
from cryomux.device import table_qubit

DATA = Path(__file__).resolve().parents[1] / "src" / "cryomux" / "data"
SEED = 20240101


def main():
    sweep_cfg = replace(FluxSweepConfig(), noise_sigma=0.02)
    sweep = run_flux_sweep(sweep_cfg, np.linspace(-0.2, 0.2, 21), seed=SEED)
    rows = export.sweep_rows(sweep, include_sweet_spot=True)
    export.write_table(DATA / "synthetic_sweep", rows, export.SWEEP_COLUMNS)

    cfg = CampaignConfig(qubit=table_qubit(2), n_add=0.022)
    ref, mux = run_coherence_campaign(cfg, seed=SEED)
    export.write_table(DATA / "qubit2_reference", export.campaign_rows(ref), export.CAMPAIGN_COLUMNS)
    export.write_table(DATA / "qubit2_mux", export.campaign_rows(mux), export.CAMPAIGN_COLUMNS)
    print(f"fixtures written to {DATA}")


if __name__ == "__main__":
    main()
