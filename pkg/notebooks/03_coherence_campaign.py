"""A twelve-hour interleaved coherence campaign through reference and mux paths.

The mux path adds thermal photons to the readout resonator.  Both paths
share slow drift, so the Welch test on the dephasing rate isolates the
added dephasing, which is then converted to an added photon number.
"""

import numpy as np

from cryomux.campaign import CampaignConfig, added_dephasing_report, compare_paths, run_coherence_campaign
from cryomux.device import table_qubit
from cryomux.stats import box_summary

qubit = table_qubit(2)
cfg = CampaignConfig(qubit=qubit, n_add=0.022)
ref, mux = run_coherence_campaign(cfg, seed=2024)
print(f"{len(ref)} repetitions per path, fingerprint {ref.config_fingerprint}")

for name in ("t1", "t2e", "gamma_phi"):
    for r in (ref, mux):
        b = box_summary(getattr(r, name))
        print(f"{name:9s} {r.path:9s} median {b.median:.4e}  IQR {b.iqr:.3e}  outliers {len(b.outliers)}")

print()
for name, w in compare_paths(ref, mux).items():
    print(f"Welch {name:9s} t = {w.t_stat:8.2f}  dof = {w.dof:6.1f}  p = {w.p_two_sided:.2e}")

report = added_dephasing_report(ref, mux, qubit)
print(f"\nadded dephasing {report.gamma_add:.0f} +/- {report.gamma_add_se:.0f} 1/s")
print(f"added photons   {report.n_add:.4f} +/- {report.n_add_se:.4f} (configured 0.022)")
print(f"median shift    {np.median(mux.gamma_phi) - np.median(ref.gamma_phi):.0f} 1/s")
