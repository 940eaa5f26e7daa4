"""Multiplexer power, heating and RF figures of merit.

Tabulates static and switching power against supply voltage, the Joule
heat of a flux-bias current through the on-resistance, the resulting
mixing-chamber temperature rise and T1 penalty, and the bundled
insertion-loss and isolation spectra.
"""

import numpy as np

from cryomux.mux import (
    MuxModel,
    dynamic_energy_per_event,
    insertion_loss,
    isolation,
    joule_power,
    mxc_heating,
    r_on,
    static_power,
    t1_factor,
)

mux = MuxModel()

print("Vdd [V]   static [pW]   E_switch [fJ]   R_on [ohm]")
for v in (0.45, 0.50, 0.55, 0.60, 0.70):
    try:
        e = f"{dynamic_energy_per_event(mux, v) * 1e15:13.1f}"
        r = f"{r_on(mux, v):10.2f}"
    except ValueError:
        e, r = f"{'off':>13}", f"{'off':>10}"
    print(f"{v:7.2f}   {static_power(mux, v) * 1e12:11.3f}   {e}   {r}")

print("\nI_bias [mA]   P_joule [uW]   dT_mxc [mK]   T1 factor")
for i in (0.05e-3, 0.10e-3, 0.23e-3, 0.40e-3):
    p = joule_power(mux, i, 0.55)
    dt = mxc_heating(mux, p)
    print(f"{i * 1e3:11.2f}   {p * 1e6:12.4f}   {dt * 1e3:11.3f}   {t1_factor(mux, dt):9.3f}")

freqs = np.linspace(1e9, 8e9, 8)
print("\nf [GHz]   IL [dB]   isolation [dB]")
for f, il, iso in zip(freqs, insertion_loss(mux, freqs), isolation(mux, freqs)):
    print(f"{f / 1e9:7.1f}   {il:7.2f}   {iso:14.1f}")
