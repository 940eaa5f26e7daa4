"""How many multiplexers fit in a dilution refrigerator's cooling budget.

Starts from static power alone, then adds switching activity and the
Joule heat of flux-bias currents, and finally looks at switches with more
throws per common port.
"""

from dataclasses import replace

from cryomux.device import mutual_from_bias, flux_to_current_noise
from cryomux.planner import BudgetConfig, budget_report, max_multiplexers, port_scaling_power

base = BudgetConfig(cooling_power=20e-6, per_mux_static=200e-12, ports_per_mux=4)
n_mux, n_dev = max_multiplexers(base)
print(f"static only: {n_mux} muxes, {n_dev} devices")

for label, cfg in (
    ("1 kHz switching", replace(base, switching_rate=1e3)),
    ("10 % margin", replace(base, margin=0.10)),
    ("switching + margin", replace(base, switching_rate=1e3, margin=0.10)),
):
    r = budget_report(cfg)
    print(f"{label:20s}: {r.mux_count:7d} muxes, {r.addressable_devices:7d} devices, headroom {r.headroom:.2e} W")

print("\nthrows   static per switch [pW]")
for n in (2, 4, 8, 16):
    print(f"{n:6d}   {port_scaling_power(200e-12, n) * 1e12:9.1f}")

cal = mutual_from_bias(0.23e-3, 0.2)
print(f"\nflux line: M = {cal.mutual_m * 1e12:.2f} pH, "
      f"current noise {flux_to_current_noise((15e-9) ** 2, cal):.2e} A^2/Hz")
