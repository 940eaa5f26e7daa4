"""Echo dephasing from flux noise and photon shot noise.

Walks from the flux-noise spectrum to the echo decay exponent, checks the
closed form against direct quadrature, and backs out photon numbers from
added dephasing rates of three reference qubits.
"""

from cryomux.device import phase_dispersion, table_qubit
from cryomux.noise import (
    DephasingContext,
    NoiseParams,
    added_photons,
    chi_closed,
    chi_numeric,
    dephasing_rate_echo,
    photon_shot_dephasing,
)

noise = NoiseParams.from_sqrt(2.8e-6, 15e-9)
print(f"A_flux = {noise.a_flux:.3e} Phi0^2, B_flux = {noise.b_flux:.3e} Phi0^2/Hz")

# 1 GHz/Phi0 frequency slope, probed at a few echo delays
d = abs(phase_dispersion(1e9))
print("\ntau [us]   chi closed     chi numeric    rel diff")
for tau in (1e-6, 10e-6, 50e-6):
    ctx = DephasingContext(d, tau)
    c, n = chi_closed(noise, ctx), chi_numeric(noise, ctx)
    print(f"{tau * 1e6:7.1f}   {c:.6e}   {n:.6e}   {abs(n / c - 1):.1e}")

print("\nslope [GHz/Phi0]   Gamma_phi_e [1/s]")
for slope in (0.25, 0.5, 1.0, 2.0):
    print(f"{slope:16.2f}   {dephasing_rate_echo(noise, abs(phase_dispersion(slope * 1e9))):.4e}")

print("\nphoton shot noise")
for n, gamma in ((1, 2.3e3), (2, 5.6e3), (3, 2.4e3)):
    q = table_qubit(n)
    n_add = added_photons(gamma, q.kappa, q.chi)
    n_th = added_photons(1 / q.tphi, q.kappa, q.chi)
    check = photon_shot_dephasing(n_add, q.kappa, q.chi)
    print(f"qubit {n}: added {gamma:.1e} 1/s -> n_add {n_add:.4f}; 1/Tphi -> n_th {n_th:.4f} (round trip {check:.1f} 1/s)")
