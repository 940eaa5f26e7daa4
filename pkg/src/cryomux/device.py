"""Transmon device models: flux tuning, drive and Purcell coupling, flux-line calibration.

Flux is expressed in units of the flux quantum throughout; frequencies are
ordinary (Hz) unless a name says ``omega``.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from importlib import resources
from typing import Optional

import numpy as np

from .constants import PHI0, TWO_PI
from .noise import photon_shot_coefficient

__all__ = [
    "TransmonParams",
    "CouplingGeometry",
    "FluxLineCal",
    "qubit_freq_at_flux",
    "dispersion",
    "phase_dispersion",
    "drive_coupling",
    "purcell_rate",
    "coupling_for_purcell",
    "mutual_from_bias",
    "flux_for_current",
    "current_for_flux",
    "flux_to_current_noise",
    "load_qubit_table",
    "table_qubit",
    "REFERENCE_DEVICE",
    "DEFAULT_PURCELL_G_OVER_2PI",
]


@dataclass(frozen=True)
class TransmonParams:
    """Spectral and coherence parameters of a single transmon.

    Frequencies are ordinary frequencies [Hz]; ``kappa_over_2pi`` and
    ``chi_over_2pi`` are the resonator linewidth and (signed) dispersive shift
    divided by 2π.  ``tphi`` and ``n_th`` carry table means where known.
    """

    f_q: float
    f_r: float
    kappa_over_2pi: Optional[float] = None
    chi_over_2pi: Optional[float] = None
    t1: Optional[float] = None
    t2e: Optional[float] = None
    tphi: Optional[float] = None
    n_th: Optional[float] = None
    f_max: Optional[float] = None
    g_over_2pi: Optional[float] = None
    label: str = ""

    def __post_init__(self):
        for name in ("f_q", "f_r", "kappa_over_2pi", "t1", "t2e", "tphi", "f_max", "g_over_2pi"):
            value = getattr(self, name)
            if value is not None and not value > 0:
                raise ValueError(f"{name} must be positive, got {value}")
        if self.n_th is not None and self.n_th < 0:
            raise ValueError("n_th must be nonnegative")
        if (
            self.chi_over_2pi is not None
            and self.kappa_over_2pi is not None
            and abs(self.chi_over_2pi) >= 100 * self.kappa_over_2pi
        ):
            raise ValueError("|chi| >= 100 kappa: implausible dispersive shift")

    @property
    def kappa(self):
        """Resonator linewidth [rad/s]."""
        return TWO_PI * self.kappa_over_2pi

    @property
    def chi(self):
        """Dispersive shift [rad/s]."""
        return TWO_PI * self.chi_over_2pi

    @property
    def has_readout_params(self):
        return self.kappa_over_2pi is not None and self.chi_over_2pi is not None

    def shot_noise_coefficient(self):
        """Dephasing rate per thermal photon [1/s]."""
        if not self.has_readout_params:
            raise ValueError(f"qubit {self.label!r} has no kappa/chi")
        return photon_shot_coefficient(self.kappa, self.chi)


@dataclass(frozen=True)
class CouplingGeometry:
    """Drive-line capacitive coupling: ``c_d`` and ``c_sigma`` [F], ``z_d`` [Ω]."""

    c_d: float
    c_sigma: float
    z_d: float = 50.0

    def __post_init__(self):
        if self.c_d < 0 or not (self.c_sigma > 0 and self.z_d > 0):
            raise ValueError("coupling geometry values must be positive")
        if self.c_d >= self.c_sigma:
            raise ValueError("c_d must be smaller than c_sigma")


@dataclass(frozen=True)
class FluxLineCal:
    """Mutual inductance between flux line and SQUID loop [H]."""

    mutual_m: float

    def __post_init__(self):
        if not self.mutual_m > 0:
            raise ValueError("mutual inductance must be positive")


# Typical parameters used for the drive/Purcell comparison.
REFERENCE_DEVICE = {
    "f_q": 3.5e9,
    "f_r": 7.0e9,
    "q_loaded": 5000.0,
    "c_d": 0.1e-15,
    "c_sigma": 105e-15,
    "z_d": 50.0,
}

# g/2π that reproduces γ_P = 2π·0.586 kHz with the parameters above.
DEFAULT_PURCELL_G_OVER_2PI = 71.6e6


def _squid_factor(phi_e, asymmetry):
    c = np.cos(np.pi * phi_e)
    s = np.sin(np.pi * phi_e)
    return c, s, np.sqrt(c**2 + asymmetry**2 * s**2)


def _check_singular(phi_e, asymmetry):
    if asymmetry == 0 and np.any(np.isclose(np.cos(np.pi * np.asarray(phi_e)), 0.0, atol=1e-12)):
        raise ValueError("phi_e = ±0.5 Φ0: symmetric SQUID frequency vanishes")


def qubit_freq_at_flux(f_max, phi_e, asymmetry=0.0):
    """Qubit frequency ``f_max·(cos²πΦ + d² sin²πΦ)^{1/4}``.

    With the default ``asymmetry = 0`` this is the symmetric-SQUID form
    ``f_max·√|cos(πΦ)|``; ``phi_e`` is in Φ0.
    """
    _check_singular(phi_e, asymmetry)
    _, _, r = _squid_factor(np.asarray(phi_e, dtype=float), asymmetry)
    out = f_max * np.sqrt(r)
    return out if out.ndim else float(out)


def dispersion(f_max, phi_e, asymmetry=0.0):
    """Flux dispersion ``∂f_q/∂Φ_e`` [Hz/Φ0] (analytic derivative)."""
    _check_singular(phi_e, asymmetry)
    c, s, r = _squid_factor(np.asarray(phi_e, dtype=float), asymmetry)
    out = -0.5 * np.pi * f_max * (1 - asymmetry**2) * s * c / r**1.5
    return out if out.ndim else float(out)


def phase_dispersion(df_dphi):
    """Convert ``∂f_q/∂Φ_e`` [Hz/Φ0] to ``D = ∂ω_q/∂φ`` [rad/s per rad], φ = πΦ_e/Φ0."""
    # ∂/∂φ = (1/π) ∂/∂Φ_e and ω = 2πf
    out = TWO_PI / np.pi * np.asarray(df_dphi, dtype=float)
    return out if out.ndim else float(out)


def drive_coupling(geom, omega_q):
    """Qubit decay rate into a capacitively coupled drive line ``(C_d²/C_Σ) Z_d ω_q²``."""
    return geom.c_d**2 / geom.c_sigma * geom.z_d * omega_q**2


def purcell_rate(g, kappa, delta):
    """Purcell decay ``g²κ/Δ²``; pass all three in the same (angular) units."""
    if delta == 0:
        raise ZeroDivisionError("qubit-resonator detuning must be nonzero")
    return g**2 * kappa / delta**2


def coupling_for_purcell(gamma_p, kappa, delta):
    """Inverse of :func:`purcell_rate`: the ``g`` giving decay ``gamma_p``."""
    return abs(delta) * math.sqrt(gamma_p / kappa)


def mutual_from_bias(i_bias, phi_e):
    """Calibrate the mutual inductance from a known bias point (``phi_e`` in Φ0)."""
    if i_bias == 0:
        raise ZeroDivisionError("bias current must be nonzero")
    return FluxLineCal(abs(phi_e * PHI0 / i_bias))


def flux_for_current(cal, i_bias):
    """Applied flux [Φ0] for a flux-line current [A]."""
    return cal.mutual_m * i_bias / PHI0


def current_for_flux(cal, phi_e):
    """Flux-line current [A] needed for ``phi_e`` [Φ0]."""
    return phi_e * PHI0 / cal.mutual_m


def flux_to_current_noise(b_flux, cal):
    """White flux noise [Φ0²/Hz] expressed as flux-line current noise [A²/Hz]."""
    return b_flux * (PHI0 / cal.mutual_m) ** 2


def _opt_float(text, scale=1.0):
    text = text.strip()
    return None if text in ("", "-") else float(text) * scale


def load_qubit_table(path=None):
    """Load the qubit parameter table.

    The bundled table lists 20 qubits with frequencies in GHz, κ/2π and χ/2π
    in MHz and mean times in μs; values are converted to SI on load.
    Returns a dict keyed by qubit number.
    """
    if path is None:
        handle = resources.files("cryomux").joinpath("data/qubits.csv").open("r", newline="")
    else:
        handle = open(path, newline="")
    table = {}
    with handle:
        for row in csv.DictReader(handle):
            n = int(row["qubit"])
            table[n] = TransmonParams(
                f_q=float(row["f_q_ghz"]) * 1e9,
                f_r=float(row["f_r_ghz"]) * 1e9,
                kappa_over_2pi=_opt_float(row["kappa_over_2pi_mhz"], 1e6),
                chi_over_2pi=_opt_float(row["chi_over_2pi_mhz"], 1e6),
                t1=_opt_float(row["t1_us"], 1e-6),
                t2e=_opt_float(row["t2e_us"], 1e-6),
                tphi=_opt_float(row["tphi_us"], 1e-6),
                n_th=_opt_float(row["n_th"]),
                label=f"qubit{n}",
            )
    return table


def table_qubit(n):
    """One row of the bundled qubit table."""
    table = load_qubit_table()
    try:
        return table[n]
    except KeyError:
        raise KeyError(f"qubit {n} not in table (1..{max(table)})") from None
