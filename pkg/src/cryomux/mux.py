"""Parametric model of the SP4T cryoCMOS multiplexer.

Covers port selection, static leakage, per-event switching energy, on-resistance
and Joule heating under a DC flux-bias current, tabulated RF spectra, and the
heating of the mixing chamber with its effect on qubit T1.

All defaults are anchored at the ``VDD = 0.55 V`` operating point: 200 pW of
static power, 0.715 pW/Hz/V² dynamic coefficient and 5.3 Ω on-resistance.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field, replace
from importlib import resources

import numpy as np

__all__ = [
    "MuxModel",
    "MuxState",
    "NotOperationalError",
    "SpectrumRangeError",
    "select_port",
    "static_power",
    "esd_power",
    "dynamic_energy_per_event",
    "dynamic_power",
    "r_on",
    "joule_power",
    "insertion_loss",
    "isolation",
    "mxc_heating",
    "t1_factor",
    "load_spectrum_csv",
    "switch_model_spectra",
    "ESD_POWER_CEILING",
]

#: Upper bound on ESD-cell static power; the cells themselves are modelled as 0 W.
ESD_POWER_CEILING = 100e-15


class NotOperationalError(ValueError):
    """Supply voltage too low for the requested quantity."""


class SpectrumRangeError(ValueError):
    """Frequency outside the span of a tabulated spectrum."""


def load_spectrum_csv(path):
    """Read a ``freq_hz,value_db`` table into a tuple of ``(Hz, dB)`` pairs."""
    with open(path, newline="") as fh:
        rows = [(float(r["freq_hz"]), float(r["value_db"])) for r in csv.DictReader(fh)]
    return _checked_table(rows, str(path))


def _bundled_table(name):
    with resources.files("cryomux").joinpath(f"data/{name}").open("r", newline="") as fh:
        rows = [(float(r["freq_hz"]), float(r["value_db"])) for r in csv.DictReader(fh)]
    return _checked_table(rows, name)


def _checked_table(rows, name):
    if len(rows) < 2:
        raise ValueError(f"{name}: a spectrum needs at least two points")
    freqs = [f for f, _ in rows]
    if any(b <= a for a, b in zip(freqs, freqs[1:])):
        raise ValueError(f"{name}: frequencies must be strictly increasing")
    return tuple(rows)


@dataclass(frozen=True)
class MuxModel:
    """Electrical and thermal parameters of the multiplexer.

    Attributes
    ----------
    v_on : float
        Supply voltage where the chip turns on [V].
    p_ref, v_ref : float
        Static power [W] at the reference supply [V]; the anchor point.
    v_slope : float
        Leakage growth above turn-on, volts per e-fold.
    v_subthreshold : float
        Roll-off below ``v_on`` (volts per e-fold) down to ``p_floor``.
        Zero gives a hard step to the floor.
    p_floor : float
        Static power reported below turn-on [W].
    c_eff_coeff : float
        Slope of dynamic power vs square-wave frequency per V² [W/(Hz·V²)].
    r_on_ref : float
        Series RF transistor on-resistance at ``v_ref`` [Ω].
    v_t_rf : float
        Effective threshold of the RF transistor in the overdrive model [V].
    il_table, iso_table : tuple of (float, float)
        Insertion loss and isolation spectra as ``(Hz, dB)`` knots.
    n_ports : int
    dt_dp : float
        Mixing-chamber temperature rise per dissipated watt [K/W].
    t1_drop_per_kelvin : float
        Fractional T1 loss per kelvin of heating in the linear degradation map.
    t1_floor : float
        Lower clamp of the T1 degradation factor.
    """

    v_on: float = 0.48
    p_ref: float = 200e-12
    v_ref: float = 0.55
    v_slope: float = 0.04
    v_subthreshold: float = 0.005
    p_floor: float = 1e-13
    c_eff_coeff: float = 0.715e-12
    r_on_ref: float = 5.3
    v_t_rf: float = 0.35
    il_table: tuple = field(default_factory=lambda: _bundled_table("insertion_loss.csv"))
    iso_table: tuple = field(default_factory=lambda: _bundled_table("isolation.csv"))
    n_ports: int = 4
    dt_dp: float = 5e-3 / 0.28e-6
    t1_drop_per_kelvin: float = 0.3 / 5e-3
    t1_floor: float = 0.1

    def __post_init__(self):
        if not self.v_on < self.v_ref:
            raise ValueError("v_on must be below v_ref")
        positive = ("p_ref", "v_ref", "v_slope", "p_floor", "c_eff_coeff", "r_on_ref", "dt_dp")
        for name in positive:
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.v_subthreshold < 0 or self.t1_drop_per_kelvin < 0:
            raise ValueError("v_subthreshold and t1_drop_per_kelvin must be nonnegative")
        if not self.v_t_rf < self.v_ref:
            raise ValueError("v_t_rf must be below v_ref")
        if not 0 < self.t1_floor <= 1:
            raise ValueError("t1_floor must lie in (0, 1]")
        if self.n_ports < 1:
            raise ValueError("n_ports must be at least 1")
        object.__setattr__(self, "il_table", _checked_table(tuple(map(tuple, self.il_table)), "il_table"))
        object.__setattr__(self, "iso_table", _checked_table(tuple(map(tuple, self.iso_table)), "iso_table"))

    def with_(self, **changes):
        return replace(self, **changes)


@dataclass(frozen=True)
class MuxState:
    """Supply voltage and the two digital select bits."""

    vdd: float
    d1: int = 0
    d0: int = 0

    def __post_init__(self):
        if self.d0 not in (0, 1) or self.d1 not in (0, 1):
            raise ValueError("control bits must be 0 or 1")

    @property
    def selected_port(self):
        return select_port(self.d1, self.d0)

    def routed_to(self, port):
        """State with the bits set to route the common port to ``port`` (1..4)."""
        if port not in (1, 2, 3, 4):
            raise ValueError("port must be 1..4")
        d1, d0 = divmod(port - 1, 2)
        return replace(self, d1=d1, d0=d0)


def select_port(d1, d0):
    """Output port for control bits (D1 D0); D0 is the least significant bit."""
    if d0 not in (0, 1) or d1 not in (0, 1):
        raise ValueError("control bits must be 0 or 1")
    return 2 * d1 + d0 + 1


def static_power(model, vdd):
    """Static dissipation [W] at supply ``vdd``.

    Exponential leakage through the RF gate oxides above turn-on, anchored
    exactly at ``(v_ref, p_ref)``.  Below ``v_on`` the curve rolls off with
    ``v_subthreshold`` and never drops under ``p_floor``.
    """
    vdd = np.asarray(vdd, dtype=float)
    if np.any(vdd < 0):
        raise ValueError("vdd must be nonnegative")
    above = model.p_ref * np.exp((vdd - model.v_ref) / model.v_slope)
    if model.v_subthreshold > 0:
        p_on = model.p_ref * math.exp((model.v_on - model.v_ref) / model.v_slope)
        with np.errstate(under="ignore"):
            below = p_on * np.exp((vdd - model.v_on) / model.v_subthreshold)
    else:
        below = np.zeros_like(vdd)
    out = np.maximum(np.where(vdd >= model.v_on, above, below), model.p_floor)
    return out if out.ndim else float(out)


def esd_power(model=None, vdd=None):
    """ESD protection cells: modelled as 0 W (bounded by :data:`ESD_POWER_CEILING`)."""
    return 0.0


def _require_on(model, vdd):
    if vdd < model.v_on:
        raise NotOperationalError(f"vdd = {vdd} V is below turn-on ({model.v_on} V)")


def dynamic_energy_per_event(model, vdd):
    """Energy dissipated per D0 toggle [J].

    The measured coefficient is the slope of power vs square-wave frequency;
    one period holds two switching events, hence the factor 1/2.
    """
    _require_on(model, vdd)
    return 0.5 * model.c_eff_coeff * vdd**2


def dynamic_power(model, vdd, square_wave_hz):
    """Average switching power [W] for a control square wave at ``square_wave_hz``."""
    return 2.0 * square_wave_hz * dynamic_energy_per_event(model, vdd)


def r_on(model, vdd):
    """On-resistance [Ω] from an overdrive model, exact at ``v_ref``."""
    if vdd <= model.v_t_rf:
        raise NotOperationalError(f"vdd = {vdd} V does not exceed v_t_rf = {model.v_t_rf} V")
    return model.r_on_ref * (model.v_ref - model.v_t_rf) / (vdd - model.v_t_rf)


def joule_power(model, i_dc, vdd):
    """Joule heating [W] of a DC current through the selected series transistor."""
    return i_dc**2 * r_on(model, vdd)


def _interp(table, freq, name):
    f = np.array([p[0] for p in table])
    v = np.array([p[1] for p in table])
    freq = np.asarray(freq, dtype=float)
    if np.any(freq < f[0]) or np.any(freq > f[-1]):
        raise SpectrumRangeError(
            f"{name}: frequency outside tabulated span [{f[0]:.4g}, {f[-1]:.4g}] Hz"
        )
    out = np.interp(freq, f, v)
    return out if out.ndim else float(out)


def insertion_loss(model, freq):
    """Insertion loss [dB, positive] at ``freq`` [Hz] by linear interpolation."""
    return _interp(model.il_table, freq, "insertion loss")


def isolation(model, freq):
    """Port-to-port isolation [dB, positive] at ``freq`` [Hz]."""
    return _interp(model.iso_table, freq, "isolation")


def mxc_heating(model, p_dissipated):
    """Mixing-chamber temperature rise [K] for dissipated power [W]."""
    if np.any(np.asarray(p_dissipated) < 0):
        raise ValueError("dissipated power must be nonnegative")
    return model.dt_dp * p_dissipated


def t1_factor(model, delta_t):
    """Multiplicative T1 degradation for a temperature rise ``delta_t`` [K].

    Empirical linear map ``1 - k·ΔT`` clamped to ``[t1_floor, 1]``; the default
    slope gives 0.7 at 5 mK.
    """
    out = np.clip(1.0 - model.t1_drop_per_kelvin * np.asarray(delta_t, dtype=float), model.t1_floor, 1.0)
    return out if out.ndim else float(out)


def _s21_series_shunt(z_series, y_shunt, z0):
    # ABCD of a series impedance followed by a shunt admittance
    a = 1 + z_series * y_shunt
    return 2 / (a + z_series / z0 + y_shunt * z0 + 1)


def switch_model_spectra(freqs, r_on_ohm=5.3, c_off=6e-15, c_shunt=20e-15, z0=50.0, excess_db=1.2):
    """First-order series/shunt switch model for synthetic spectra.

    On path: series ``r_on_ohm`` followed by the off-state shunt capacitance
    ``c_shunt``.  Off path: the series arm leaks through ``c_off`` and the
    conducting shunt (``r_on_ohm``) shorts the output.  ``excess_db`` adds a
    flat loss for packaging and bond wires.

    Returns
    -------
    (il_db, iso_db) : tuple of ndarray
        Positive dB values on ``freqs``.
    """
    w = 2 * np.pi * np.asarray(freqs, dtype=float)
    s21_on = _s21_series_shunt(r_on_ohm, 1j * w * c_shunt, z0)
    s21_off = _s21_series_shunt(1 / (1j * w * c_off), 1 / r_on_ohm, z0)
    return -20 * np.log10(np.abs(s21_on)) + excess_db, -20 * np.log10(np.abs(s21_off))
