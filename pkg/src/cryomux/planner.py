"""Cooling-power budgets for scaling multiplexed characterization.

Static leakage of one multiplexer sets how many fit under the mixing-chamber
cooling power; switching and DC flux-bias currents are opt-in extras.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Optional

from .mux import MuxModel, dynamic_energy_per_event, joule_power, static_power

__all__ = [
    "BudgetConfig",
    "BudgetReport",
    "UnboundedBudgetError",
    "max_multiplexers",
    "port_scaling_power",
    "per_mux_power",
    "budget_report",
    "SHUNT_TO_SERIES_LEAKAGE",
]

#: Shunt/series gate-area ratio (0.32 μm² / 1.28 μm²); leakage taken ∝ area.
SHUNT_TO_SERIES_LEAKAGE = 0.32 / 1.28


class UnboundedBudgetError(ZeroDivisionError):
    """Per-multiplexer power is zero, so any count fits."""


@dataclass(frozen=True)
class BudgetConfig:
    """Inputs of the scaling budget.

    ``per_mux_static`` of ``None`` means "take it from the mux model at
    ``vdd``".  ``switching_rate`` is the control square-wave frequency, so each
    multiplexer dissipates two switching events per period.  Flux-bias Joule
    heating is off unless ``flux_bias_current`` is nonzero.
    """

    cooling_power: float = 20e-6
    per_mux_static: Optional[float] = 200e-12
    ports_per_mux: int = 4
    switching_rate: float = 0.0
    flux_bias_current: float = 0.0
    margin: float = 0.0
    vdd: float = 0.55

    def __post_init__(self):
        if not 0 <= self.margin < 1:
            raise ValueError("margin must lie in [0, 1)")
        if self.cooling_power < 0 or self.switching_rate < 0:
            raise ValueError("powers and rates must be nonnegative")
        if self.per_mux_static is not None and self.per_mux_static < 0:
            raise ValueError("per_mux_static must be nonnegative")
        if self.ports_per_mux < 1:
            raise ValueError("ports_per_mux must be at least 1")

    @property
    def usable_power(self):
        return self.cooling_power * (1.0 - self.margin)


@dataclass(frozen=True)
class BudgetReport:
    mux_count: int
    max_mux_count: int
    addressable_devices: int
    static: float
    dynamic: float
    joule: float
    total: float
    budget: float
    headroom: float
    feasible: bool

    def as_dict(self):
        return asdict(self)


def per_mux_power(cfg, mux_model=None):
    """(static, dynamic, joule) dissipation of a single multiplexer [W]."""
    model = mux_model or MuxModel()
    static = cfg.per_mux_static if cfg.per_mux_static is not None else static_power(model, cfg.vdd)
    dynamic = 0.0
    if cfg.switching_rate:
        dynamic = 2.0 * cfg.switching_rate * dynamic_energy_per_event(model, cfg.vdd)
    joule = joule_power(model, cfg.flux_bias_current, cfg.vdd) if cfg.flux_bias_current else 0.0
    return static, dynamic, joule


def max_multiplexers(cfg, mux_model=None):
    """Largest multiplexer count within the usable cooling power.

    Returns
    -------
    (count, addressable_devices) : tuple of int
    """
    per_mux = sum(per_mux_power(cfg, mux_model))
    if per_mux <= 0:
        raise UnboundedBudgetError("per-multiplexer power is zero")
    # guard against 20e-6/200e-12 landing a hair under an integer
    count = math.floor(cfg.usable_power / per_mux * (1 + 1e-12))
    return count, count * cfg.ports_per_mux


def port_scaling_power(base_static, n_ports, overhead=0.0):
    """Static power of a single-pole ``n_ports``-throw variant.

    The 4-port figure ``base_static`` is split into one series transistor
    ``P_s`` plus three shunts at ``0.25·P_s`` each, after removing a constant
    non-RF ``overhead``; an n-port switch then draws
    ``P_s·(1 + 0.25·(n-1)) + overhead``.
    """
    if n_ports < 1:
        raise ValueError("n_ports must be at least 1")
    if overhead > base_static:
        raise ValueError("overhead exceeds base static power")
    p_series = (base_static - overhead) / (1 + 3 * SHUNT_TO_SERIES_LEAKAGE)
    return p_series * (1 + SHUNT_TO_SERIES_LEAKAGE * (n_ports - 1)) + overhead


def budget_report(cfg, mux_model=None, n_mux=None):
    """Power breakdown for ``n_mux`` multiplexers (default: the maximum that fits).

    An over-budget count gives ``feasible = False`` and zero headroom rather
    than raising.
    """
    static1, dynamic1, joule1 = per_mux_power(cfg, mux_model)
    per_mux = static1 + dynamic1 + joule1
    max_count = math.floor(cfg.usable_power / per_mux * (1 + 1e-12)) if per_mux > 0 else None
    if n_mux is None:
        if max_count is None:
            raise UnboundedBudgetError("per-multiplexer power is zero; give n_mux explicitly")
        n_mux = max_count
    if n_mux < 0:
        raise ValueError("n_mux must be nonnegative")
    static, dynamic, joule = n_mux * static1, n_mux * dynamic1, n_mux * joule1
    total = static + dynamic + joule
    budget = cfg.usable_power
    feasible = total <= budget * (1 + 1e-12)
    return BudgetReport(
        mux_count=n_mux,
        max_mux_count=max_count if max_count is not None else -1,
        addressable_devices=n_mux * cfg.ports_per_mux,
        static=static,
        dynamic=dynamic,
        joule=joule,
        total=total,
        budget=budget,
        headroom=max(budget - total, 0.0) if feasible else 0.0,
        feasible=feasible,
    )
