import pytest
from hypothesis import given
from hypothesis import strategies as st

from cryomux.mux import MuxModel, dynamic_energy_per_event
from cryomux.planner import (
    SHUNT_TO_SERIES_LEAKAGE,
    BudgetConfig,
    UnboundedBudgetError,
    budget_report,
    max_multiplexers,
    per_mux_power,
    port_scaling_power,
)


def test_paper_scale_claim():
    assert max_multiplexers(BudgetConfig(20e-6, 200e-12, 4)) == (100_000, 400_000)


def test_margin_halves_count():
    assert max_multiplexers(BudgetConfig(20e-6, 200e-12, 4, margin=0.5))[0] == 50_000


def test_static_flux_bias_dominates():
    cfg = BudgetConfig(20e-6, 200e-12, 4, flux_bias_current=0.23e-3, vdd=0.55)
    count, devices = max_multiplexers(cfg)
    joule = 0.23e-3**2 * 5.3
    assert count == int(20e-6 // (joule + 200e-12)) == 71
    assert devices == 284


def test_static_from_model_when_unset():
    cfg = BudgetConfig(per_mux_static=None, vdd=0.55)
    assert per_mux_power(cfg)[0] == pytest.approx(200e-12, rel=1e-15)
    assert max_multiplexers(cfg)[0] == 100_000


def test_zero_power_is_unbounded():
    with pytest.raises(UnboundedBudgetError):
        max_multiplexers(BudgetConfig(per_mux_static=0.0))


def test_config_validation():
    with pytest.raises(ValueError):
        BudgetConfig(margin=1.0)
    with pytest.raises(ValueError):
        BudgetConfig(per_mux_static=-1.0)
    with pytest.raises(ValueError):
        BudgetConfig(ports_per_mux=0)


@given(st.floats(1e-12, 1e-9), st.floats(1.0, 10.0), st.floats(0, 0.9), st.floats(0, 0.09))
def test_count_monotone(p, k, margin, dm):
    base = max_multiplexers(BudgetConfig(per_mux_static=p, margin=margin))[0]
    assert max_multiplexers(BudgetConfig(per_mux_static=p * k, margin=margin))[0] <= base
    assert max_multiplexers(BudgetConfig(per_mux_static=p, margin=margin + dm))[0] <= base


# ---------------------------------------------------------------- port scaling


def test_port_scaling_examples():
    assert SHUNT_TO_SERIES_LEAKAGE == 0.25
    assert port_scaling_power(200e-12, 4) == pytest.approx(200e-12, rel=1e-15)
    assert port_scaling_power(200e-12, 8) == pytest.approx(200e-12 * (1 + 0.25 * 7) / 1.75, rel=1e-15)
    assert port_scaling_power(200e-12, 8) == pytest.approx(314e-12, rel=2e-3)
    assert port_scaling_power(200e-12, 1) == pytest.approx(114e-12, rel=3e-3)


def test_port_scaling_with_overhead():
    assert port_scaling_power(200e-12, 4, overhead=50e-12) == pytest.approx(200e-12)
    assert port_scaling_power(200e-12, 8, overhead=50e-12) == pytest.approx(150e-12 / 1.75 * 2.75 + 50e-12)
    with pytest.raises(ValueError):
        port_scaling_power(200e-12, 4, overhead=300e-12)
    with pytest.raises(ValueError):
        port_scaling_power(200e-12, 0)


@given(st.floats(1e-12, 1e-9), st.integers(1, 64), st.floats(0, 1))
def test_port_scaling_affine(base, n, frac):
    over = frac * base
    p = [port_scaling_power(base, k, over) for k in (n, n + 1, n + 2)]
    assert p[2] - p[1] == pytest.approx(p[1] - p[0], rel=1e-9, abs=1e-24)
    assert port_scaling_power(base, 4, over) == pytest.approx(base, rel=1e-12)


# ---------------------------------------------------------------- budget report


def test_report_matches_max_count():
    cfg = BudgetConfig()
    r = budget_report(cfg)
    assert r.mux_count == r.max_mux_count == 100_000
    assert r.addressable_devices == 400_000
    assert r.feasible


def test_switching_adds_dynamic_power():
    cfg = BudgetConfig(switching_rate=1e6)
    static, dynamic, joule = per_mux_power(cfg)
    assert dynamic == pytest.approx(2e6 * dynamic_energy_per_event(MuxModel(), 0.55))
    assert dynamic == pytest.approx(216e-9, rel=0.02)


def test_zero_muxes():
    r = budget_report(BudgetConfig(), n_mux=0)
    assert r.total == 0 and r.headroom == r.budget
    assert r.feasible


def test_infeasible_flagged():
    r = budget_report(BudgetConfig(), n_mux=200_000)
    assert not r.feasible and r.headroom == 0.0


@given(
    st.floats(1e-7, 1e-4),
    st.floats(1e-12, 1e-9),
    st.floats(0, 1e7),
    st.floats(0, 1e-3),
    st.floats(0, 0.9),
    st.integers(0, 1000),
)
def test_report_breakdown(cooling, static, rate, current, margin, n):
    cfg = BudgetConfig(cooling, static, 4, rate, current, margin)
    r = budget_report(cfg, n_mux=n)
    assert min(r.static, r.dynamic, r.joule, r.headroom) >= 0
    assert r.static + r.dynamic + r.joule == r.total
    if r.feasible:
        assert r.total <= cooling * (1 - margin) * (1 + 1e-12)
    full = budget_report(cfg)
    assert full.feasible
    assert full.total <= cfg.usable_power * (1 + 1e-12)
