import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cryomux.mux import (
    ESD_POWER_CEILING,
    MuxModel,
    MuxState,
    NotOperationalError,
    SpectrumRangeError,
    dynamic_energy_per_event,
    dynamic_power,
    esd_power,
    insertion_loss,
    isolation,
    joule_power,
    load_spectrum_csv,
    mxc_heating,
    r_on,
    select_port,
    static_power,
    switch_model_spectra,
    t1_factor,
)

M = MuxModel()
bit = st.integers(0, 1)
vdd_on = st.floats(0.48, 1.2)


# ---------------------------------------------------------------- port selection


@pytest.mark.parametrize("d1, d0, port", [(0, 0, 1), (0, 1, 2), (1, 0, 3), (1, 1, 4)])
def test_select_port(d1, d0, port):
    assert select_port(d1, d0) == port
    assert MuxState(0.55, d1, d0).selected_port == port


def test_select_port_bijection():
    ports = {select_port(d1, d0) for d1 in (0, 1) for d0 in (0, 1)}
    assert ports == {1, 2, 3, 4}


@given(bit, bit)
def test_routed_to_inverts_selection(d1, d0):
    port = select_port(d1, d0)
    state = MuxState(0.55).routed_to(port)
    assert (state.d1, state.d0) == (d1, d0)


def test_bad_bits_and_ports():
    with pytest.raises(ValueError):
        select_port(2, 0)
    with pytest.raises(ValueError):
        MuxState(0.55, d0=3)
    with pytest.raises(ValueError):
        MuxState(0.55).routed_to(5)


# ---------------------------------------------------------------- static and dynamic power


def test_static_anchor_and_efold():
    assert static_power(M, 0.55) == pytest.approx(200e-12, rel=1e-15)
    assert static_power(M, 0.55 + M.v_slope) == pytest.approx(200e-12 * math.e, rel=1e-12)
    assert static_power(M, 0.3) <= 1e-13


def test_anchor_independent_of_slope():
    for slope in (0.01, 0.04, 0.1):
        assert static_power(M.with_(v_slope=slope), 0.55) == pytest.approx(200e-12, rel=1e-15)


def test_hard_step_option():
    hard = M.with_(v_subthreshold=0.0)
    assert static_power(hard, 0.479) == hard.p_floor
    assert static_power(hard, 0.48) > 1e-11


def test_static_rejects_negative_supply():
    with pytest.raises(ValueError):
        static_power(M, -0.1)


@given(st.floats(0.0, 1.2), st.floats(0.0, 0.2))
def test_static_monotone(v, dv):
    assert static_power(M, v + dv) >= static_power(M, v)


@given(st.floats(1e-9, 1e-4))
def test_static_continuous_at_turn_on(eps):
    lo = static_power(M, M.v_on - eps)
    hi = static_power(M, M.v_on + eps)
    p_on = static_power(M, M.v_on)
    # both sides approach the same value; the jump shrinks with eps
    assert abs(hi - lo) <= p_on * (eps / M.v_subthreshold + eps / M.v_slope) * 1.01 + 1e-30


def test_static_vectorized():
    v = np.array([0.3, 0.5, 0.55])
    out = static_power(M, v)
    assert out.shape == (3,)
    assert out[2] == pytest.approx(200e-12)


def test_esd_power_is_zero_below_ceiling():
    assert esd_power(M, 0.55) == 0.0 <= ESD_POWER_CEILING


def test_switching_energy_anchor():
    assert dynamic_energy_per_event(M, 0.55) == pytest.approx(108e-15, rel=0.02)
    assert dynamic_energy_per_event(M, 0.55) == pytest.approx(0.5 * 0.715e-12 * 0.3025, rel=1e-14)


def test_switching_energy_reference_coefficient():
    assert dynamic_energy_per_event(M.with_(c_eff_coeff=1e-12), 0.55) == pytest.approx(151e-15, rel=0.01)


def test_switching_energy_quadratic():
    assert dynamic_energy_per_event(M, 1.1) == pytest.approx(4 * dynamic_energy_per_event(M, 0.55), rel=1e-14)


@given(vdd_on)
def test_switching_energy_over_v2_constant(v):
    assert dynamic_energy_per_event(M, v) / v**2 == pytest.approx(0.5 * M.c_eff_coeff, rel=1e-14)


def test_dynamic_power_two_events_per_period():
    assert dynamic_power(M, 0.55, 1e6) == pytest.approx(2e6 * dynamic_energy_per_event(M, 0.55))


def test_switching_below_turn_on():
    with pytest.raises(NotOperationalError):
        dynamic_energy_per_event(M, 0.4)


# ---------------------------------------------------------------- on-resistance and Joule heating


def test_r_on_anchor_and_trend():
    assert r_on(M, 0.55) == pytest.approx(5.3, rel=1e-15)
    assert r_on(M, 1.0) < 5.3
    assert r_on(M, M.v_t_rf + 1e-9) > 1e6


def test_r_on_not_conducting():
    with pytest.raises(NotOperationalError):
        r_on(M, M.v_t_rf)


def test_joule_anchor():
    p = joule_power(M, 0.23e-3, 0.55)
    assert p == pytest.approx(0.28e-6, rel=0.05)
    assert joule_power(M, 0.0, 0.55) == 0.0
    assert joule_power(M, 0.23e-3, 1.0) < 0.28e-6


@given(st.floats(-1e-3, 1e-3), st.floats(0.4, 1.2), st.floats(0.001, 0.5))
def test_joule_symmetric_and_decreasing(i, v, dv):
    assert joule_power(M, i, v) == joule_power(M, -i, v)
    assert joule_power(M, i, v + dv) <= joule_power(M, i, v)


# ---------------------------------------------------------------- spectra


def test_default_spectra_claims():
    assert insertion_loss(M, 5e9) == pytest.approx(1.5, abs=0.1)
    assert insertion_loss(M, 9.2e9) <= 3.0
    f = np.linspace(10e6, 8e9, 400)
    assert np.all(insertion_loss(M, f) <= 2.0)
    assert np.all(isolation(M, f) >= 30.0)
    assert isolation(M, 5e9) >= 30.0


def test_spectrum_knots_reproduced():
    for f, v in M.il_table:
        assert insertion_loss(M, f) == v
    for f, v in M.iso_table:
        assert isolation(M, f) == v


def test_spectrum_out_of_span():
    with pytest.raises(SpectrumRangeError):
        insertion_loss(M, 20e9)
    with pytest.raises(SpectrumRangeError):
        isolation(M, 1e6)


@given(st.floats(10e6, 10e9))
def test_interpolation_between_neighbours(f):
    table = M.il_table
    knots = np.array([k for k, _ in table])
    i = min(max(np.searchsorted(knots, f), 1), len(knots) - 1)
    lo, hi = table[i - 1][1], table[i][1]
    assert min(lo, hi) - 1e-12 <= insertion_loss(M, f) <= max(lo, hi) + 1e-12


def test_load_spectrum_csv(tmp_path):
    path = tmp_path / "il.csv"
    path.write_text("freq_hz,value_db\n1e9,1.0\n2e9,2.0\n")
    table = load_spectrum_csv(path)
    model = M.with_(il_table=table)
    assert insertion_loss(model, 1.5e9) == pytest.approx(1.5)


def test_table_must_increase(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("freq_hz,value_db\n2e9,1.0\n1e9,2.0\n")
    with pytest.raises(ValueError):
        load_spectrum_csv(path)


def test_switch_model_spectra_shape():
    f = np.linspace(1e9, 8e9, 8)
    il, iso = switch_model_spectra(f)
    assert np.all(il > 0) and np.all(iso > 0)
    assert np.all(np.diff(iso) < 0)  # capacitive leakage grows with frequency
    # the bare on-path with no parasitics is the resistive divider
    il0, _ = switch_model_spectra([1e6], c_shunt=0.0, excess_db=0.0)
    assert il0[0] == pytest.approx(-20 * math.log10(100 / (100 + 5.3)), rel=1e-6)


# ---------------------------------------------------------------- heating


def test_heating_calibration():
    assert mxc_heating(M, 0.0) == 0.0
    assert t1_factor(M, 0.0) == 1.0
    assert mxc_heating(M, 0.28e-6) == pytest.approx(5e-3, rel=1e-12)
    assert t1_factor(M, 5e-3) == pytest.approx(0.7, rel=1e-12)
    assert mxc_heating(M, 0.14e-6) == pytest.approx(2.5e-3, rel=1e-12)


def test_heating_rejects_negative_power():
    with pytest.raises(ValueError):
        mxc_heating(M, -1.0)


@given(st.floats(0, 1.0), st.floats(0, 1.0))
def test_t1_factor_monotone_and_clamped(a, b):
    lo, hi = sorted((a, b))
    fa, fb = t1_factor(M, lo), t1_factor(M, hi)
    assert fb <= fa
    assert M.t1_floor <= fb <= 1.0


def test_model_validation():
    with pytest.raises(ValueError):
        MuxModel(v_on=0.6)
    with pytest.raises(ValueError):
        MuxModel(p_ref=0.0)
    with pytest.raises(ValueError):
        MuxModel(t1_floor=0.0)
