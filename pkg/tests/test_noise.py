import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from scipy import integrate

from cryomux.device import table_qubit
from cryomux.noise import (
    LN2,
    DephasingContext,
    NoiseParams,
    QuadratureConfig,
    QuadratureError,
    added_photons,
    chi_closed,
    chi_numeric,
    dephasing_rate_echo,
    echo_filter_sq,
    photon_shot_dephasing,
    psd_flux,
    rescale_noise,
    sin4_moment,
    t2e_from_components,
    tphi_from,
)

pos = st.floats(1e-6, 1e6, allow_nan=False, allow_infinity=False)
nonneg = st.one_of(st.just(0.0), pos)


# ---------------------------------------------------------------- PSD and filter


def test_psd_zero_noise():
    assert psd_flux(NoiseParams(), 3.7) == 0.0


def test_psd_white_level_conversion():
    assert psd_flux(NoiseParams(0.0, 2 / math.pi), 1.0) == pytest.approx(1.0, rel=1e-15)


def test_psd_flicker_conversion():
    assert psd_flux(NoiseParams(1 / math.pi**2, 0.0), 2.0) == pytest.approx(0.5, rel=1e-15)


def test_psd_diverges_at_zero():
    with pytest.raises(ZeroDivisionError):
        psd_flux(NoiseParams(1e-12, 0.0), 0.0)


@given(nonneg, nonneg, pos)
def test_psd_is_even(a, b, w):
    p = NoiseParams(a, b)
    assert psd_flux(p, w) == psd_flux(p, -w)


def test_filter_at_zero_frequency():
    assert echo_filter_sq(0.0, 1.0) == 0.0


def test_filter_quarter_period():
    assert echo_filter_sq(2 * math.pi, 1.0) == pytest.approx((2 / math.pi) ** 2, rel=1e-14)


def test_filter_matches_sin4_form(rng):
    w = rng.uniform(-1e3, 1e3, 500)
    tau = rng.uniform(1e-3, 1.0, 500)
    expected = 16 * np.sin(w * tau / 4) ** 4 / w**2
    np.testing.assert_allclose(echo_filter_sq(w, tau), expected, rtol=1e-10, atol=1e-20)


def test_filter_rejects_nonpositive_tau():
    with pytest.raises(ValueError):
        echo_filter_sq(1.0, 0.0)


@given(st.floats(-1e7, 1e7), st.floats(1e-9, 1e-2))
def test_filter_even_and_nonnegative(w, tau):
    f = echo_filter_sq(w, tau)
    assert f >= 0
    assert f == echo_filter_sq(-w, tau)


# ---------------------------------------------------------------- quadrature oracle


def test_sin4_moments():
    assert abs(sin4_moment(3) - math.log(2)) < 1e-6
    assert abs(sin4_moment(2) - math.pi / 4) < 1e-6


def test_sin4_moment_bad_power():
    with pytest.raises(ValueError):
        sin4_moment(4)


def _chi_by_omega_quadrature(params, d, tau):
    # independent oracle: ½ D² ∫_{-∞}^{∞} |F|² S dω = D² ∫_0^∞ |F|² S dω, summed period by period
    def f(w):
        return echo_filter_sq(w, tau) * psd_flux(params, w)

    period = 4 * math.pi / tau
    total = integrate.quad(f, 1e-300, period, limit=200, epsrel=1e-12)[0]
    k = 1
    while k < 4000:
        total += integrate.quad(f, k * period, (k + 1) * period, limit=200, epsrel=1e-12)[0]
        k += 1
    # remaining tail: 16 sin⁴ averages to 6, envelope (A/w + B)/w²
    w0 = k * period
    total += 6 * (params.a_phase / (2 * w0**2) + params.b_phase / w0)
    return d**2 * total


@pytest.mark.parametrize(
    "a, b, d, tau",
    [(1e-12, 0.0, 1e6, 1e-5), (0.0, 1e-16, 3e7, 2e-5), (7.84e-12, 2.25e-16, 2e7, 4e-6)],
)
def test_chi_numeric_against_omega_space_oracle(a, b, d, tau):
    p = NoiseParams(a, b)
    oracle = _chi_by_omega_quadrature(p, d, tau)
    assert chi_numeric(p, DephasingContext(d, tau)) == pytest.approx(oracle, rel=1e-4)


def test_chi_closed_unit_case():
    p = NoiseParams.from_phase(1.0, 0.0)
    assert chi_closed(p, DephasingContext(1.0, 1.0)) == pytest.approx(LN2, rel=1e-14)


def test_chi_zero_noise():
    ctx = DephasingContext(5.0, 1e-3)
    assert chi_closed(NoiseParams(), ctx) == 0.0
    assert chi_numeric(NoiseParams(), ctx) == 0.0


@given(pos, st.floats(1e2, 1e9), st.floats(1e-8, 1e-3))
def test_chi_numeric_white(b, d, tau):
    p = NoiseParams.from_phase(0.0, b)
    expected = p.b_phase * d**2 * math.pi * tau
    assert chi_numeric(p, DephasingContext(d, tau)) == pytest.approx(expected, rel=1e-4)


@given(pos, st.floats(1e2, 1e9), st.floats(1e-8, 1e-3))
def test_chi_numeric_flicker(a, d, tau):
    p = NoiseParams.from_phase(a, 0.0)
    expected = p.a_phase * d**2 * LN2 * tau**2
    assert chi_numeric(p, DephasingContext(d, tau)) == pytest.approx(expected, rel=1e-4)


def test_chi_numeric_matches_closed_on_grid(rng):
    grid_a = 10 ** rng.uniform(-14, -9, 10)
    grid_b = 10 ** rng.uniform(-18, -14, 10)
    grid_d = 10 ** rng.uniform(5, 8, 10)
    taus = 10 ** rng.uniform(-7, -4, 10)
    for a, b, d, tau in zip(grid_a, grid_b, grid_d, taus):
        for tt in taus:
            p = NoiseParams(a, b)
            ctx = DephasingContext(d, tt)
            assert chi_numeric(p, ctx) == pytest.approx(chi_closed(p, ctx), rel=1e-4)


def test_chi_numeric_reports_achieved_tolerance():
    cfg = QuadratureConfig(limit=33, periods_direct=32, tolerance=1e-30, epsrel=1e-13, epsabs=1e-30)
    with pytest.raises(QuadratureError) as exc:
        chi_numeric(NoiseParams(1e-12, 1e-16), DephasingContext(1e6, 1e-5), cfg)
    assert exc.value.achieved > 0


def test_quadrature_config_validation():
    with pytest.raises(ValueError):
        QuadratureConfig(theta_max=10.0)
    with pytest.raises(ValueError):
        QuadratureConfig(limit=8, periods_direct=32)


def test_chi_closed_accepts_tau_array():
    p = NoiseParams(1e-12, 1e-16)
    taus = np.array([1e-6, 2e-6])
    out = chi_closed(p, DephasingContext(1e6, taus))
    assert out.shape == (2,)
    assert out[1] == pytest.approx(chi_closed(p, DephasingContext(1e6, 2e-6)))


def test_context_validation():
    with pytest.raises(ValueError):
        DephasingContext(1.0, 0.0)
    with pytest.raises(ValueError):
        DephasingContext(-1.0, 1.0)


# ---------------------------------------------------------------- echo rate and rescaling


def test_rate_zero_cases():
    assert dephasing_rate_echo(NoiseParams(), 1e7) == 0.0
    assert dephasing_rate_echo(NoiseParams(1e-12, 1e-16), 0.0) == 0.0


def test_rate_at_one_ghz_per_phi0():
    p = NoiseParams.from_sqrt(2.8e-6, 15e-9)
    d = 2 * 2 * math.pi * 1e9  # phase sensitivity for ∂f/∂Φ = 1 GHz/Φ0
    expected = math.sqrt(p.a_phase * LN2) * d + p.b_phase * math.pi * d**2
    assert dephasing_rate_echo(p, d) == pytest.approx(expected, rel=1e-14)
    # effective rate is the square root of the Gaussian coefficient
    a_coeff = chi_closed(NoiseParams(p.a_flux, 0.0), DephasingContext(d, 1.0))
    assert math.sqrt(a_coeff) == pytest.approx(math.sqrt(p.a_phase * LN2) * d, rel=1e-12)


@given(nonneg, nonneg, nonneg, st.floats(1.0, 10.0))
def test_rate_monotone(a, b, d, k):
    base = dephasing_rate_echo(NoiseParams(a, b), d)
    assert dephasing_rate_echo(NoiseParams(a * k, b), d) >= base
    assert dephasing_rate_echo(NoiseParams(a, b * k), d) >= base
    assert dephasing_rate_echo(NoiseParams(a, b), d * k) >= base


def test_rescale_examples():
    assert rescale_noise(math.pi**2, 0.0)[0] == pytest.approx(1.0, rel=1e-15)
    assert rescale_noise(0.0, math.pi / 2)[1] == pytest.approx(1.0, rel=1e-15)


def test_rescale_rejects_negative_and_unknown():
    with pytest.raises(ValueError):
        rescale_noise(-1.0, 0.0)
    with pytest.raises(ValueError):
        rescale_noise(1.0, 1.0, "sideways")


@given(nonneg, nonneg)
def test_rescale_involution(a, b):
    back = rescale_noise(*rescale_noise(a, b, "to_physical"), "to_phase")
    assert back == pytest.approx((a, b), rel=1e-12)
    fwd = rescale_noise(*rescale_noise(a, b, "to_phase"), "to_physical")
    assert fwd == pytest.approx((a, b), rel=1e-12)


@given(nonneg, nonneg)
def test_noise_params_phase_round_trip(a, b):
    p = NoiseParams(a, b)
    q = NoiseParams.from_phase(p.a_phase, p.b_phase)
    assert (q.a_flux, q.b_flux) == pytest.approx((a, b), rel=1e-12)


def test_noise_params_reject_negative():
    with pytest.raises(ValueError):
        NoiseParams(-1e-12, 0.0)


# ---------------------------------------------------------------- photon shot noise


def test_shot_noise_zero_photons():
    assert photon_shot_dephasing(0.0, 1e6, 1e5) == 0.0


@pytest.mark.parametrize("n, nbar, tphi", [(1, 0.014, 160e-6), (20, 0.013, 50e-6)])
def test_shot_noise_table_qubits(n, nbar, tphi):
    q = table_qubit(n)
    rate = photon_shot_dephasing(nbar, q.kappa_over_2pi, q.chi_over_2pi, over_2pi=True)
    assert rate == pytest.approx(1 / tphi, rel=0.05)


def test_shot_noise_requires_positive_kappa():
    with pytest.raises(ValueError):
        photon_shot_dephasing(0.1, 0.0, 1e5)


@pytest.mark.parametrize(
    "n, gamma, target, tol",
    [(2, 5.6e3, 0.022, 0.10), (1, 2.3e3, 0.005, 0.20)],
)
def test_added_photons_table_rows(n, gamma, target, tol):
    q = table_qubit(n)
    assert added_photons(gamma, q.kappa, q.chi) == pytest.approx(target, rel=tol)


def test_added_photons_zero_and_insensitive():
    assert added_photons(0.0, 1e6, 1e5) == 0.0
    with pytest.raises(ZeroDivisionError):
        added_photons(1e3, 1e6, 0.0)


@given(st.floats(0, 10), pos, st.floats(-1e6, 1e6).filter(lambda c: abs(c) > 1e-3))
def test_shot_noise_linear_and_sign_symmetric(n, kappa, chi):
    r = photon_shot_dephasing(n, kappa, chi)
    assert r == pytest.approx(photon_shot_dephasing(n, kappa, -chi), rel=1e-15)
    assert photon_shot_dephasing(2 * n, kappa, chi) == pytest.approx(2 * r, rel=1e-14, abs=0)


@given(st.floats(1e-6, 10), pos, st.floats(-1e6, 1e6).filter(lambda c: abs(c) > 1e-3))
def test_added_photons_inverts_shot_noise(n, kappa, chi):
    rate = photon_shot_dephasing(n, kappa, chi)
    assume(rate > 0)
    assert added_photons(rate, kappa, chi) == pytest.approx(n, rel=1e-12)


def test_over_2pi_flag_equivalence():
    a = photon_shot_dephasing(0.02, 1e6, -1e5, over_2pi=True)
    b = photon_shot_dephasing(0.02, 2 * math.pi * 1e6, -2 * math.pi * 1e5)
    assert a == pytest.approx(b, rel=1e-15)


# ---------------------------------------------------------------- T2e relation


def test_t2e_limits():
    assert t2e_from_components(100e-6, math.inf) == pytest.approx(200e-6)
    assert t2e_from_components(100e-6, 100e-6) == pytest.approx(200e-6 / 3, rel=1e-14)


def test_tphi_from_domain_error():
    with pytest.raises(ValueError):
        tphi_from(50e-6, 101e-6)
    assert tphi_from(50e-6, 100e-6) == math.inf


@given(pos, pos)
def test_t2e_round_trip(t1, tphi):
    t2e = t2e_from_components(t1, tphi)
    assert t2e <= 2 * t1 * (1 + 1e-15)
    assert 1 / t2e == pytest.approx(1 / tphi + 1 / (2 * t1), rel=1e-12)
    assume(1 / t2e - 0.5 / t1 > 1e-9 / t2e)
    assert tphi_from(t1, t2e) == pytest.approx(tphi, rel=1e-6)
