"""Synthetic measurement campaigns and the extraction of derived quantities.

Two experiments are simulated:

* a long interleaved series of ``T1`` and Hahn-echo measurements of a fixed
  qubit, alternating between the reference line and the multiplexer, where
  the multiplexer adds a thermal photon population to the readout resonator;
* a flux-bias sweep of a tunable qubit through the multiplexer, with
  flux-noise dephasing and Joule heating of the mixing chamber.

Every trace is fitted the way measured data would be, and the fitted values
feed the dephasing/photon-number and flux-noise extraction.
"""

from __future__ import annotations

import enum
import hashlib
import json
import math
from dataclasses import asdict, dataclass, field, is_dataclass, replace
from typing import Optional

import numpy as np
from scipy.optimize import nnls

from .device import (
    FluxLineCal,
    TransmonParams,
    current_for_flux,
    dispersion,
    mutual_from_bias,
    phase_dispersion,
)
from .fitting import FitError, fit_trace
from .mux import MuxModel, joule_power, mxc_heating, t1_factor
from .noise import (
    LN2,
    DephasingContext,
    NoiseParams,
    added_photons,
    chi_closed,
    dephasing_rate_echo,
)
from .stats import StatsError, combined_se, welch_t

__all__ = [
    "TraceKind",
    "CoherenceTrace",
    "DriftModel",
    "CampaignConfig",
    "CampaignResult",
    "FluxSweepConfig",
    "FluxSweepResult",
    "NoiseFit",
    "AddedDephasing",
    "UnidentifiableError",
    "InsufficientDataError",
    "delay_grid",
    "synth_t1_trace",
    "synth_echo_trace",
    "ou_path",
    "run_coherence_campaign",
    "run_flux_sweep",
    "extract_noise_params",
    "fit_noise_table",
    "added_dephasing_report",
    "compare_paths",
    "fingerprint",
    "DEFAULT_SWEEP_NOISE",
]

#: Flux noise used for the default sweep: √A = 2.8 μΦ0, √B = 15 nΦ0/√Hz.
DEFAULT_SWEEP_NOISE = NoiseParams.from_sqrt(2.8e-6, 15e-9)


class UnidentifiableError(ValueError):
    """Sweep data cannot separate the 1/f and white noise terms."""


class InsufficientDataError(ValueError):
    """Too few repetitions for a standard error."""


class TraceKind(str, enum.Enum):
    RELAXATION = "relaxation"
    HAHN_ECHO = "hahn_echo"


@dataclass(frozen=True, eq=False)
class CoherenceTrace:
    kind: TraceKind
    times: np.ndarray
    signal: np.ndarray
    seed: object = None
    truth: Optional[dict] = None

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        y = np.asarray(self.signal, dtype=float)
        if t.shape != y.shape or t.ndim != 1:
            raise ValueError("times and signal must be 1-D arrays of equal length")
        if np.any(np.diff(t) <= 0):
            raise ValueError("times must be strictly increasing")
        if not np.all(np.isfinite(y)):
            raise ValueError("signal must be finite")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "signal", y)


def delay_grid(expected_time, n_points=51, span=3.0, spacing="log"):
    """Delay grid over ``[0, span·expected_time]``.

    ``"log"`` places ``t = 0`` plus ``n_points - 1`` geometrically spaced
    delays over the last two decades; ``"linear"`` is evenly spaced.
    """
    if not expected_time > 0 or n_points < 2:
        raise ValueError("need expected_time > 0 and at least two points")
    t_max = span * expected_time
    if spacing == "linear":
        return np.linspace(0.0, t_max, n_points)
    if spacing == "log":
        return np.concatenate([[0.0], np.geomspace(t_max / 100.0, t_max, n_points - 1)])
    raise ValueError(f"unknown spacing {spacing!r}")


def _rng(seed):
    return np.random.default_rng(seed)


def synth_t1_trace(t1_true, grid, noise_sigma=0.0, seed=None):
    """Relaxation trace ``exp(-t/T1)`` plus Gaussian readout noise."""
    if not t1_true > 0:
        raise ValueError("t1_true must be positive")
    t = np.asarray(grid, dtype=float)
    y = np.exp(-t / t1_true)
    if noise_sigma:
        y = y + _rng(seed).normal(0.0, noise_sigma, t.size)
    return CoherenceTrace(TraceKind.RELAXATION, t, y, seed, {"t1": t1_true})


def synth_echo_trace(t1_true, noise, dispersion_d, grid, noise_sigma=0.0, seed=None, gamma_white=0.0):
    """Hahn-echo trace ``exp(-t/2T1)·exp(-Γ_w t)·exp(-χ(t))`` plus readout noise.

    ``χ`` is the closed-form flux-noise exponent (Gaussian in ``t`` for the
    1/f part, linear for the white part); ``gamma_white`` adds any
    flux-independent exponential dephasing such as photon shot noise.
    ``t1_true`` may be ``inf``.
    """
    t = np.asarray(grid, dtype=float)
    y = np.exp(-0.5 * t / t1_true - gamma_white * t)
    positive = t > 0
    if np.any(positive) and dispersion_d > 0:
        chi = chi_closed(noise, DephasingContext(dispersion_d, t[positive]))
        y[positive] *= np.exp(-chi)
    if noise_sigma:
        y = y + _rng(seed).normal(0.0, noise_sigma, t.size)
    truth = {"t1": t1_true, "dispersion_d": dispersion_d, "gamma_white": gamma_white}
    return CoherenceTrace(TraceKind.HAHN_ECHO, t, y, seed, truth)


def ou_path(times, correlation_time, amplitude, rng):
    """Stationary Ornstein-Uhlenbeck samples (zero mean, std ``amplitude``) at ``times``."""
    times = np.asarray(times, dtype=float)
    x = np.empty(times.size)
    if amplitude == 0:
        x[:] = 0.0
        return x
    x[0] = rng.normal(0.0, amplitude)
    for i in range(1, times.size):
        rho = math.exp(-(times[i] - times[i - 1]) / correlation_time)
        x[i] = rho * x[i - 1] + amplitude * math.sqrt(1 - rho * rho) * rng.normal()
    return x


def _jsonable(obj):
    if is_dataclass(obj):
        return {k: _jsonable(v) for k, v in asdict(obj).items()}
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, float) and not math.isfinite(obj):
        return repr(obj)
    return obj


def fingerprint(*objs):
    """Short SHA-256 over the canonical JSON form of configuration objects."""
    payload = json.dumps([_jsonable(o) for o in objs], sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class DriftModel:
    """Slow fluctuations of ``log T1`` and ``log Γφ`` as independent OU processes."""

    correlation_time: float = 3600.0
    amplitude: float = 0.10
    enabled: bool = True


@dataclass(frozen=True)
class CampaignConfig:
    """A fixed-frequency qubit measured alternately through the reference line and the mux.

    ``n_add`` is the thermal photon number the multiplexer adds to the
    readout resonator.  Each repetition takes one T1 and one echo trace per
    path; the mux repetition runs half a period after the reference one.
    """

    qubit: TransmonParams
    n_add: float = 0.0
    duration: float = 12 * 3600.0
    repetition_period: float = 600.0
    noise_sigma: float = 0.01
    n_points: int = 51
    span: float = 3.0
    spacing: str = "log"
    drift: DriftModel = field(default_factory=DriftModel)
    echo_fit: str = "exponential"
    fit_offset: bool = True

    def __post_init__(self):
        if self.n_add < 0:
            raise ValueError("n_add must be nonnegative")
        if not (self.duration > 0 and self.repetition_period > 0):
            raise ValueError("duration and repetition_period must be positive")
        if self.qubit.t1 is None:
            raise ValueError("campaign qubit needs a T1")
        if self.n_add > 0 and not self.qubit.has_readout_params:
            raise ValueError("adding photons needs kappa and chi for the qubit")

    @property
    def n_repetitions(self):
        return max(int(self.duration // self.repetition_period), 1)

    def intrinsic_gamma_phi(self):
        """Reference-line dephasing rate [1/s] from the qubit's mean Tφ (or T1, T2e)."""
        q = self.qubit
        if q.tphi is not None:
            return 1.0 / q.tphi
        if q.t2e is not None:
            return max(1.0 / q.t2e - 0.5 / q.t1, 0.0)
        return 0.0

    def added_gamma_phi(self):
        return self.n_add * self.qubit.shot_noise_coefficient() if self.n_add else 0.0


@dataclass(frozen=True, eq=False)
class CampaignResult:
    """Per-repetition fitted coherence for one routing path.

    ``gamma_phi`` is ``1/T2e - 1/(2 T1)`` from the fitted times and
    ``tphi`` its reciprocal, so the two always satisfy the T2e relation.
    """

    path: str
    timestamps: np.ndarray
    t1: np.ndarray
    t2e: np.ndarray
    gamma_phi: np.ndarray
    tphi: np.ndarray
    config_fingerprint: str
    seed: object = None
    t1_true: Optional[np.ndarray] = None
    gamma_phi_true: Optional[np.ndarray] = None
    label: str = ""

    def __len__(self):
        return len(self.timestamps)

    @classmethod
    def from_fits(cls, path, timestamps, t1, t2e, **kw):
        t1 = np.asarray(t1, dtype=float)
        t2e = np.asarray(t2e, dtype=float)
        gamma = 1.0 / t2e - 0.5 / t1
        with np.errstate(divide="ignore"):
            tphi = 1.0 / gamma
        return cls(path, np.asarray(timestamps, dtype=float), t1, t2e, gamma, tphi, **kw)


def _measure(t1_true, gamma_white, noise, d_phase, cfg_like, ss, with_errors=False):
    """Synthesize and fit one T1 and one echo trace.

    Returns fitted ``(T1, T2e)``, plus the standard error of
    ``1/T2e - 1/(2T1)`` when ``with_errors``.
    """
    t1_seed, echo_seed = ss.spawn(2)
    n, span, spacing, sigma, echo_fit, offset = cfg_like
    t1_grid = delay_grid(t1_true, n, span, spacing)
    t1_res = fit_trace(synth_t1_trace(t1_true, t1_grid, sigma, t1_seed), offset=offset)
    t1_fit = t1_res.rate
    expected_rate = 0.5 / t1_true + gamma_white + (dephasing_rate_echo(noise, d_phase) if noise else 0.0)
    echo_grid = delay_grid(1.0 / expected_rate, n, span, spacing)
    trace = synth_echo_trace(t1_true, noise or NoiseParams(), d_phase, echo_grid, sigma, echo_seed, gamma_white)
    fit = fit_trace(trace, echo_fit, offset=offset)
    rate = fit.effective_rate
    if not (t1_fit > 0 and rate > 0):
        raise FitError("fit produced a nonpositive rate", {"t1_rate": t1_fit, "echo_rate": rate})
    if with_errors:
        err = math.hypot(fit.effective_rate_stderr, 0.5 * t1_res.rate_stderr)
        return 1.0 / t1_fit, 1.0 / rate, err
    return 1.0 / t1_fit, 1.0 / rate


def run_coherence_campaign(cfg, seed=0, duration=None, repetition_period=None):
    """Simulate the interleaved reference/mux campaign.

    Returns
    -------
    (ref, mux) : tuple of CampaignResult
        Identical ``cfg`` and ``seed`` give bit-identical results.
    """
    if duration is not None or repetition_period is not None:
        cfg = replace(
            cfg,
            duration=duration if duration is not None else cfg.duration,
            repetition_period=repetition_period if repetition_period is not None else cfg.repetition_period,
        )
    n = cfg.n_repetitions
    period = cfg.repetition_period
    t_ref = np.arange(n) * period
    t_mux = t_ref + 0.5 * period
    t_all = np.sort(np.concatenate([t_ref, t_mux]))

    root = np.random.SeedSequence(seed)
    drift_ss, ref_ss, mux_ss = root.spawn(3)
    drift_rng = np.random.default_rng(drift_ss)
    if cfg.drift.enabled:
        log_t1 = ou_path(t_all, cfg.drift.correlation_time, cfg.drift.amplitude, drift_rng)
        log_gp = ou_path(t_all, cfg.drift.correlation_time, cfg.drift.amplitude, drift_rng)
    else:
        log_t1 = log_gp = np.zeros(t_all.size)
    t1_all = cfg.qubit.t1 * np.exp(log_t1)
    gp_all = cfg.intrinsic_gamma_phi() * np.exp(log_gp)
    # t_all alternates ref, mux, ref, mux, ...
    shared = (cfg.n_points, cfg.span, cfg.spacing, cfg.noise_sigma, cfg.echo_fit, cfg.fit_offset)
    fp = fingerprint(cfg)
    results = []
    for path, times, offset, ss, extra in (
        ("reference", t_ref, 0, ref_ss, 0.0),
        ("mux", t_mux, 1, mux_ss, cfg.added_gamma_phi()),
    ):
        t1_true = t1_all[offset::2]
        gp_true = gp_all[offset::2] + extra
        fits = [
            _measure(t1_true[k], gp_true[k], None, 0.0, shared, rep_ss)
            for k, rep_ss in enumerate(ss.spawn(n))
        ]
        t1_fit, t2e_fit = (np.array(v) for v in zip(*fits))
        results.append(
            CampaignResult.from_fits(
                path,
                times,
                t1_fit,
                t2e_fit,
                config_fingerprint=fp,
                seed=seed,
                t1_true=t1_true,
                gamma_phi_true=gp_true,
                label=cfg.qubit.label,
            )
        )
    return tuple(results)


@dataclass(frozen=True)
class FluxSweepConfig:
    """Tunable qubit biased through the multiplexer's flux path.

    The bias current ``I = Φ·Φ0/M`` dissipates ``I²·R_on`` in the series
    transistor; with ``heating`` on, the resulting mixing-chamber warming
    reduces T1 through the mux model's degradation map.

    Echo traces are fitted with the Gaussian-exponential model by default and
    reduced to the effective single-exponential rate ``Γ + Γ_g``;
    ``echo_fit="exponential"`` fits a plain exponential instead.  Traces are
    normalized populations decaying to zero, so the fit offset is pinned at 0
    unless ``fit_offset``.  The sweet-spot reference rate is the mean of
    ``sweet_spot_repeats`` independent measurements at zero flux.
    """

    f_max: float = 5.0e9
    t1_sweet: float = 50e-6
    tphi_sweet: float = 100e-6
    noise: NoiseParams = DEFAULT_SWEEP_NOISE
    mux: MuxModel = field(default_factory=MuxModel)
    vdd: float = 0.55
    cal: FluxLineCal = field(default_factory=lambda: mutual_from_bias(0.23e-3, 0.2))
    heating: bool = True
    asymmetry: float = 0.0
    noise_sigma: float = 0.0
    n_points: int = 51
    span: float = 3.0
    spacing: str = "log"
    echo_fit: str = "gauss_exp"
    fit_offset: bool = False
    sweet_spot_repeats: int = 10


@dataclass(frozen=True, eq=False)
class FluxSweepResult:
    """Fitted coherence along a flux-bias grid.

    ``dispersion`` is ``∂f_q/∂Φ_e`` [Hz/Φ0]; ``gamma_phi`` is the echo
    dephasing rate ``1/T2e - 1/(2T1)`` per point with standard error
    ``gamma_phi_err``, and ``gamma_phi_ss`` the same quantity averaged over
    the dedicated sweet-spot repeats whose fitted times are kept in
    ``sweet_spot_t1`` and ``sweet_spot_t2e``.
    """

    phi_e: np.ndarray
    dispersion: np.ndarray
    t1: np.ndarray
    t2e: np.ndarray
    gamma_phi: np.ndarray
    gamma_phi_err: np.ndarray
    gamma_phi_ss: float
    gamma_phi_ss_err: float
    t1_true: np.ndarray
    gamma_phi_true: np.ndarray
    config_fingerprint: str = ""
    sweet_spot_t1: Optional[np.ndarray] = None
    sweet_spot_t2e: Optional[np.ndarray] = None

    @property
    def gamma_phi_flux(self):
        """Flux-sensitive part, offset by the sweet-spot rate."""
        return self.gamma_phi - self.gamma_phi_ss


def run_flux_sweep(cfg, phi_grid, seed=0):
    """Measure T1 and T2e at each flux bias in ``phi_grid`` [Φ0].

    Raises
    ------
    ValueError
        If any bias reaches ±0.5 Φ0.
    """
    phi = np.asarray(phi_grid, dtype=float)
    if phi.ndim != 1 or phi.size == 0:
        raise ValueError("phi_grid must be a nonempty 1-D sequence")
    if np.any(np.abs(phi) >= 0.5 - 1e-9):
        raise ValueError("flux grid must stay inside (-0.5, 0.5) Φ0")
    shared = (cfg.n_points, cfg.span, cfg.spacing, cfg.noise_sigma, cfg.echo_fit, cfg.fit_offset)
    gamma_intr = 1.0 / cfg.tphi_sweet
    root = np.random.SeedSequence(seed)
    ss_sweet, ss_points = root.spawn(2)

    def point(p, ss):
        df = float(dispersion(cfg.f_max, p, cfg.asymmetry))
        d_phase = abs(float(phase_dispersion(df)))
        t1_true = cfg.t1_sweet
        if cfg.heating:
            current = current_for_flux(cfg.cal, p)
            dt = mxc_heating(cfg.mux, joule_power(cfg.mux, current, cfg.vdd))
            t1_true = cfg.t1_sweet * t1_factor(cfg.mux, dt)
        t1_fit, t2e_fit, err = _measure(t1_true, gamma_intr, cfg.noise, d_phase, shared, ss, True)
        truth = gamma_intr + dephasing_rate_echo(cfg.noise, d_phase)
        return df, t1_fit, t2e_fit, err, t1_true, truth

    ss_rows = [point(0.0, ss) for ss in ss_sweet.spawn(max(cfg.sweet_spot_repeats, 1))]
    ss_rates = np.array([1.0 / r[2] - 0.5 / r[1] for r in ss_rows])
    gamma_ss = float(ss_rates.mean())
    if ss_rates.size > 1:
        gamma_ss_err = float(ss_rates.std(ddof=1) / math.sqrt(ss_rates.size))
    else:
        gamma_ss_err = float(ss_rows[0][3])
    rows = [point(p, ss) for p, ss in zip(phi, ss_points.spawn(phi.size))]
    df, t1, t2e, err, t1_true, truth = (np.array(v) for v in zip(*rows))
    return FluxSweepResult(
        phi_e=phi,
        dispersion=df,
        t1=t1,
        t2e=t2e,
        gamma_phi=1.0 / t2e - 0.5 / t1,
        gamma_phi_err=err,
        gamma_phi_ss=gamma_ss,
        gamma_phi_ss_err=gamma_ss_err,
        t1_true=t1_true,
        gamma_phi_true=truth,
        config_fingerprint=fingerprint(cfg, phi, seed),
        sweet_spot_t1=np.array([r[1] for r in ss_rows]),
        sweet_spot_t2e=np.array([r[2] for r in ss_rows]),
    )


@dataclass(frozen=True)
class NoiseFit:
    """Flux-noise amplitudes recovered from dephasing vs dispersion.

    ``linear_coeff`` and ``quadratic_coeff`` are the fitted coefficients of
    ``|D|`` and ``D²`` (``D`` in rad/s per rad of phase).
    """

    params: NoiseParams
    a_flux_err: float
    b_flux_err: float
    sqrt_a_err: float
    sqrt_b_err: float
    linear_coeff: float
    quadratic_coeff: float
    residual_rms: float
    n_points: int

    @property
    def sqrt_a(self):
        return self.params.sqrt_a

    @property
    def sqrt_b(self):
        return self.params.sqrt_b

    def as_dict(self):
        return {
            "sqrt_a_phi0": self.sqrt_a,
            "sqrt_a_err_phi0": self.sqrt_a_err,
            "sqrt_b_phi0_per_rthz": self.sqrt_b,
            "sqrt_b_err_phi0_per_rthz": self.sqrt_b_err,
            "sqrt_a_uphi0": self.sqrt_a * 1e6,
            "sqrt_a_err_uphi0": self.sqrt_a_err * 1e6,
            "sqrt_b_nphi0_per_rthz": self.sqrt_b * 1e9,
            "sqrt_b_err_nphi0_per_rthz": self.sqrt_b_err * 1e9,
            "a_flux": self.params.a_flux,
            "a_flux_err": self.a_flux_err,
            "b_flux": self.params.b_flux,
            "b_flux_err": self.b_flux_err,
            "residual_rms_hz": self.residual_rms,
            "n_points": self.n_points,
        }


def fit_noise_table(dispersion_hz_per_phi0, gamma_phi_e, sweet_spot_rate=0.0, sigma=None):
    """Fit ``Γφᵉ - Γφ,SS = p1·|D| + p2·D²`` with ``p1, p2 ≥ 0``.

    ``dispersion_hz_per_phi0`` holds ``∂f_q/∂Φ_e``; it is converted to the
    phase sensitivity ``D``.  The coefficients map to
    ``A_φω = p1²/ln 2`` and ``B_φω = p2/π`` and are returned in physical
    units.  ``sigma`` (per-point standard errors of the rates) switches to
    inverse-variance weighting; it is ignored unless every entry is finite
    and positive.

    Raises
    ------
    UnidentifiableError
        Fewer than four distinct dispersions or fewer than two nonzero ones.
    """
    df = np.abs(np.asarray(dispersion_hz_per_phi0, dtype=float))
    y = np.asarray(gamma_phi_e, dtype=float) - sweet_spot_rate
    if df.shape != y.shape or df.ndim != 1:
        raise ValueError("dispersion and rate columns must be 1-D and equal length")
    if not (np.all(np.isfinite(df)) and np.all(np.isfinite(y))):
        raise ValueError("non-finite values in noise table")
    scale = df.max() if df.size else 0.0
    nonzero = df > 1e-9 * scale if scale > 0 else np.zeros(df.shape, bool)
    distinct = np.unique(np.round(df / scale, 9)) if scale > 0 else np.array([])
    if nonzero.sum() < 2 or distinct.size < 4:
        raise UnidentifiableError(
            f"need >= 4 distinct dispersions with >= 2 nonzero; got {distinct.size} distinct, "
            f"{int(nonzero.sum())} nonzero"
        )
    d = np.abs(np.asarray(phase_dispersion(df)))
    X = np.column_stack([d, d**2])
    w = np.ones_like(y)
    if sigma is not None:
        sigma = np.asarray(sigma, dtype=float)
        if sigma.shape == y.shape and np.all(np.isfinite(sigma)) and np.all(sigma > 0):
            w = 1.0 / sigma
    Xw = X * w[:, None]
    yw = y * w
    norms = np.linalg.norm(Xw, axis=0)
    coef_scaled, _ = nnls(Xw / norms, yw)
    p1, p2 = coef_scaled / norms
    resid = y - X @ np.array([p1, p2])
    rw = resid * w
    dof = max(y.size - 2, 1)
    s2 = float(rw @ rw) / dof
    cov = np.linalg.pinv((Xw / norms).T @ (Xw / norms)) * s2 / np.outer(norms, norms)
    sp1, sp2 = np.sqrt(np.clip(np.diag(cov), 0, None))

    k_a = 1.0 / (math.pi**2 * LN2)  # a_flux = p1² · k_a
    a_flux = p1**2 * k_a
    b_flux = 2.0 * p2 / math.pi**2
    params = NoiseParams(a_flux, b_flux)
    sqrt_a_err = sp1 * math.sqrt(k_a)
    b_err = 2.0 * sp2 / math.pi**2
    return NoiseFit(
        params=params,
        a_flux_err=2 * p1 * sp1 * k_a,
        b_flux_err=b_err,
        sqrt_a_err=sqrt_a_err,
        sqrt_b_err=b_err / (2 * math.sqrt(b_flux)) if b_flux > 0 else math.sqrt(b_err),
        linear_coeff=float(p1),
        quadratic_coeff=float(p2),
        residual_rms=math.sqrt(float(resid @ resid) / y.size),
        n_points=int(y.size),
    )


def extract_noise_params(sweep, weighted=False):
    """Recover flux-noise amplitudes from a :class:`FluxSweepResult`.

    With ``weighted`` the per-point fit uncertainties (combined with that of
    the sweet-spot rate) weight the regression.
    """
    sigma = None
    if weighted:
        sigma = np.hypot(sweep.gamma_phi_err, sweep.gamma_phi_ss_err)
    return fit_noise_table(sweep.dispersion, sweep.gamma_phi, sweep.gamma_phi_ss, sigma)


@dataclass(frozen=True)
class AddedDephasing:
    gamma_add: float
    gamma_add_se: float
    n_add: Optional[float]
    n_add_se: Optional[float]

    def as_dict(self):
        return asdict(self)


def added_dephasing_report(ref, mux, qubit=None):
    """Dephasing added by the mux and the photon number that explains it.

    ``Γφ,add = mean(Γφ,mux) - mean(Γφ,ref)`` with standard error
    ``√(σ²_ref/N_ref + σ²_mux/N_mux)`` taken on ``Γφ`` directly.  Without a
    qubit (or without its κ, χ) only the rate is reported.

    Raises
    ------
    InsufficientDataError
        Either campaign has fewer than two repetitions.
    """
    g_ref = np.asarray(ref.gamma_phi if hasattr(ref, "gamma_phi") else ref, dtype=float)
    g_mux = np.asarray(mux.gamma_phi if hasattr(mux, "gamma_phi") else mux, dtype=float)
    if g_ref.size < 2 or g_mux.size < 2:
        raise InsufficientDataError("need at least two repetitions per path")
    try:
        se = combined_se(g_mux, g_ref)
    except StatsError as exc:
        raise InsufficientDataError(str(exc)) from exc
    gamma_add = float(g_mux.mean() - g_ref.mean())
    if qubit is None or not qubit.has_readout_params:
        return AddedDephasing(gamma_add, se, None, None)
    n_add = added_photons(gamma_add, qubit.kappa, qubit.chi)
    n_se = added_photons(se, qubit.kappa, qubit.chi)
    return AddedDephasing(gamma_add, se, float(n_add), float(n_se))


def compare_paths(ref, mux, alpha=0.05):
    """Welch tests of mux vs reference for T1, T2e and Γφ."""
    out = {}
    for name in ("t1", "t2e", "gamma_phi"):
        out[name] = welch_t(getattr(mux, name), getattr(ref, name), alpha)
    return out
