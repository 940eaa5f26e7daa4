r"""Dephasing physics for a flux-tunable transmon under Hahn echo.

Flux noise is modelled as the sum of a :math:`1/f` and a white component,

.. math::

    S_\phi(\omega) = \frac{A_{\phi,\omega}}{|\omega|} + B_{\phi,\omega},

filtered by the echo window :math:`|F(\omega,\tau)|^2 =
\tau^2 \sin^2(\omega\tau/4)\,\mathrm{sinc}^2(\omega\tau/4)`.  The decay
exponent is

.. math::

    \chi(\tau) = \tfrac12 D^2 \int_{-\infty}^{\infty} |F|^2 S\, d\omega
               = A_{\phi,\omega} D^2 \ln 2\, \tau^2 + B_{\phi,\omega} D^2 \pi \tau,

with :math:`D = \partial\omega_q/\partial\phi` and :math:`\phi = \pi\Phi_e/\Phi_0`.

:class:`NoiseParams` stores amplitudes in physical units (``Φ0²`` and
``Φ0²/Hz``); every rate computation converts to the phase/angular
convention internally.  The module also holds photon-shot-noise dephasing of
a dispersively read-out qubit and the ``T1``/``T2e``/``Tφ`` bookkeeping.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

__all__ = [
    "NoiseParams",
    "DephasingContext",
    "QuadratureConfig",
    "QuadratureError",
    "rescale_noise",
    "psd_flux",
    "echo_filter_sq",
    "chi_closed",
    "chi_numeric",
    "sin4_moment",
    "dephasing_rate_echo",
    "photon_shot_dephasing",
    "photon_shot_coefficient",
    "added_photons",
    "t2e_from_components",
    "tphi_from",
]

LN2 = math.log(2.0)


class QuadratureError(ArithmeticError):
    """Raised when an adaptive quadrature fails to reach its tolerance."""

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


def rescale_noise(a, b, direction="to_physical"):
    """Convert flux-noise amplitudes between unit conventions.

    Parameters
    ----------
    a, b : float
        1/f amplitude and white level.
    direction : {"to_physical", "to_phase"}
        ``"to_physical"`` maps ``(A_φω, B_φω)`` in phase/angular units to
        ``(A_Φf [Φ0²], B_Φf [Φ0²/Hz])``; ``"to_phase"`` is the exact inverse.

    Returns
    -------
    tuple of float
    """
    if a < 0 or b < 0:
        raise ValueError("noise amplitudes must be nonnegative")
    if direction == "to_physical":
        return a / math.pi**2, 2.0 * b / math.pi
    if direction == "to_phase":
        return a * math.pi**2, b * math.pi / 2.0
    raise ValueError(f"unknown direction {direction!r}")


@dataclass(frozen=True)
class NoiseParams:
    """Flux-noise PSD amplitudes in physical units.

    Attributes
    ----------
    a_flux : float
        1/f amplitude ``A_Φf`` [Φ0²] (PSD value at 1 Hz).
    b_flux : float
        White level ``B_Φf`` [Φ0²/Hz].
    """

    a_flux: float = 0.0
    b_flux: float = 0.0

    def __post_init__(self):
        if not (self.a_flux >= 0 and self.b_flux >= 0):
            raise ValueError(
                f"noise amplitudes must be nonnegative, got a={self.a_flux}, b={self.b_flux}"
            )

    @classmethod
    def from_sqrt(cls, sqrt_a, sqrt_b):
        """Build from ``√A`` [Φ0] and ``√B`` [Φ0/√Hz], as quoted in the literature."""
        return cls(sqrt_a**2, sqrt_b**2)

    @classmethod
    def from_phase(cls, a_phase, b_phase):
        return cls(*rescale_noise(a_phase, b_phase, "to_physical"))

    @property
    def a_phase(self):
        """1/f amplitude in phase/angular convention ``A_φω``."""
        return rescale_noise(self.a_flux, self.b_flux, "to_phase")[0]

    @property
    def b_phase(self):
        """White level in phase/angular convention ``B_φω`` [rad²·s]."""
        return rescale_noise(self.a_flux, self.b_flux, "to_phase")[1]

    @property
    def sqrt_a(self):
        return math.sqrt(self.a_flux)

    @property
    def sqrt_b(self):
        return math.sqrt(self.b_flux)


@dataclass(frozen=True)
class DephasingContext:
    """Flux sensitivity ``D = |∂ω_q/∂φ|`` [rad/s per rad] and echo time ``tau`` [s]."""

    dispersion_d: float
    tau: float

    def __post_init__(self):
        if not self.dispersion_d >= 0:
            raise ValueError("dispersion_d must be nonnegative")
        if not np.all(np.asarray(self.tau) > 0):
            raise ValueError("tau must be positive")


@dataclass(frozen=True)
class QuadratureConfig:
    """Settings for :func:`chi_numeric`.

    ``theta_max`` truncates the dimensionless frequency ``θ = ωτ``.  When
    ``include_tail`` is set the remainder beyond the cutoff is added with
    Fourier-weighted quadrature rather than dropped.
    """

    theta_max: float = 1e6
    epsrel: float = 1e-10
    epsabs: float = 1e-14
    periods_direct: int = 32
    limit: int = 400
    include_tail: bool = True
    tolerance: float = 1e-7

    def __post_init__(self):
        if self.theta_max <= 4 * math.pi * self.periods_direct:
            raise ValueError("theta_max must exceed the directly integrated region")
        if self.limit <= self.periods_direct:
            raise ValueError("limit must exceed periods_direct (one breakpoint per period)")


def psd_flux(params, omega):
    """Two-sided flux PSD ``A_φω/|ω| + B_φω`` at angular frequency ``omega``.

    Raises
    ------
    ZeroDivisionError
        At ``omega == 0`` where the 1/f term diverges.
    """
    omega = np.asarray(omega, dtype=float)
    if np.any(omega == 0):
        raise ZeroDivisionError("1/f PSD diverges at omega = 0")
    out = params.a_phase / np.abs(omega) + params.b_phase
    return out if out.ndim else float(out)


def echo_filter_sq(omega, tau):
    """Squared Hahn-echo filter ``τ² sin²(ωτ/4) sinc²(ωτ/4)`` [s²].

    Extended continuously by 0 at ``omega = 0``.
    """
    if not np.all(np.asarray(tau) > 0):
        raise ValueError("tau must be positive")
    x = np.asarray(omega, dtype=float) * np.asarray(tau, dtype=float) / 4.0
    # np.sinc is sin(pi x)/(pi x)
    out = tau**2 * np.sin(x) ** 2 * np.sinc(x / np.pi) ** 2
    return out if np.ndim(out) else float(out)


def chi_closed(params, ctx):
    """Closed-form echo decay exponent ``A D² ln2 τ² + B D² π τ``.

    ``ctx.tau`` may be an array; the result then has the same shape.
    """
    d2 = ctx.dispersion_d**2
    tau = np.asarray(ctx.tau, dtype=float)
    out = params.a_phase * d2 * LN2 * tau**2 + params.b_phase * d2 * math.pi * tau
    return out if out.ndim else float(out)


def _quad(func, a, b, cfg, **kw):
    res = integrate.quad(
        func, a, b, epsabs=cfg.epsabs, epsrel=cfg.epsrel, limit=cfg.limit, full_output=1, **kw
    )
    value, abserr = res[0], res[1]
    if len(res) > 3 and abserr > cfg.tolerance * max(abs(value), 1.0):
        raise QuadratureError(
            f"quadrature on [{a}, {b}] did not converge: {res[3]!r}", achieved=abserr
        )
    return value


def _sin4_weighted(c2, c3, cfg):
    """∫₀^∞ sin⁴(x)·(c2/x² + c3/x³) dx.

    Direct adaptive quadrature over the first ``periods_direct`` periods,
    then the identity ``sin⁴x = 3/8 − cos(2x)/2 + cos(4x)/8`` turns the rest
    into smooth and cosine-weighted pieces (QAWO up to the cutoff, QAWF
    beyond it).
    """
    if c2 == 0 and c3 == 0:
        return 0.0

    def head(x):
        if x == 0.0:
            return 0.0
        s = math.sin(x)
        return s**4 * (c2 + c3 / x) / (x * x)

    def envelope(x):
        return (c2 + c3 / x) / (x * x)

    x_split = math.pi * cfg.periods_direct
    x_max = cfg.theta_max / 4.0
    points = [math.pi * k for k in range(1, cfg.periods_direct)]
    total = _quad(head, 0.0, x_split, cfg, points=points)

    total += 0.375 * _quad(envelope, x_split, x_max, cfg)
    total -= 0.5 * _quad(envelope, x_split, x_max, cfg, weight="cos", wvar=2.0)
    total += 0.125 * _quad(envelope, x_split, x_max, cfg, weight="cos", wvar=4.0)
    if cfg.include_tail:
        total += 0.375 * _quad(envelope, x_max, np.inf, cfg)
        total -= 0.5 * _quad(envelope, x_max, np.inf, cfg, weight="cos", wvar=2.0)
        total += 0.125 * _quad(envelope, x_max, np.inf, cfg, weight="cos", wvar=4.0)
    return total


def sin4_moment(power, cfg=None):
    """Numerically evaluate ``∫₀^∞ sin⁴x / x^power dx`` for ``power`` in {2, 3}.

    The exact values are π/4 and ln 2.
    """
    cfg = cfg or QuadratureConfig()
    if power == 2:
        return _sin4_weighted(1.0, 0.0, cfg)
    if power == 3:
        return _sin4_weighted(0.0, 1.0, cfg)
    raise ValueError("power must be 2 or 3")


def chi_numeric(params, ctx, cfg=None):
    """Echo decay exponent by quadrature of the filtered PSD.

    Integrates ``½ D² ∫|F(ω,τ)|² S(ω) dω`` in the dimensionless variable
    ``x = ωτ/4``, where it becomes
    ``D² τ ∫₀^∞ sin⁴x/x² · (A τ / x + 4 B) dx``.  Independent of
    :func:`chi_closed`, which it is used to check.

    Raises
    ------
    QuadratureError
        If a sub-integral misses ``cfg.tolerance``.
    """
    cfg = cfg or QuadratureConfig()
    tau = float(ctx.tau)
    wa = params.a_phase * tau
    wb = 4.0 * params.b_phase
    scale = wa + wb
    if scale == 0 or ctx.dispersion_d == 0:
        return 0.0
    integral = _sin4_weighted(wb / scale, wa / scale, cfg)
    return ctx.dispersion_d**2 * tau * scale * integral


def dephasing_rate_echo(params, dispersion_d):
    """Effective single-exponential echo dephasing rate [1/s].

    ``√(A_φω ln2)·|D| + B_φω π D²``, i.e. the Gaussian 1/f factor
    ``exp(-aτ²)`` replaced by ``exp(-√a τ)``.
    """
    d = np.abs(np.asarray(dispersion_d, dtype=float))
    out = math.sqrt(params.a_phase * LN2) * d + params.b_phase * math.pi * d**2
    return out if out.ndim else float(out)


def _angular(kappa, chi_disp, over_2pi):
    if over_2pi:
        return 2 * math.pi * kappa, 2 * math.pi * chi_disp
    return kappa, chi_disp


def photon_shot_coefficient(kappa, chi_disp, over_2pi=False):
    """Dephasing rate per resonator photon, ``4χ²κ/(κ² + 4χ²)`` [1/s].

    ``kappa`` and ``chi_disp`` are angular (rad/s) unless ``over_2pi``.
    """
    kappa, chi_disp = _angular(kappa, chi_disp, over_2pi)
    if not kappa > 0:
        raise ValueError("kappa must be positive")
    c2 = 4.0 * chi_disp**2
    return c2 * kappa / (kappa**2 + c2)


def photon_shot_dephasing(nbar, kappa, chi_disp, over_2pi=False):
    """Thermal photon shot-noise dephasing rate ``Γφ`` [1/s] for ``nbar`` photons."""
    if np.any(np.asarray(nbar) < 0):
        raise ValueError("nbar must be nonnegative")
    return photon_shot_coefficient(kappa, chi_disp, over_2pi) * nbar


def added_photons(gamma_phi_add, kappa, chi_disp, over_2pi=False):
    """Invert the shot-noise formula: photons needed to add ``gamma_phi_add`` [1/s]."""
    coeff = photon_shot_coefficient(kappa, chi_disp, over_2pi)
    if coeff == 0:
        raise ZeroDivisionError("chi_disp = 0: qubit insensitive to photon number")
    return gamma_phi_add / coeff


def t2e_from_components(t1, tphi):
    """Echo coherence time from ``1/T2e = 1/Tφ + 1/(2 T1)``; ``tphi`` may be inf."""
    if not (t1 > 0 and tphi > 0):
        raise ValueError("t1 and tphi must be positive")
    return 1.0 / (1.0 / tphi + 0.5 / t1)


def tphi_from(t1, t2e):
    """Pure dephasing time implied by measured ``t1`` and ``t2e``.

    Returns ``inf`` when ``t2e == 2 t1`` exactly.
    """
    if not (t1 > 0 and t2e > 0):
        raise ValueError("t1 and t2e must be positive")
    if t2e > 2.0 * t1:
        raise ValueError(f"t2e = {t2e} exceeds 2*t1 = {2 * t1}: negative dephasing rate")
    rate = 1.0 / t2e - 0.5 / t1
    return math.inf if rate == 0 else 1.0 / rate
