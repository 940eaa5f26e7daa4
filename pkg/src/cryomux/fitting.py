"""Least-squares fits of coherence decays."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import OptimizeWarning, curve_fit, least_squares

__all__ = ["FitError", "FitResult", "fit_exponential", "fit_gauss_exponential", "fit_trace"]


class FitError(RuntimeError):
    """A decay fit failed or its input cannot constrain a rate."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


@dataclass(frozen=True, eq=False)
class FitResult:
    """Fitted decay parameters.

    ``rate`` is the exponential rate; for the Gaussian-exponential model
    ``gauss_rate`` holds the Gaussian rate and :attr:`effective_rate` their
    sum, the single-exponential equivalent used downstream.
    """

    rate: float
    amplitude: float
    offset: float
    covariance: np.ndarray
    model: str = "exponential"
    gauss_rate: float = 0.0
    nfev: Optional[int] = None

    @property
    def rate_stderr(self):
        return float(np.sqrt(self.covariance[0, 0]))

    @property
    def effective_rate(self):
        return self.rate + self.gauss_rate

    @property
    def effective_rate_stderr(self):
        if self.model == "exponential":
            return self.rate_stderr
        # rate and gauss_rate occupy the first two slots
        c = self.covariance
        return float(np.sqrt(c[0, 0] + c[1, 1] + 2 * c[0, 1]))


def _arrays(trace):
    t = np.asarray(trace.times, dtype=float)
    y = np.asarray(trace.signal, dtype=float)
    if t.size < 5:
        raise FitError(f"need at least 5 points, got {t.size}")
    if np.ptp(y) <= 1e-12 * max(1.0, np.abs(y).max()):
        raise FitError("degenerate trace: signal is constant", {"value": float(y[0])})
    return t, y


def _initial_rate(t, y, offset):
    a = y[0] - offset
    if a <= 0:
        return 1.0 / np.ptp(t)
    frac = (y - offset) / a
    below = np.nonzero(frac < np.exp(-1))[0]
    if below.size == 0:
        return 0.3 / t[-1]
    return 1.0 / max(t[below[0]], t[1])


def fit_exponential(trace, offset=True):
    """Fit ``a·exp(-Γt) + c`` by Levenberg-Marquardt.

    Unweighted residuals; the covariance is the Jacobian-based estimate
    scaled by the residual variance.  With ``offset=False`` the constant is
    fixed at 0 and the covariance is padded to 3x3.

    Raises
    ------
    FitError
        Fewer than five points, constant input, or no convergence.
    """
    t, y = _arrays(trace)
    c0 = float(min(y[-1], y.min())) if offset else 0.0
    g0 = _initial_rate(t, y, c0)
    tscale = t[-1]

    # fit in units of the last delay for conditioning
    def model(tt, a, g, c=0.0):
        return a * np.exp(-g * tt) + c

    def jac(tt, a, g, c=0.0):
        e = np.exp(-g * tt)
        cols = [e, -a * tt * e]
        if offset:
            cols.append(np.ones_like(tt))
        return np.stack(cols, axis=1)

    ts = t / tscale
    p0 = [y[0] - c0, g0 * tscale] + ([c0] if offset else [])
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", OptimizeWarning)
            popt, pcov, info, _, _ = curve_fit(
                model, ts, y, p0=p0, jac=jac, method="lm", maxfev=4000, full_output=True
            )
    except (RuntimeError, ValueError) as exc:
        raise FitError(f"exponential fit did not converge: {exc}", {"p0": p0}) from exc
    if not np.all(np.isfinite(popt)):
        raise FitError("exponential fit returned non-finite parameters", {"popt": popt.tolist()})
    scale = np.array([1.0, 1.0 / tscale, 1.0][: len(popt)])
    popt = popt * scale
    pcov = np.where(np.isfinite(pcov), pcov, np.inf) * np.outer(scale, scale)
    if not offset:
        pcov = np.pad(pcov, ((0, 1), (0, 1)))
        popt = np.append(popt, 0.0)
    a, g, c = popt
    # reorder to (rate, amplitude, offset)
    order = [1, 0, 2]
    return FitResult(float(g), float(a), float(c), pcov[np.ix_(order, order)], nfev=info.get("nfev"))


def fit_gauss_exponential(trace, offset=True):
    """Fit ``a·exp(-Γt - (Γ_g t)²) + c`` with ``Γ, Γ_g ≥ 0``.

    Returned covariance is over ``(Γ, Γ_g, a, c)``.
    """
    t, y = _arrays(trace)
    tscale = t[-1]
    ts = t / tscale
    c0 = float(min(y[-1], y.min())) if offset else 0.0
    g0 = _initial_rate(t, y, c0) * tscale

    def unpack(p):
        g, gg, a = p[:3]
        c = p[3] if offset else 0.0
        return g, gg, a, c

    def resid(p):
        g, gg, a, c = unpack(p)
        return a * np.exp(-g * ts - (gg * ts) ** 2) + c - y

    def jac(p):
        g, gg, a, _ = unpack(p)
        e = np.exp(-g * ts - (gg * ts) ** 2)
        cols = [-a * ts * e, -2 * a * gg * ts**2 * e, e]
        if offset:
            cols.append(np.ones_like(ts))
        return np.stack(cols, axis=1)

    best = None
    for split in (0.5, 0.1, 0.9):
        p0 = [g0 * split, g0 * (1 - split), y[0] - c0] + ([c0] if offset else [])
        lb = [0.0, 0.0, -np.inf] + ([-np.inf] if offset else [])
        res = least_squares(resid, p0, jac=jac, bounds=(lb, np.inf), x_scale="jac", xtol=1e-14, ftol=1e-14, gtol=1e-14)
        if best is None or res.cost < best.cost:
            best = res
    if not best.success:
        raise FitError(f"gauss-exponential fit failed: {best.message}")
    p = best.x
    J = best.jac
    dof = max(t.size - p.size, 1)
    s2 = 2 * best.cost / dof
    try:
        cov = np.linalg.pinv(J.T @ J) * s2
    except np.linalg.LinAlgError:
        cov = np.full((p.size, p.size), np.inf)
    scale = np.array([1 / tscale, 1 / tscale, 1.0, 1.0][: p.size])
    cov = cov * np.outer(scale, scale)
    if not offset:
        cov = np.pad(cov, ((0, 1), (0, 1)))
    g, gg, a, c = unpack(p)
    return FitResult(
        float(g / tscale), float(a), float(c), cov, model="gauss_exp", gauss_rate=float(gg / tscale), nfev=best.nfev
    )


def fit_trace(trace, model="exponential", offset=True):
    """Dispatch to :func:`fit_exponential` or :func:`fit_gauss_exponential`."""
    if model == "exponential":
        return fit_exponential(trace, offset=offset)
    if model == "gauss_exp":
        return fit_gauss_exponential(trace, offset=offset)
    raise ValueError(f"unknown fit model {model!r}")
