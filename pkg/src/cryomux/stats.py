"""Welch two-sample t-test, standard errors and boxplot summaries.

The Student-t distribution is evaluated through the regularized incomplete
beta function, computed here with a modified-Lentz continued fraction so the
module needs nothing beyond numpy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "StatsError",
    "WelchResult",
    "BoxSummary",
    "betainc_reg",
    "student_t_cdf",
    "student_t_sf2",
    "welch_t",
    "combined_se",
    "box_summary",
]

_TINY = 1e-300


class StatsError(ValueError):
    """Sample too small or degenerate for the requested statistic."""


def _betacf(x, a, b, rtol, max_iter):
    # Modified Lentz evaluation of the incomplete-beta continued fraction.
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    d = 1.0 / (d if abs(d) > _TINY else _TINY)
    h = d
    for m in range(1, max_iter + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        d = 1.0 / (d if abs(d) > _TINY else _TINY)
        c = 1.0 + aa / c
        c = c if abs(c) > _TINY else _TINY
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        d = 1.0 / (d if abs(d) > _TINY else _TINY)
        c = 1.0 + aa / c
        c = c if abs(c) > _TINY else _TINY
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < rtol:
            return h
    raise ArithmeticError(f"incomplete beta continued fraction did not converge (a={a}, b={b}, x={x})")


def betainc_reg(x, a, b, rtol=1e-12, max_iter=100_000):
    """Regularized incomplete beta function ``I_x(a, b)``."""
    if not (a > 0 and b > 0):
        raise ValueError("a and b must be positive")
    if not 0.0 <= x <= 1.0:
        raise ValueError("x must lie in [0, 1]")
    if x == 0.0 or x == 1.0:
        return x
    log_front = (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b) + a * math.log(x) + b * math.log1p(-x)
    )
    front = math.exp(log_front)
    # the fraction converges fast only on this side of the mean
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(x, a, b, rtol, max_iter) / a
    return 1.0 - front * _betacf(1.0 - x, b, a, rtol, max_iter) / b


def student_t_sf2(t, dof):
    """Two-sided tail probability ``P(|T| ≥ |t|)`` for Student's t."""
    if not dof > 0:
        raise ValueError("dof must be positive")
    if t == 0:
        return 1.0
    if math.isinf(t):
        return 0.0
    t, dof = float(t), float(dof)
    return betainc_reg(dof / (dof + t * t), 0.5 * dof, 0.5)


def student_t_cdf(t, dof):
    """Cumulative distribution function of Student's t with ``dof`` degrees of freedom."""
    tail = 0.5 * student_t_sf2(t, dof)
    return 1.0 - tail if t > 0 else tail


@dataclass(frozen=True)
class WelchResult:
    t_stat: float
    dof: float
    p_two_sided: float
    mean_diff: float
    se: float
    alpha: float = 0.05

    @property
    def significant(self):
        return self.p_two_sided < self.alpha

    @property
    def sign(self):
        """Sign of ``mean(x) - mean(y)``: -1, 0 or 1."""
        return int(np.sign(self.mean_diff))

    def as_dict(self):
        return {
            "t": self.t_stat,
            "dof": self.dof,
            "p": self.p_two_sided,
            "significant": self.significant,
            "mean_diff": self.mean_diff,
            "sign": self.sign,
            "se": self.se,
        }


def _sample(x, name, min_n):
    a = np.asarray(x, dtype=float).ravel()
    if a.size < min_n:
        raise StatsError(f"{name} needs at least {min_n} values, got {a.size}")
    if not np.all(np.isfinite(a)):
        raise StatsError(f"{name} contains non-finite values")
    return a


def _var_terms(x, y):
    x = _sample(x, "x", 2)
    y = _sample(y, "y", 2)
    vx = float(x.var(ddof=1)) / x.size
    vy = float(y.var(ddof=1)) / y.size
    return x, y, vx, vy


def combined_se(x, y):
    """Standard error of ``mean(x) - mean(y)``: ``√(s²ₓ/Nₓ + s²ᵧ/Nᵧ)``."""
    _, _, vx, vy = _var_terms(x, y)
    return math.sqrt(vx + vy)


def welch_t(x, y, alpha=0.05):
    """Welch's unequal-variance two-sample t-test (two-sided).

    Raises
    ------
    StatsError
        Fewer than two values in a sample, or both samples constant.
    """
    x, y, vx, vy = _var_terms(x, y)
    se2 = vx + vy
    if se2 == 0:
        raise StatsError("both samples have zero variance")
    diff = float(x.mean() - y.mean())
    se = math.sqrt(se2)
    t = diff / se
    dof = se2**2 / (vx**2 / (x.size - 1) + vy**2 / (y.size - 1))
    return WelchResult(t, dof, student_t_sf2(t, dof), diff, se, alpha)


@dataclass(frozen=True)
class BoxSummary:
    median: float
    q1: float
    q3: float
    whisker_lo: float
    whisker_hi: float
    outliers: tuple

    @property
    def iqr(self):
        return self.q3 - self.q1

    def as_dict(self):
        return {
            "median": self.median,
            "q1": self.q1,
            "q3": self.q3,
            "whisker_lo": self.whisker_lo,
            "whisker_hi": self.whisker_hi,
            "outliers": list(self.outliers),
        }


def box_summary(x, whis=1.5):
    """Boxplot statistics with linearly interpolated (type-7) quartiles.

    Whiskers sit at the most extreme data inside
    ``[Q1 - whis·IQR, Q3 + whis·IQR]``; points beyond are outliers.
    """
    a = np.sort(_sample(x, "sample", 1))
    q1, med, q3 = np.percentile(a, [25, 50, 75], method="linear")
    iqr = q3 - q1
    lo_fence, hi_fence = q1 - whis * iqr, q3 + whis * iqr
    inside = a[(a >= lo_fence) & (a <= hi_fence)]
    outliers = tuple(float(v) for v in a[(a < lo_fence) | (a > hi_fence)])
    return BoxSummary(float(med), float(q1), float(q3), float(inside[0]), float(inside[-1]), outliers)
