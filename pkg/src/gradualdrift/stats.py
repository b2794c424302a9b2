"""Ordinary least squares slope with a two-sided t-test on the slope.

x-coordinates are the implicit indices 0..n-1. The Student-t tail comes from
the regularized incomplete beta function, evaluated with a Lentz continued
fraction, so no statistics package is needed at runtime.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

__all__ = [
    "RegressionResult",
    "regress",
    "betainc",
    "t_sf_two_sided",
    "t_cdf",
]

_EPS = 1e-15
_TINY = 1e-300
_MAX_ITER = 500


def _betacf(a: float, b: float, x: float) -> float:
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise ArithmeticError(f"incomplete beta did not converge (a={a}, b={b}, x={x})")


def betainc(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta I_x(a, b)."""
    if a <= 0 or b <= 0:
        raise ValueError("betainc needs a > 0 and b > 0")
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    log_front = (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
        + a * math.log(x) + b * math.log1p(-x)
    )
    front = math.exp(log_front)
    # the continued fraction converges fast only below the mean
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def t_sf_two_sided(t: float, df: float) -> float:
    """P(|T| >= |t|) for Student's t with ``df`` degrees of freedom."""
    if df <= 0:
        raise ValueError("degrees of freedom must be positive")
    if math.isinf(t):
        return 0.0
    return betainc(df / 2.0, 0.5, df / (df + t * t))


def t_cdf(t: float, df: float) -> float:
    tail = 0.5 * t_sf_two_sided(t, df)
    return 1.0 - tail if t > 0 else tail


@dataclass(frozen=True)
class RegressionResult:
    slope: float
    intercept: float
    stderr_slope: float
    t_stat: Optional[float]
    p_value: float
    n_points: int

    def significant(self, alpha: float = 0.05) -> bool:
        return self.p_value < alpha


def regress(series: Sequence[float]) -> RegressionResult:
    """OLS fit of ``series`` against 0..n-1 with a t-test of zero slope.

    Perfect fits (zero residuals) get p = 0 when the slope is non-zero and
    p = 1 when it is zero; ``t_stat`` is None there. With only two points
    there are no degrees of freedom left and the same convention applies
    to exact fits, otherwise p = 1.
    """
    n = len(series)
    if n < 2:
        raise ValueError("regression needs at least two points")
    ys = [float(v) for v in series]
    # centre on the first value: identical inputs then give exact zeros
    y0 = ys[0]
    d = [y - y0 for y in ys]
    xbar = (n - 1) / 2.0
    dbar = math.fsum(d) / n
    sxx = n * (n * n - 1) / 12.0
    sxy = math.fsum((i - xbar) * di for i, di in enumerate(d))
    slope = sxy / sxx
    intercept = y0 + dbar - slope * xbar
    syy = math.fsum((di - dbar) ** 2 for di in d)
    ssr = max(syy - slope * sxy, 0.0)
    if syy > 0.0:
        # recompute directly when cancellation makes the shortcut unreliable
        ssr = math.fsum((di - dbar - slope * (i - xbar)) ** 2 for i, di in enumerate(d))

    perfect = ssr <= 1e-24 * syy or syy == 0.0
    if perfect:
        p = 0.0 if slope != 0.0 else 1.0
        return RegressionResult(slope, intercept, 0.0, None, p, n)
    dof = n - 2
    if dof == 0:
        return RegressionResult(slope, intercept, 0.0, None, 1.0, n)
    se = math.sqrt(ssr / dof / sxx)
    t = slope / se
    return RegressionResult(slope, intercept, se, t, t_sf_two_sided(t, dof), n)
