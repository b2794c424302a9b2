"""Cumulative probability curves that govern how a new model takes over."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from statistics import NormalDist

__all__ = ["DriftDistribution", "STOP_THRESHOLD", "BENCHMARK_DISTRIBUTIONS", "parse_distribution"]

# a change region ends at the first offset whose cdf exceeds this value
STOP_THRESHOLD = Fraction(999, 1000)
_MAX_WIDTH = 10_000_000

_ARITY = {"linear": 1, "gaussian": 2, "exponential": 1, "constant": 2}


def _number(text: str):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not a number: {text!r}") from None


@dataclass(frozen=True)
class DriftDistribution:
    """``params`` by kind: linear (slope,), gaussian (mu, sigma),
    exponential (lam,), constant (p, n)."""

    kind: str
    params: tuple

    def __post_init__(self):
        if self.kind not in _ARITY:
            raise ValueError(f"unknown distribution kind {self.kind!r}")
        if len(self.params) != _ARITY[self.kind]:
            raise ValueError(f"{self.kind} takes {_ARITY[self.kind]} parameter(s)")
        # floats go through their shortest decimal form, so 0.001 stays 1/1000
        params = tuple(Fraction(repr(p)) if isinstance(p, float) else Fraction(p)
                       for p in self.params)
        object.__setattr__(self, "params", params)
        k, p = self.kind, self.params
        if k == "linear" and not p[0] > 0:
            raise ValueError("linear slope must be positive")
        if k == "gaussian" and not p[1] > 0:
            raise ValueError("gaussian spread must be positive")
        if k == "exponential" and not p[0] > 0:
            raise ValueError("exponential rate must be positive")
        if k == "constant":
            if not 0 <= p[0] <= 1:
                raise ValueError("constant probability must be in [0, 1]")
            if p[1].denominator != 1 or p[1] < 0:
                raise ValueError("constant length must be a non-negative integer")

    @classmethod
    def linear(cls, slope):
        return cls("linear", (slope,))

    @classmethod
    def gaussian(cls, mu, sigma):
        return cls("gaussian", (mu, sigma))

    @classmethod
    def exponential(cls, lam):
        return cls("exponential", (lam,))

    @classmethod
    def constant(cls, p, n):
        return cls("constant", (p, n))

    def cdf(self, offset: int) -> float:
        """Probability of drawing from the new model ``offset`` traces into a region."""
        return float(self._cdf_exact(offset))

    def _cdf_exact(self, k: int):
        p = self.params
        if self.kind == "linear":
            # exact rationals keep the 0.999 boundary stable
            return min(Fraction(1), p[0] * k)
        if self.kind == "gaussian":
            return NormalDist(float(p[0]), float(p[1])).cdf(k)
        if self.kind == "exponential":
            return -math.expm1(-float(p[0]) * k)
        return p[0] if k < p[1] else Fraction(1)

    def region_width(self) -> int:
        k = 0
        while self._cdf_exact(k) <= STOP_THRESHOLD:
            k += 1
            if k > _MAX_WIDTH:
                raise ValueError(f"{self} never reaches the stopping threshold")
        return k

    def __str__(self):
        return ":".join([self.kind] + [_fmt(v) for v in self.params])


def _fmt(v: Fraction) -> str:
    if v.denominator == 1:
        return str(v.numerator)
    return repr(float(v))


def parse_distribution(text: str) -> DriftDistribution:
    """Parse ``linear:<slope>``, ``gaussian:<mu>:<sigma>``, ``exponential:<lambda>``
    or ``constant:<p>:<n>``."""
    kind, *rest = text.strip().split(":")
    if kind not in _ARITY:
        raise ValueError(f"unknown distribution kind {kind!r}")
    if len(rest) != _ARITY[kind]:
        raise ValueError(f"{kind} expects {_ARITY[kind]} parameter(s), got {text!r}")
    return DriftDistribution(kind, tuple(_number(x) for x in rest))


BENCHMARK_DISTRIBUTIONS = tuple(parse_distribution(s) for s in (
    "linear:0.001",
    "linear:0.002",
    "linear:0.005",
    "linear:0.01",
    "gaussian:20:10",
    "gaussian:50:30",
    "exponential:0.05",
    "exponential:0.1",
    "exponential:0.5",
    "constant:0.5:100",
    "constant:0.5:200",
    "constant:0.5:500",
))
