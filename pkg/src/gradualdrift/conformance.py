"""Fitness and precision estimators of a window against a behaviour model.

Both return a :class:`MetricValue` that keeps the exact ratio, so replayed
values can be compared without rounding.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .model import BehaviorModel, behavior_of, df_pairs_of

__all__ = ["MetricValue", "fitness", "precision", "observed_pairs"]


@dataclass(frozen=True)
class MetricValue:
    numerator: int
    denominator: int

    def __post_init__(self):
        if self.numerator < 0 or self.denominator < 0:
            raise ValueError("metric counts must be non-negative")
        if self.denominator == 0:
            if self.numerator != 0:
                raise ValueError("0 denominator needs a 0 numerator")
        elif self.numerator > self.denominator:
            raise ValueError("metric value above 1")

    @property
    def fraction(self) -> Fraction:
        # 0/0 only arises for vacuous precision, which counts as 1
        if self.denominator == 0:
            return Fraction(1)
        return Fraction(self.numerator, self.denominator)

    @property
    def value(self) -> float:
        return float(self.fraction)

    def __float__(self):
        return self.value


def observed_pairs(window: Sequence) -> frozenset:
    pairs = set()
    for t in window:
        pairs |= df_pairs_of(behavior_of(t))
    return frozenset(pairs)


def fitness(window: Sequence, model: BehaviorModel) -> MetricValue:
    """Share of window traces (with multiplicity) whose behaviour the model supports."""
    if len(window) == 0:
        raise ValueError("fitness of an empty window")
    fit = sum(1 for t in window if behavior_of(t) in model.variants)
    return MetricValue(fit, len(window))


def precision(window: Sequence, model: BehaviorModel) -> MetricValue:
    """Share of the model's directly-follows pairs that occur in the window.

    A model without any pair yields 0/0, read as 1.
    """
    if len(window) == 0:
        raise ValueError("precision of an empty window")
    seen = observed_pairs(window)
    return MetricValue(len(seen & model.df_pairs), len(model.df_pairs))
