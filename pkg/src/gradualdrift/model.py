"""Behaviour models discovered from windows of traces.

The default discovery is a *variant model*: the set of distinct behaviours in
the window plus every directly-follows pair seen there. It is exactly what
the fitness and precision estimators consume, nothing more.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

__all__ = [
    "BehaviorModel",
    "Discovery",
    "behavior_of",
    "df_pairs_of",
    "discover",
    "supports",
    "behavior_equal",
]


def behavior_of(trace) -> tuple:
    """Accept a Trace or a plain activity sequence."""
    beh = getattr(trace, "behavior", trace)
    return tuple(beh)


def df_pairs_of(behavior: Sequence[str]) -> frozenset:
    return frozenset(zip(behavior, behavior[1:]))


@dataclass(frozen=True)
class BehaviorModel:
    variants: frozenset
    df_pairs: frozenset
    source_size: int = 0

    def __post_init__(self):
        object.__setattr__(self, "variants", frozenset(tuple(v) for v in self.variants))
        object.__setattr__(self, "df_pairs", frozenset(tuple(p) for p in self.df_pairs))
        if not self.variants:
            raise ValueError("a behaviour model needs at least one variant")

    @classmethod
    def from_variants(cls, variants: Iterable[Sequence[str]], source_size: int = 0) -> "BehaviorModel":
        vs = frozenset(tuple(v) for v in variants)
        pairs = frozenset(p for v in vs for p in df_pairs_of(v))
        return cls(vs, pairs, source_size)

    def to_json(self) -> str:
        return json.dumps(
            {
                "variants": sorted(list(v) for v in self.variants),
                "df_pairs": sorted(list(p) for p in self.df_pairs),
                "source_size": self.source_size,
            },
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "BehaviorModel":
        data = json.loads(text)
        return cls(
            frozenset(tuple(v) for v in data["variants"]),
            frozenset(tuple(p) for p in data["df_pairs"]),
            data.get("source_size", 0),
        )


Discovery = Callable[[Sequence], BehaviorModel]


def discover(traces: Sequence) -> BehaviorModel:
    """Variant-model discovery over a non-empty window of traces."""
    if len(traces) == 0:
        raise ValueError("cannot discover a model from an empty window")
    return BehaviorModel.from_variants((behavior_of(t) for t in traces), len(traces))


def supports(model: BehaviorModel, behavior) -> bool:
    return behavior_of(behavior) in model.variants


def behavior_equal(a: BehaviorModel, b: BehaviorModel) -> bool:
    return a.variants == b.variants
