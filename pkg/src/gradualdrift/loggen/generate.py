"""Interleave two process trees into a log with known gradual change regions."""
from __future__ import annotations

import json
import random
from dataclasses import dataclass

from ..eventlog import traces_from_behaviors
from .distributions import DriftDistribution
from .tree import ProcessTree, language, sample_trace

__all__ = ["GroundTruth", "GeneratorConfig", "generate_log", "BLOCK_SIZE"]

BLOCK_SIZE = 500


@dataclass(frozen=True)
class GroundTruth:
    log_size: int
    regions: tuple  # of (start, end) half-open trace intervals

    def __post_init__(self):
        regions = tuple((int(a), int(b)) for a, b in self.regions)
        object.__setattr__(self, "regions", regions)
        prev_end = None
        for a, b in regions:
            if not 0 <= a <= b <= self.log_size:
                raise ValueError(f"region [{a}, {b}) outside a log of {self.log_size} traces")
            if prev_end is not None and a <= prev_end:
                raise ValueError("regions must be sorted and separated by at least one trace")
            prev_end = b

    def to_dict(self) -> dict:
        return {"log_size": self.log_size, "regions": [list(r) for r in self.regions]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict()) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "GroundTruth":
        try:
            return cls(int(data["log_size"]), tuple(tuple(r) for r in data["regions"]))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"invalid ground truth: {exc!r}") from None

    @classmethod
    def from_json(cls, text: str) -> "GroundTruth":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class GeneratorConfig:
    base: ProcessTree
    derived: ProcessTree
    distribution: DriftDistribution
    drift_count: int = 9
    seed: int = 0
    block: int = BLOCK_SIZE

    def run(self):
        return generate_log(self.base, self.derived, self.distribution,
                            self.drift_count, self.seed, self.block)


def generate_log(base: ProcessTree, derived: ProcessTree, dist: DriftDistribution,
                 drift_count: int, seed, block: int = BLOCK_SIZE):
    """Alternate stable blocks and mixed regions, ending with a stable block.

    Returns ``(EventLog, GroundTruth)``. Inside a region the trace at offset
    ``k`` comes from the incoming model with probability ``dist.cdf(k)``.
    """
    if drift_count < 1:
        raise ValueError("drift_count must be at least 1")
    if block < 1:
        raise ValueError("block must be positive")
    if language(base) == language(derived):
        raise ValueError("base and derived models have the same behaviour")
    rng = random.Random(seed)
    width = dist.region_width()
    probs = [dist.cdf(k) for k in range(width)]
    current, other = base, derived
    behaviors = []
    regions = []
    for _ in range(drift_count):
        behaviors.extend(sample_trace(current, rng) for _ in range(block))
        start = len(behaviors)
        for p in probs:
            src = other if rng.random() < p else current
            behaviors.append(sample_trace(src, rng))
        regions.append((start, len(behaviors)))
        current, other = other, current
    behaviors.extend(sample_trace(current, rng) for _ in range(block))
    log = traces_from_behaviors(behaviors)
    return log, GroundTruth(len(behaviors), tuple(regions))
