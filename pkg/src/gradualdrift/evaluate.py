"""Score detected drifts against ground-truth change regions.

Regions are half-open ``(start, end)`` trace intervals. A sudden drift at
trace ``t`` is scored as the region ``(t, t + 1)``.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from statistics import fmean
from typing import Iterable, Optional, Sequence

__all__ = [
    "MatchRecord",
    "EvalResult",
    "delay",
    "overlap",
    "match",
    "detections_from_report",
    "evaluate_report",
    "AGGREGATE_HEADER",
    "aggregate_csv",
]

AGGREGATE_HEADER = ("log", "pattern", "distribution", "f_score", "mean_delay", "mean_overlap")


def _region(r) -> tuple:
    if isinstance(r, int):
        return (r, r + 1)
    a, b = r
    return (int(a), int(b))


def _length(r) -> int:
    return r[1] - r[0]


def _intersects(a, b) -> bool:
    # zero-width regions count as one trace wide
    a_end = max(a[1], a[0] + 1)
    b_end = max(b[1], b[0] + 1)
    return a[0] < b_end and b[0] < a_end


def delay(real, detected) -> int:
    return abs(_region(real)[0] - _region(detected)[0])


def overlap(real, detected) -> float:
    """Share of the real region covered by the detected one."""
    r, d = _region(real), _region(detected)
    if _length(r) == 0:
        return 1.0 if r[0] == d[0] else 0.0
    inter = min(r[1], d[1]) - max(r[0], d[0])
    return max(inter, 0) / _length(r)


@dataclass(frozen=True)
class MatchRecord:
    real: tuple
    detected: tuple
    delay: int
    overlap: float


@dataclass(frozen=True)
class EvalResult:
    tp: int
    fp: int
    fn: int
    per_match: tuple = field(default_factory=tuple)

    @property
    def precision_eval(self) -> float:
        d = self.tp + self.fp
        return self.tp / d if d else 0.0

    @property
    def recall(self) -> float:
        d = self.tp + self.fn
        return self.tp / d if d else 0.0

    @property
    def f_score(self) -> float:
        p, r = self.precision_eval, self.recall
        return 2 * p * r / (p + r) if p + r else 0.0

    @property
    def mean_delay(self) -> Optional[float]:
        return fmean(m.delay for m in self.per_match) if self.per_match else None

    @property
    def mean_overlap(self) -> Optional[float]:
        return fmean(m.overlap for m in self.per_match) if self.per_match else None

    def to_dict(self) -> dict:
        return {
            "tp": self.tp,
            "fp": self.fp,
            "fn": self.fn,
            "precision_eval": self.precision_eval,
            "recall": self.recall,
            "f_score": self.f_score,
            "mean_delay": self.mean_delay,
            "mean_overlap": self.mean_overlap,
            "per_match": [
                {"real": list(m.real), "detected": list(m.detected),
                 "delay": m.delay, "overlap": m.overlap}
                for m in self.per_match
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def match(real: Sequence, detected: Iterable) -> EvalResult:
    """Greedy chronological matching of detections to real regions.

    A detection is a true positive when it overlaps a real region that no
    earlier detection matched; the earliest such region wins.
    """
    reals = [_region(r) for r in real]
    dets = sorted((_region(d) for d in detected))
    matched = [False] * len(reals)
    records = []
    fp = 0
    for d in dets:
        hit = next((k for k, r in enumerate(reals) if not matched[k] and _intersects(r, d)), None)
        if hit is None:
            fp += 1
            continue
        matched[hit] = True
        r = reals[hit]
        records.append(MatchRecord(r, d, delay(r, d), overlap(r, d)))
    fn = matched.count(False)
    return EvalResult(len(records), fp, fn, tuple(records))


def detections_from_report(report) -> list:
    """Regions from a DriftReport or its JSON dict: gradual spans plus sudden points."""
    if not isinstance(report, dict):
        report = report.to_dict()
    out = [(int(t), int(t) + 1) for t in report.get("sudden", [])]
    out += [(int(a), int(b)) for a, b in report.get("gradual", [])]
    return sorted(out)


def evaluate_report(report, truth) -> EvalResult:
    regions = truth.regions if hasattr(truth, "regions") else truth["regions"]
    return match(regions, detections_from_report(report))


def _fmt(v) -> str:
    return "" if v is None else f"{v:.6f}"


def aggregate_csv(rows: Iterable[tuple]) -> str:
    """CSV text from ``(log, pattern, distribution, EvalResult)`` rows."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(AGGREGATE_HEADER)
    for name, pattern, dist, res in rows:
        w.writerow([name, pattern, dist, _fmt(res.f_score), _fmt(res.mean_delay),
                    _fmt(res.mean_overlap)])
    return buf.getvalue()
