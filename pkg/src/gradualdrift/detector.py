"""Sliding-window drift detection driven by fitness and precision trends.

The detector keeps one behaviour model per detection cycle. For each window
it appends the window's fitness and precision against that model to two
series, flags drift candidates from the slope of the recent values, and
confirms a drift once the last ``n`` windows were all candidates. A drift
confirmed by precision right after one confirmed by fitness is classified
as gradual when the traces between the two points are explained by the
models before and after.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .conformance import MetricValue
from .model import BehaviorModel, behavior_equal, behavior_of, df_pairs_of, discover
from .stats import regress

__all__ = [
    "FITNESS",
    "PRECISION",
    "RESUME_MODES",
    "DetectorConfig",
    "DetectorState",
    "WindowDiagnostic",
    "DriftReport",
    "adjust_window",
    "identify_drift_candidate",
    "identify_step_candidate",
    "confirm_drift",
    "candidate_run_start",
    "pinpoint",
    "classify_drift",
    "detect",
]

FITNESS = "fitness"
PRECISION = "precision"
RESUME_MODES = ("anchored", "in_place", "jump")

_GROWTH = {
    "double": lambda n, base: 2 * n,
    "add": lambda n, base: n + base,
}


def identify_drift_candidate(n: int, series: Sequence[float], flags: Sequence[bool],
                             significance: float = 0.05) -> bool:
    """Regression rule: a significant slope over the last n+1 values, or a
    non-significant one that continues a candidate run."""
    if len(series) <= n:
        return False
    tail = series[-(n + 1):]
    previous = bool(flags) and flags[-1]
    if min(tail) == max(tail):
        return previous
    res = regress(tail)
    if res.p_value < significance and res.slope != 0:
        return True
    return previous


def identify_step_candidate(n: int, series: Sequence[float], flags: Sequence[bool],
                            significance: float = 0.05) -> bool:
    """Any change between the last two values opens or extends a run; a flat
    step only extends one. Used to replay hand-worked examples whose
    windows are too small for a meaningful t-test."""
    if len(series) <= n:
        return False
    if series[-1] != series[-2]:
        return True
    return bool(flags) and flags[-1]


def confirm_drift(n: int, flags: Sequence[bool]) -> bool:
    return len(flags) >= n and all(flags[-n:])


def candidate_run_start(flags: Sequence[bool]) -> int:
    """Position of the first flag in the maximal run of True flags ending at the last flag."""
    k = len(flags)
    while k > 0 and flags[k - 1]:
        k -= 1
    if k == len(flags):
        raise ValueError("the last flag is not a candidate")
    return k


def pinpoint(kind: str, window_end: int, window_size: int) -> int:
    """Trace index of a confirmed drift from the first window of its candidate run.

    Fitness drifts sit on the newest trace of that window, precision drifts on
    its oldest trace.
    """
    if kind == FITNESS:
        return window_end
    if kind == PRECISION:
        return max(window_end - window_size + 1, 0)
    raise ValueError(f"unknown drift kind {kind!r}")


def adjust_window(min_window: int, traces: Sequence, growth="double",
                  discovery: Callable = discover) -> int:
    """Grow the window while three consecutive windows show the same behaviour.

    Returns the largest size at which the three windows agreed, or
    ``min_window`` when they already differ at that size. Growth also stops
    when three windows of the next size would not fit in ``traces``.
    """
    if min_window < 2:
        raise ValueError("min_window must be at least 2")
    if growth in (None, "none"):
        return min_window
    grow = _GROWTH[growth] if isinstance(growth, str) else growth
    n = min_window
    if len(traces) < 3 * n:
        return n
    stable = None
    while True:
        m1 = discovery(traces[0:n])
        m2 = discovery(traces[n:2 * n])
        m3 = discovery(traces[2 * n:3 * n])
        if not (behavior_equal(m1, m2) and behavior_equal(m2, m3)):
            return n if stable is None else stable
        stable = n
        nxt = grow(n, min_window)
        if 3 * nxt > len(traces):
            return n
        n = nxt


@dataclass(frozen=True)
class DetectorConfig:
    min_window: int = 50
    significance: float = 0.05
    # "double", "add", "none" (fixed window) or a callable (n, min_window) -> n
    window_growth: object = "double"
    # "anchored": the next cycle starts with the window the new model comes
    #   from, placed at the drift point after a fitness drift and right after
    #   the confirming window after a precision drift
    # "in_place": next model from the confirming window, resume at the next trace
    # "jump": skip ahead by the new window size and discover there
    resume: str = "anchored"
    candidate_rule: Optional[Callable] = None
    discovery: Callable = discover

    def __post_init__(self):
        if self.min_window < 2:
            raise ValueError("min_window must be at least 2")
        if not 0 < self.significance < 1:
            raise ValueError("significance must be in (0, 1)")
        if self.resume not in RESUME_MODES:
            raise ValueError(f"unknown resume mode {self.resume!r}")


@dataclass
class DetectorState:
    window_size: int
    index: int
    fitness_series: list = field(default_factory=list)
    precision_series: list = field(default_factory=list)
    fitness_flags: list = field(default_factory=list)
    precision_flags: list = field(default_factory=list)
    window_ends: list = field(default_factory=list)
    model_history: list = field(default_factory=list)
    last_drift_trace: int = 0
    last_drift_kind: Optional[str] = None
    pending_drift: Optional[int] = None

    def reset_cycle(self):
        self.fitness_series = []
        self.precision_series = []
        self.fitness_flags = []
        self.precision_flags = []
        self.window_ends = []


@dataclass(frozen=True)
class WindowDiagnostic:
    index: int
    window_size: int
    fitness: MetricValue
    precision: MetricValue
    cand_fitness: bool
    cand_precision: bool
    model_id: int


@dataclass
class DriftReport:
    sudden: list = field(default_factory=list)
    gradual: list = field(default_factory=list)
    diagnostics: list = field(default_factory=list)
    # (trace index, metric that confirmed it, window end where confirmed)
    confirmations: list = field(default_factory=list)
    # model of each detection cycle; diagnostics refer to it by position
    models: list = field(default_factory=list)

    def to_dict(self, diagnostics_csv: Optional[str] = None) -> dict:
        return {
            "sudden": list(self.sudden),
            "gradual": [list(g) for g in self.gradual],
            "diagnostics_csv": diagnostics_csv,
        }

    def to_json(self, diagnostics_csv: Optional[str] = None) -> str:
        return json.dumps(self.to_dict(diagnostics_csv), indent=2) + "\n"

    def diagnostics_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "window_size", "fitness_num", "fitness_den", "precision_num",
                    "precision_den", "cand_fitness", "cand_precision", "model_id"])
        for d in self.diagnostics:
            w.writerow([d.index, d.window_size, d.fitness.numerator, d.fitness.denominator,
                        d.precision.numerator, d.precision.denominator,
                        int(d.cand_fitness), int(d.cand_precision), d.model_id])
        return buf.getvalue()


def classify_drift(model_history: Sequence[BehaviorModel], sublog: Sequence,
                   report: DriftReport, drift_at: int, kind: Optional[str] = None,
                   previous_kind: Optional[str] = None) -> DriftReport:
    """File the drift at ``drift_at`` as sudden, or merge it with the last
    sudden drift into a gradual region.

    ``sublog`` holds the traces from the previous drift up to ``drift_at``.
    When ``kind`` is given, a gradual region additionally needs a fitness
    drift followed by a precision drift.
    """
    gradual = False
    if len(model_history) > 2 and report.sudden:
        before = model_history[-3]
        after = model_history[-1]
        behaviors = [behavior_of(t) for t in sublog]
        in_before = [b in before.variants for b in behaviors]
        in_after = [b in after.variants for b in behaviors]
        gradual = (
            any(in_before)
            and any(in_after)
            and all(x or y for x, y in zip(in_before, in_after))
        )
        if kind is not None and not (kind == PRECISION and previous_kind == FITNESS):
            gradual = False
        if gradual and report.sudden[-1] >= drift_at:
            gradual = False
    if gradual:
        start = report.sudden.pop()
        report.gradual.append((start, drift_at))
    else:
        report.sudden.append(drift_at)
    return report


def detect(log: Sequence, config: DetectorConfig = DetectorConfig()) -> DriftReport:
    """Run drift detection over a log (an EventLog or any sequence of traces)."""
    traces = list(getattr(log, "traces", log))
    total = len(traces)
    if total < config.min_window:
        raise ValueError(f"log has {total} traces, fewer than the minimum window {config.min_window}")
    rule = config.candidate_rule or identify_drift_candidate
    disc = config.discovery
    alpha = config.significance

    def sizing(rest):
        return adjust_window(config.min_window, rest, config.window_growth, disc)

    # behaviours and their pairs are computed once; windows only look them up
    behaviors = [behavior_of(t) for t in traces]
    pairs_of = {b: df_pairs_of(b) for b in set(behaviors)}

    n = sizing(traces)
    state = DetectorState(window_size=n, index=n - 1)
    state.model_history.append(disc(traces[0:n]))
    report = DriftReport()

    while state.index < total:
        state.reset_cycle()
        while state.index < total:
            i, n = state.index, state.window_size
            window = behaviors[max(0, i - n + 1):i + 1]
            model = state.model_history[-1]
            fit = MetricValue(sum(b in model.variants for b in window), len(window))
            seen = set().union(*(pairs_of[b] for b in set(window)))
            prec = MetricValue(len(seen & model.df_pairs), len(model.df_pairs))
            state.fitness_series.append(fit.value)
            state.precision_series.append(prec.value)
            state.window_ends.append(i)
            cf = rule(n, state.fitness_series, state.fitness_flags, alpha)
            cp = rule(n, state.precision_series, state.precision_flags, alpha)
            state.fitness_flags.append(cf)
            state.precision_flags.append(cp)
            report.diagnostics.append(
                WindowDiagnostic(i, len(window), fit, prec, cf, cp, len(state.model_history) - 1)
            )

            if confirm_drift(n, state.fitness_flags):
                kind, flags = FITNESS, state.fitness_flags
            elif confirm_drift(n, state.precision_flags):
                kind, flags = PRECISION, state.precision_flags
            else:
                state.index += 1
                continue

            first = candidate_run_start(flags)
            tau = pinpoint(kind, state.window_ends[first], n)
            if report.confirmations:
                # keep drift points strictly increasing
                tau = max(tau, state.last_drift_trace + 1)
            state.pending_drift = tau
            sublog = traces[state.last_drift_trace:tau + 1]

            new_n = sizing(traces[i + 1:])
            if config.resume == "anchored":
                # arrivals keep the mixed traces in view; departures may still
                # hold leftovers inside the confirming run, so skip past it
                anchor = tau if kind == FITNESS else i + 1
                if anchor >= total:
                    anchor = max(0, total - new_n)
                fresh = traces[anchor:anchor + new_n]
                next_index = anchor + new_n - 1
            else:
                next_index = i + new_n if config.resume == "jump" else i + 1
                end = min(i if config.resume == "in_place" else next_index, total - 1)
                fresh = traces[max(0, end - new_n + 1):end + 1]
            state.model_history.append(disc(fresh))
            state.window_size = new_n

            classify_drift(state.model_history, sublog, report, tau, kind, state.last_drift_kind)
            report.confirmations.append((tau, kind, i))
            state.last_drift_trace = tau
            state.last_drift_kind = kind
            state.index = next_index
            break
    report.models = list(state.model_history)
    return report
