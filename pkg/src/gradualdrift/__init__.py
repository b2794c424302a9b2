"""Detect gradual and sudden concept drift in process event logs."""
from .conformance import MetricValue, fitness, precision
from .detector import DetectorConfig, DriftReport, adjust_window, detect
from .evaluate import EvalResult, match
from .eventlog import Event, EventLog, LogFormatError, Trace, parse_csv, parse_xes, read_log
from .model import BehaviorModel, discover
from .stats import RegressionResult, regress

__version__ = "0.1.0"

__all__ = [
    "BehaviorModel",
    "DetectorConfig",
    "DriftReport",
    "EvalResult",
    "Event",
    "EventLog",
    "LogFormatError",
    "MetricValue",
    "RegressionResult",
    "Trace",
    "adjust_window",
    "detect",
    "discover",
    "fitness",
    "match",
    "parse_csv",
    "parse_xes",
    "precision",
    "read_log",
    "regress",
]
