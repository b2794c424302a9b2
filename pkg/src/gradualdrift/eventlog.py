"""Event logs: parsing, canonical ordering and serialization.

A log is read from CSV (``case,timestamp,activity[,extra...]``) or from a
small XES subset. Events are grouped by case and sorted by timestamp, and
traces are ordered by the timestamp of their last event. Both sorts are
stable, so ties keep input order.
"""
from __future__ import annotations

import csv
import io
import os
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from datetime import datetime, timedelta, timezone
from typing import IO, Iterable, Iterator, Sequence, Union

__all__ = [
    "Event",
    "Trace",
    "EventLog",
    "LogFormatError",
    "parse_csv",
    "parse_xes",
    "read_log",
    "write_csv",
    "write_xes",
    "log_behavior",
]

REQUIRED_COLUMNS = ("case", "timestamp", "activity")

Source = Union[bytes, str, IO[bytes], IO[str]]


class LogFormatError(ValueError):
    """Raised when an input log cannot be parsed into a valid EventLog."""


@dataclass(frozen=True)
class Event:
    activity: str
    timestamp: datetime
    case_id: str
    attributes: dict = field(default_factory=dict, hash=False)

    def __post_init__(self):
        if not self.activity:
            raise ValueError("event activity must be non-empty")
        if not self.case_id:
            raise ValueError("event case id must be non-empty")


@dataclass(frozen=True)
class Trace:
    case_id: str
    events: tuple

    def __post_init__(self):
        events = tuple(self.events)
        object.__setattr__(self, "events", events)
        for ev in events:
            if ev.case_id != self.case_id:
                raise ValueError(f"event of case {ev.case_id!r} in trace {self.case_id!r}")
        for a, b in zip(events, events[1:]):
            if b.timestamp < a.timestamp:
                raise ValueError(f"trace {self.case_id!r} is not sorted by timestamp")
        object.__setattr__(self, "_behavior", tuple(ev.activity for ev in events))

    @property
    def behavior(self) -> tuple:
        """Activity names in execution order."""
        return self._behavior

    @property
    def last_timestamp(self) -> datetime:
        return self.events[-1].timestamp

    def __len__(self):
        return len(self.events)


@dataclass(frozen=True)
class EventLog:
    traces: tuple

    def __post_init__(self):
        traces = tuple(self.traces)
        object.__setattr__(self, "traces", traces)
        if not traces:
            raise LogFormatError("empty log")
        seen = set()
        for tr in traces:
            if tr.case_id in seen:
                raise ValueError(f"duplicate case id {tr.case_id!r}")
            seen.add(tr.case_id)
        for a, b in zip(traces, traces[1:]):
            if b.last_timestamp < a.last_timestamp:
                raise ValueError("traces are not ordered by last-event timestamp")

    @classmethod
    def from_events(cls, events: Iterable[Event]) -> "EventLog":
        """Group events into traces and put everything in canonical order."""
        by_case: dict[str, list[Event]] = {}
        for ev in events:
            by_case.setdefault(ev.case_id, []).append(ev)
        # dicts keep first-appearance order, which is the tie-break between traces
        traces = [
            Trace(case, sorted(evs, key=lambda e: e.timestamp))
            for case, evs in by_case.items()
        ]
        traces.sort(key=lambda t: t.last_timestamp)
        return cls(tuple(traces))

    @property
    def behavior_set(self) -> frozenset:
        return frozenset(t.behavior for t in self.traces)

    @property
    def activities(self) -> frozenset:
        return frozenset(a for t in self.traces for a in t.behavior)

    def __len__(self):
        return len(self.traces)

    def __iter__(self) -> Iterator[Trace]:
        return iter(self.traces)

    def __getitem__(self, item):
        return self.traces[item]


def log_behavior(log: EventLog) -> frozenset:
    """Distinct trace behaviours of ``log``."""
    return log.behavior_set


def parse_timestamp(text: str) -> datetime:
    text = text.strip()
    if text.endswith("Z"):
        text = text[:-1] + "+00:00"
    ts = datetime.fromisoformat(text)
    if ts.tzinfo is not None:
        ts = ts.astimezone(timezone.utc).replace(tzinfo=None)
    return ts


def _read_bytes(source: Source) -> bytes:
    if isinstance(source, bytes):
        return source
    if isinstance(source, str):
        return source.encode("utf-8")
    data = source.read()
    return data.encode("utf-8") if isinstance(data, str) else data


def parse_csv(source: Source) -> EventLog:
    """Parse a UTF-8 CSV event log.

    The header must contain ``case``, ``timestamp`` and ``activity``; every
    other column is carried as an event attribute (empty cells are dropped).
    """
    raw = _read_bytes(source)
    if not raw.strip():
        raise LogFormatError("empty file")
    try:
        text = raw.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        raise LogFormatError(f"not valid UTF-8: {exc}") from None
    reader = csv.reader(io.StringIO(text, newline=""))
    header = next(reader, None)
    if not header:
        raise LogFormatError("empty file")
    header = [h.strip() for h in header]
    missing = [c for c in REQUIRED_COLUMNS if c not in header]
    if missing:
        raise LogFormatError(f"missing required column(s): {', '.join(missing)}")
    idx = {name: header.index(name) for name in REQUIRED_COLUMNS}
    extra = [(i, name) for i, name in enumerate(header) if name not in REQUIRED_COLUMNS]

    events = []
    for rownum, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(header):
            raise LogFormatError(f"row {rownum}: expected {len(header)} fields, got {len(row)}")
        try:
            ts = parse_timestamp(row[idx["timestamp"]])
        except ValueError:
            raise LogFormatError(
                f"row {rownum}, column 'timestamp': unparseable timestamp {row[idx['timestamp']]!r}"
            ) from None
        case = row[idx["case"]]
        activity = row[idx["activity"]]
        if not case or not activity:
            raise LogFormatError(f"row {rownum}: empty case or activity")
        attrs = {name: row[i] for i, name in extra if row[i] != ""}
        events.append(Event(activity, ts, case, attrs))
    if not events:
        raise LogFormatError("empty log")
    return EventLog.from_events(events)


def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _attr_map(elem) -> dict:
    out = {}
    for child in elem:
        key = child.get("key")
        if key is not None and child.get("value") is not None and _local(child.tag) != "event":
            out[key] = child.get("value")
    return out


def parse_xes(source: Source) -> EventLog:
    """Parse the XES subset: ``trace`` elements holding ``event`` elements.

    Each event needs ``concept:name`` and ``time:timestamp``; the trace's
    ``concept:name`` is the case id (a positional id is used if absent).
    Nested attributes and extensions are ignored.
    """
    raw = _read_bytes(source)
    try:
        root = ET.fromstring(raw)
    except ET.ParseError as exc:
        raise LogFormatError(f"malformed XML: {exc}") from None
    events = []
    for tnum, trace_el in enumerate(e for e in root if _local(e.tag) == "trace"):
        case = _attr_map(trace_el).get("concept:name") or f"trace_{tnum}"
        for enum_, ev_el in enumerate(e for e in trace_el if _local(e.tag) == "event"):
            attrs = _attr_map(ev_el)
            name = attrs.pop("concept:name", None)
            stamp = attrs.pop("time:timestamp", None)
            if not name:
                raise LogFormatError(f"trace {case!r} event {enum_}: missing concept:name")
            if stamp is None:
                raise LogFormatError(f"trace {case!r} event {enum_}: missing time:timestamp")
            try:
                ts = parse_timestamp(stamp)
            except ValueError:
                raise LogFormatError(
                    f"trace {case!r} event {enum_}: unparseable timestamp {stamp!r}"
                ) from None
            events.append(Event(name, ts, case, attrs))
    if not events:
        raise LogFormatError("empty log")
    return EventLog.from_events(events)


def read_log(path: Union[str, os.PathLike]) -> EventLog:
    """Read a log file, choosing the parser from the extension (.xes or CSV)."""
    with open(path, "rb") as fh:
        data = fh.read()
    if str(path).lower().endswith(".xes"):
        return parse_xes(data)
    return parse_csv(data)


def _attribute_keys(log: EventLog) -> list:
    return sorted({k for t in log for ev in t.events for k in ev.attributes})


def write_csv(log: EventLog, stream: IO[str]) -> None:
    keys = _attribute_keys(log)
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(list(REQUIRED_COLUMNS) + keys)
    for trace in log:
        for ev in trace.events:
            writer.writerow(
                [ev.case_id, ev.timestamp.isoformat(), ev.activity]
                + [ev.attributes.get(k, "") for k in keys]
            )


def write_xes(log: EventLog, stream: IO[str]) -> None:
    root = ET.Element("log", {"xes.version": "1.0"})
    for trace in log:
        tr = ET.SubElement(root, "trace")
        ET.SubElement(tr, "string", {"key": "concept:name", "value": trace.case_id})
        for ev in trace.events:
            el = ET.SubElement(tr, "event")
            ET.SubElement(el, "string", {"key": "concept:name", "value": ev.activity})
            ET.SubElement(el, "date", {"key": "time:timestamp", "value": ev.timestamp.isoformat()})
            for k in sorted(ev.attributes):
                ET.SubElement(el, "string", {"key": k, "value": ev.attributes[k]})
    ET.indent(root)
    stream.write('<?xml version="1.0" encoding="UTF-8"?>\n')
    stream.write(ET.tostring(root, encoding="unicode"))
    stream.write("\n")


def to_csv_text(log: EventLog) -> str:
    buf = io.StringIO()
    write_csv(log, buf)
    return buf.getvalue()


def to_xes_text(log: EventLog) -> str:
    buf = io.StringIO()
    write_xes(log, buf)
    return buf.getvalue()


def traces_from_behaviors(behaviors: Sequence[Sequence[str]], start: datetime | None = None) -> EventLog:
    """Build a log from plain activity sequences, one minute per event.

    Case ids are the 1-based position of each trace (``"1"``, ``"2"``, ...).
    """
    t = start or datetime(2020, 1, 1)
    step = timedelta(minutes=1)
    traces = []
    for k, beh in enumerate(behaviors, start=1):
        case = str(k)
        evs = []
        for act in beh:
            evs.append(Event(act, t, case))
            t += step
        traces.append(Trace(case, evs))
    return EventLog(tuple(traces))
