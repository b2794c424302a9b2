"""Command line entry point: detect, generate, evaluate and bench."""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .detector import RESUME_MODES, DetectorConfig, detect
from .evaluate import aggregate_csv, evaluate_report
from .eventlog import LogFormatError, read_log, to_csv_text
from .loggen import (
    BENCHMARK_DISTRIBUTIONS,
    BENCHMARK_PATTERNS,
    COMPOSITES,
    SIMPLE_PATTERNS,
    GroundTruth,
    PatternError,
    ProcessTree,
    apply_pattern,
    generate_log,
    load_builtin,
    parse_distribution,
)
from .loggen.loanlike import LOANLIKE_FILE

__all__ = ["main", "build_parser", "UsageError", "DataError", "benchmark_case"]

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gradualdrift", description="Gradual concept drift detection for event logs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("detect", help="detect drifts in an event log (CSV or XES)")
    d.add_argument("--log", required=True)
    d.add_argument("--out", required=True, help="report JSON path")
    d.add_argument("--diagnostics", help="window CSV path (default: next to the report)")
    d.add_argument("--min-window", type=_positive, default=50)
    d.add_argument("--significance", type=float, default=0.05)
    d.add_argument("--growth", choices=("double", "add", "none"), default="double")
    d.add_argument("--resume", choices=RESUME_MODES, default="anchored")

    g = sub.add_parser("generate", help="generate a log with gradual drifts")
    g.add_argument("--base", required=True, help=f"process tree JSON, or the builtin {LOANLIKE_FILE}")
    src = g.add_mutually_exclusive_group(required=True)
    src.add_argument("--derived", help="process tree JSON of the drifted model")
    src.add_argument("--pattern", choices=sorted(SIMPLE_PATTERNS) + sorted(COMPOSITES))
    g.add_argument("--dist", required=True, help="linear:S | gaussian:MU:SIGMA | exponential:L | constant:P:N")
    g.add_argument("--drifts", type=_positive, default=9)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out-log", default="log.csv")
    g.add_argument("--out-truth", default="truth.json")
    g.add_argument("--out-derived", help="also write the derived tree JSON here")

    e = sub.add_parser("evaluate", help="score a report against ground truth")
    e.add_argument("--report", required=True)
    e.add_argument("--truth", required=True)
    e.add_argument("--out", help="result JSON path (default: standard output)")

    b = sub.add_parser("bench", help="run the pattern x distribution benchmark grid")
    b.add_argument("--seed", type=int, required=True)
    b.add_argument("--out", required=True, help="aggregate CSV path")
    b.add_argument("--base", default=LOANLIKE_FILE)
    b.add_argument("--min-window", type=_positive, default=50)
    b.add_argument("--drifts", type=_positive, default=9)
    b.add_argument("--workers", type=_positive, default=1)
    b.add_argument("--logs-dir", help="also keep every generated log, truth and report here")
    return p


def _read_text(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except FileNotFoundError:
        raise DataError(f"file not found: {path}") from None
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc.strerror}") from None


def _write_text(path, text: str):
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot write {path}: {exc.strerror}") from None


def _load_json(path):
    try:
        return json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise DataError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def load_tree(path) -> ProcessTree:
    """Tree JSON from ``path``; a missing file named like the builtin loads the builtin."""
    if not os.path.exists(path) and Path(path).name == LOANLIKE_FILE:
        return load_builtin()
    try:
        return ProcessTree.from_dict(_load_json(path))
    except ValueError as exc:
        raise DataError(f"{path}: {exc}") from None


def _distribution(text):
    try:
        return parse_distribution(text)
    except ValueError as exc:
        raise UsageError(f"--dist: {exc}") from None


def derived_for(base: ProcessTree, pattern: str, dist, seed: int):
    """Derived tree and generation seed of one benchmark cell, from a string-seeded stream."""
    rng = random.Random(f"{seed}:{pattern}:{dist}")
    derived = apply_pattern(base, pattern, rng)
    return derived, rng.randrange(2 ** 32)


def _cmd_detect(args):
    log = read_log(args.log)
    cfg = DetectorConfig(min_window=args.min_window, significance=args.significance,
                         window_growth=args.growth, resume=args.resume)
    report = detect(log, cfg)
    diag = args.diagnostics or str(Path(args.out).with_suffix("")) + ".diagnostics.csv"
    _write_text(diag, report.diagnostics_csv())
    _write_text(args.out, report.to_json(diag))


def _cmd_generate(args):
    dist = _distribution(args.dist)
    base = load_tree(args.base)
    if args.derived:
        derived, gen_seed = load_tree(args.derived), args.seed
    else:
        derived, gen_seed = derived_for(base, args.pattern, dist, args.seed)
    log, truth = generate_log(base, derived, dist, args.drifts, gen_seed)
    _write_text(args.out_log, to_csv_text(log))
    _write_text(args.out_truth, truth.to_json())
    if args.out_derived:
        _write_text(args.out_derived, derived.to_json())


def _cmd_evaluate(args):
    report = _load_json(args.report)
    try:
        truth = GroundTruth.from_dict(_load_json(args.truth))
        result = evaluate_report(report, truth)
    except (ValueError, TypeError, KeyError) as exc:
        raise DataError(f"invalid report or truth: {exc}") from None
    if args.out:
        _write_text(args.out, result.to_json())
    else:
        sys.stdout.write(result.to_json())


def benchmark_case(base: ProcessTree, pattern: str, dist, seed: int, min_window: int,
                   drifts: int, logs_dir=None):
    """Generate, detect and score one grid cell."""
    derived, gen_seed = derived_for(base, pattern, dist, seed)
    log, truth = generate_log(base, derived, dist, drifts, gen_seed)
    report = detect(log, DetectorConfig(min_window=min_window))
    name = f"{pattern}_{str(dist).replace(':', '_')}"
    if logs_dir:
        stem = Path(logs_dir) / name
        _write_text(f"{stem}.csv", to_csv_text(log))
        _write_text(f"{stem}.truth.json", truth.to_json())
        _write_text(f"{stem}.report.json", report.to_json())
    return name, pattern, str(dist), evaluate_report(report, truth)


def _bench_job(job):
    return benchmark_case(*job)


def _cmd_bench(args):
    base = load_tree(args.base)
    if args.logs_dir:
        os.makedirs(args.logs_dir, exist_ok=True)
    jobs = [(base, p, d, args.seed, args.min_window, args.drifts, args.logs_dir)
            for p in BENCHMARK_PATTERNS for d in BENCHMARK_DISTRIBUTIONS]
    if args.workers > 1:
        with ProcessPoolExecutor(args.workers) as pool:
            rows = list(pool.map(_bench_job, jobs))
    else:
        rows = [_bench_job(j) for j in jobs]
    _write_text(args.out, aggregate_csv(rows))


_COMMANDS = {
    "detect": _cmd_detect,
    "generate": _cmd_generate,
    "evaluate": _cmd_evaluate,
    "bench": _cmd_bench,
}


def _fail(kind: str, message: str, code: int) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")
    return code


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        _COMMANDS[args.command](args)
    except UsageError as exc:
        return _fail("usage", str(exc), EXIT_USAGE)
    except DataError as exc:
        return _fail("data", str(exc), EXIT_DATA)
    except FileNotFoundError as exc:
        return _fail("data", f"file not found: {exc.filename}", EXIT_DATA)
    except (LogFormatError, PatternError, ValueError) as exc:
        return _fail("data", str(exc), EXIT_DATA)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
