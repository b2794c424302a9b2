"""Synthetic log generation: process trees, change patterns and drift curves."""
from .distributions import (
    BENCHMARK_DISTRIBUTIONS,
    STOP_THRESHOLD,
    DriftDistribution,
    parse_distribution,
)
from .generate import BLOCK_SIZE, GeneratorConfig, GroundTruth, generate_log
from .loanlike import load_builtin, loanlike
from .patterns import (
    BENCHMARK_PATTERNS,
    COMPOSITES,
    SIMPLE_PATTERNS,
    ChangePattern,
    PatternError,
    apply_pattern,
)
from .tree import ProcessTree, act, language, loop, opt, par, sample_trace, seq, xor

__all__ = [
    "BENCHMARK_DISTRIBUTIONS",
    "BENCHMARK_PATTERNS",
    "BLOCK_SIZE",
    "COMPOSITES",
    "ChangePattern",
    "DriftDistribution",
    "GeneratorConfig",
    "GroundTruth",
    "PatternError",
    "ProcessTree",
    "SIMPLE_PATTERNS",
    "STOP_THRESHOLD",
    "act",
    "apply_pattern",
    "generate_log",
    "language",
    "load_builtin",
    "loanlike",
    "loop",
    "opt",
    "par",
    "parse_distribution",
    "sample_trace",
    "seq",
    "xor",
]
