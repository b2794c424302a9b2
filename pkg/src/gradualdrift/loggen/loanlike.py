"""A 19-activity loan application process used as the default base model.

This is a stand-in built for the benchmark, not a reconstruction of any
published model. It has four variants, so a window of a few dozen traces
already shows its full behaviour.
"""
from __future__ import annotations

from importlib import resources

from .tree import ProcessTree, par, seq, xor

__all__ = ["loanlike", "LOANLIKE_FILE", "load_builtin"]

LOANLIKE_FILE = "loanlike.json"


def loanlike() -> ProcessTree:
    return seq(
        "Receive application",
        "Check application completeness",
        "Register application",
        par("Check credit history", "Appraise property"),
        "Assess loan risk",
        "Assess eligibility",
        xor(
            seq("Prepare acceptance pack", "Send acceptance pack"),
            seq("Reject application", "Notify rejection"),
        ),
        "Check repayment agreement",
        "Verify documents",
        "Approve application",
        "Schedule disbursement",
        "Disburse funds",
        "Archive case",
        "Send confirmation",
        "Close case",
    )


def load_builtin(name: str = LOANLIKE_FILE) -> ProcessTree:
    text = resources.files(__package__).joinpath(name).read_text(encoding="utf-8")
    return ProcessTree.from_json(text)
