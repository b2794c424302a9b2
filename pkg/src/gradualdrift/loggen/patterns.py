"""Change patterns that derive a modified process tree from a base tree.

Every pattern enumerates its eligible fragments in a fixed order, shuffles
them with the caller's RNG and applies the first one whose result has a
different language from the input. Composite codes apply their parts in
order on the same RNG stream.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Union

from .tree import ProcessTree, language

__all__ = [
    "PatternError",
    "ChangePattern",
    "SIMPLE_PATTERNS",
    "COMPOSITES",
    "BENCHMARK_PATTERNS",
    "apply_pattern",
    "fresh_activity",
]

COMPOSITES = {
    "OIR": ("lp", "re", "cd"),
    "ORI": ("lp", "pl", "re"),
    "RIO": ("cf", "cp", "cb"),
    "ROI": ("pl", "lp", "rp"),
}

# the ten derived models of the benchmark
BENCHMARK_PATTERNS = ("cp", "pm", "re", "rp", "sw", "cf", "OIR", "ORI", "RIO", "ROI")


class PatternError(ValueError):
    """No fragment of the tree is eligible for the requested pattern."""


@dataclass(frozen=True)
class ChangePattern:
    code: str

    def __post_init__(self):
        if self.code not in SIMPLE_PATTERNS and self.code not in COMPOSITES:
            raise ValueError(f"unknown change pattern {self.code!r}")

    @property
    def components(self) -> tuple:
        return COMPOSITES.get(self.code, (self.code,))


def fresh_activity(tree: ProcessTree, prefix: str = "New activity") -> str:
    used = tree.alphabet
    k = 1
    while f"{prefix} {k}" in used:
        k += 1
    return f"{prefix} {k}"


def _sequences(tree):
    return [(p, n) for p, n in tree.walk() if n.kind == "sequence"]


def _with_children(tree, path, children):
    """Replace the children of the sequence at ``path``, collapsing a single child."""
    node = tree.at(path)
    new = children[0] if len(children) == 1 else ProcessTree(node.kind, None, tuple(children))
    return tree.replace(path, new)


def _leaf_slots(tree):
    """(sequence path, child index) of every activity directly under a sequence."""
    return [(p, i) for p, s in _sequences(tree) for i, c in enumerate(s.children)
            if c.kind == "activity"]


def _inside(path, ancestor):
    return path[:len(ancestor)] == ancestor


def _cp(tree):
    out = []
    for p, i in _leaf_slots(tree):
        s = tree.at(p)
        for j in range(len(s.children) + 1):
            if j in (i, i + 1):
                continue
            def build(p=p, i=i, j=j):
                ch = list(tree.at(p).children)
                ch.insert(j, ch[i])
                return _with_children(tree, p, ch)
            out.append(build)
    return out


def _pm(tree):
    out = []
    pars = [(p, n) for p, n in tree.walk() if n.kind == "parallel"]
    for pp, pnode in pars:
        for sp, i in _leaf_slots(tree):
            if _inside(sp, pp):
                continue
            for b in range(len(pnode.children)):
                def build(pp=pp, sp=sp, i=i, b=b):
                    leaf = tree.at(sp).children[i]
                    branch = tree.at(pp + (b,))
                    if branch.kind == "sequence":
                        new_branch = ProcessTree("sequence", None, branch.children + (leaf,))
                    else:
                        new_branch = ProcessTree("sequence", None, (branch, leaf))
                    t = tree.replace(pp + (b,), new_branch)
                    ch = list(t.at(sp).children)
                    del ch[i]
                    return _with_children(t, sp, ch)
                out.append(build)
        # moving out: a leaf of a sequential branch goes right after the block
        if len(pp) and tree.at(pp[:-1]).kind == "sequence":
            parent, k = pp[:-1], pp[-1]
            for sp, i in _leaf_slots(tree):
                if not _inside(sp, pp) or sp == pp:
                    continue
                def build(parent=parent, k=k, sp=sp, i=i):
                    leaf = tree.at(sp).children[i]
                    ch = list(tree.at(sp).children)
                    del ch[i]
                    t = _with_children(tree, sp, ch)
                    pch = list(t.at(parent).children)
                    pch.insert(k + 1, leaf)
                    return _with_children(t, parent, pch)
                out.append(build)
    return out


def _re(tree, remove=False):
    out = []
    if remove:
        for p, i in _leaf_slots(tree):
            def build(p=p, i=i):
                ch = list(tree.at(p).children)
                del ch[i]
                return _with_children(tree, p, ch)
            out.append(build)
        return out
    name = fresh_activity(tree)
    for p, s in _sequences(tree):
        for j in range(len(s.children) + 1):
            def build(p=p, j=j):
                ch = list(tree.at(p).children)
                ch.insert(j, ProcessTree("activity", name))
                return _with_children(tree, p, ch)
            out.append(build)
    return out


def _rp(tree):
    name = fresh_activity(tree)
    return [
        (lambda path=path: tree.replace(path, ProcessTree("activity", name)))
        for path, n in tree.walk() if n.kind == "activity"
    ]


def _sw(tree):
    out = []
    for p, s in _sequences(tree):
        n = len(s.children)
        for i in range(n):
            for j in range(i + 1, n):
                def build(p=p, i=i, j=j):
                    ch = list(tree.at(p).children)
                    ch[i], ch[j] = ch[j], ch[i]
                    return _with_children(tree, p, ch)
                out.append(build)
    return out


def _pairwise(tree, kind):
    out = []
    for p, s in _sequences(tree):
        for i in range(len(s.children) - 1):
            def build(p=p, i=i):
                ch = list(tree.at(p).children)
                ch[i:i + 2] = [ProcessTree(kind, None, (ch[i], ch[i + 1]))]
                return _with_children(tree, p, ch)
            out.append(build)
    return out


def _cf(tree):
    return _pairwise(tree, "exclusive")


def _pl(tree):
    return _pairwise(tree, "parallel")


def _wrap_leaf(tree, kind):
    return [
        (lambda p=p, i=i: tree.replace(p + (i,), ProcessTree(kind, None, (tree.at(p + (i,)),))))
        for p, i in _leaf_slots(tree)
    ]


def _cb(tree):
    return _wrap_leaf(tree, "optional")


def _lp(tree):
    return _wrap_leaf(tree, "loop")


def _cd(tree):
    out = []
    for pp, pnode in tree.walk():
        if pnode.kind != "parallel":
            continue
        n = len(pnode.children)
        for i in range(n):
            for j in range(i + 1, n):
                def build(pp=pp, i=i, j=j):
                    ch = list(tree.at(pp).children)
                    pair = ProcessTree("sequence", None, (ch[i], ch[j]))
                    if len(ch) == 2:
                        return tree.replace(pp, pair)
                    del ch[j]
                    ch[i] = pair
                    return tree.replace(pp, ProcessTree("parallel", None, tuple(ch)))
                out.append(build)
    return out


SIMPLE_PATTERNS: dict[str, Callable] = {
    "cp": _cp,
    "pm": _pm,
    "re": _re,
    "rp": _rp,
    "sw": _sw,
    "cf": _cf,
    "cb": _cb,
    "lp": _lp,
    "cd": _cd,
    "pl": _pl,
}


def _apply_simple(tree: ProcessTree, code: str, rng: random.Random) -> ProcessTree:
    builders = SIMPLE_PATTERNS[code](tree)
    if not builders:
        raise PatternError(f"no fragment eligible for pattern {code!r} in {tree}")
    order = list(range(len(builders)))
    rng.shuffle(order)
    before = language(tree)
    for k in order:
        new = builders[k]()
        if language(new) != before:
            return new
    raise PatternError(f"pattern {code!r} cannot change the behaviour of {tree}")


def apply_pattern(tree: ProcessTree, pattern: Union[str, ChangePattern],
                  rng: random.Random) -> ProcessTree:
    """Return a transformed copy of ``tree`` whose variant set differs from the input's."""
    if isinstance(pattern, str):
        pattern = ChangePattern(pattern)
    out = tree
    for code in pattern.components:
        out = _apply_simple(out, code, rng)
    if language(out) == language(tree):
        raise PatternError(f"pattern {pattern.code!r} left the behaviour unchanged")
    return out
