"""Process trees: a small block-structured generative model for traces."""
from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Iterator, Optional

__all__ = [
    "ProcessTree",
    "act",
    "seq",
    "xor",
    "par",
    "loop",
    "opt",
    "sample_trace",
    "language",
    "LOOP_REDO_PROBABILITY",
    "OPTIONAL_PROBABILITY",
]

LOOP_REDO_PROBABILITY = 0.3
OPTIONAL_PROBABILITY = 0.5

KINDS = ("activity", "sequence", "exclusive", "parallel", "loop", "optional")


@dataclass(frozen=True)
class ProcessTree:
    kind: str
    name: Optional[str] = None
    children: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        k, ch = self.kind, self.children
        if k not in KINDS:
            raise ValueError(f"unknown node kind {k!r}")
        if k == "activity":
            if not self.name or ch:
                raise ValueError("an activity node needs a name and no children")
        elif self.name is not None:
            raise ValueError(f"{k} nodes carry no name")
        if k in ("sequence", "exclusive", "parallel") and len(ch) < 2:
            raise ValueError(f"{k} needs at least two children")
        if k == "loop" and len(ch) not in (1, 2):
            raise ValueError("loop takes a body and an optional redo part")
        if k == "optional" and len(ch) != 1:
            raise ValueError("optional wraps exactly one child")

    @property
    def alphabet(self) -> frozenset:
        if self.kind == "activity":
            return frozenset([self.name])
        return frozenset().union(*(c.alphabet for c in self.children))

    def walk(self, path=()) -> Iterator[tuple]:
        """Yield (path, node) pairs in pre-order."""
        yield path, self
        for i, c in enumerate(self.children):
            yield from c.walk(path + (i,))

    def at(self, path) -> "ProcessTree":
        node = self
        for i in path:
            node = node.children[i]
        return node

    def replace(self, path, new: "ProcessTree") -> "ProcessTree":
        if not path:
            return new
        i = path[0]
        ch = list(self.children)
        ch[i] = ch[i].replace(path[1:], new)
        return ProcessTree(self.kind, self.name, tuple(ch))

    def to_dict(self) -> dict:
        if self.kind == "activity":
            return {"kind": "activity", "name": self.name}
        return {"kind": self.kind, "children": [c.to_dict() for c in self.children]}

    @classmethod
    def from_dict(cls, data: dict) -> "ProcessTree":
        try:
            kind = data["kind"]
            if kind == "activity":
                return cls("activity", data["name"])
            return cls(kind, None, tuple(cls.from_dict(c) for c in data["children"]))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"invalid process tree: {exc!r}") from None

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ProcessTree":
        return cls.from_dict(json.loads(text))

    def __str__(self):
        if self.kind == "activity":
            return self.name
        sym = {"sequence": "->", "exclusive": "X", "parallel": "+", "loop": "*", "optional": "?"}
        return f"{sym[self.kind]}({', '.join(str(c) for c in self.children)})"


def act(name: str) -> ProcessTree:
    return ProcessTree("activity", name)


def _nodes(items):
    return tuple(act(i) if isinstance(i, str) else i for i in items)


def seq(*items) -> ProcessTree:
    return ProcessTree("sequence", None, _nodes(items))


def xor(*items) -> ProcessTree:
    return ProcessTree("exclusive", None, _nodes(items))


def par(*items) -> ProcessTree:
    return ProcessTree("parallel", None, _nodes(items))


def loop(body, redo=None) -> ProcessTree:
    return ProcessTree("loop", None, _nodes([body] if redo is None else [body, redo]))


def opt(child) -> ProcessTree:
    return ProcessTree("optional", None, _nodes([child]))


def sample_trace(tree: ProcessTree, rng: random.Random) -> tuple:
    """Draw one activity sequence from ``tree``."""
    k = tree.kind
    if k == "activity":
        return (tree.name,)
    if k == "sequence":
        return tuple(a for c in tree.children for a in sample_trace(c, rng))
    if k == "exclusive":
        return sample_trace(tree.children[rng.randrange(len(tree.children))], rng)
    if k == "parallel":
        parts = [list(sample_trace(c, rng)) for c in tree.children]
        # shuffling the branch labels gives every interleaving the same weight
        order = [i for i, p in enumerate(parts) for _ in p]
        rng.shuffle(order)
        pos = [0] * len(parts)
        out = []
        for i in order:
            out.append(parts[i][pos[i]])
            pos[i] += 1
        return tuple(out)
    if k == "loop":
        body = tree.children[0]
        redo = tree.children[1] if len(tree.children) > 1 else None
        out = list(sample_trace(body, rng))
        while rng.random() < LOOP_REDO_PROBABILITY:
            if redo is not None:
                out.extend(sample_trace(redo, rng))
            out.extend(sample_trace(body, rng))
        return tuple(out)
    if rng.random() < OPTIONAL_PROBABILITY:
        return sample_trace(tree.children[0], rng)
    return ()


def _interleavings(a: tuple, b: tuple):
    if not a:
        yield b
        return
    if not b:
        yield a
        return
    for rest in _interleavings(a[1:], b):
        yield (a[0],) + rest
    for rest in _interleavings(a, b[1:]):
        yield (b[0],) + rest


def language(tree: ProcessTree, max_repeats: int = 2) -> frozenset:
    """All activity sequences of ``tree``, with loops unrolled at most ``max_repeats`` extra times."""
    k = tree.kind
    if k == "activity":
        return frozenset([(tree.name,)])
    langs = [language(c, max_repeats) for c in tree.children]
    if k == "sequence":
        out = {()}
        for lang in langs:
            out = {x + y for x in out for y in lang}
        return frozenset(out)
    if k == "exclusive":
        return frozenset().union(*langs)
    if k == "parallel":
        out = {()}
        for lang in langs:
            out = {w for x in out for y in lang for w in _interleavings(x, y)}
        return frozenset(out)
    if k == "loop":
        body = langs[0]
        redo = langs[1] if len(langs) > 1 else frozenset([()])
        out = set(body)
        cur = set(body)
        for _ in range(max_repeats):
            cur = {x + r + b for x in cur for r in redo for b in body}
            out |= cur
        return frozenset(out)
    return frozenset(langs[0] | {()})


def variant_count(tree: ProcessTree, max_repeats: int = 2) -> int:
    return len(language(tree, max_repeats))
