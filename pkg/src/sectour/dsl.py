"""Concrete syntax for spec trees.

    Spec := "R" INT | "TT" INT | "R" INT "(" Spec ("," Spec)* ")"

Whitespace is ignored.  ``R1`` and ``TT1`` denote the same node and print
as ``R1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import InvalidParameter
from .tournament import BlockSequence, Compose, HighlyRegular, SectionableSpec, Transitive

_TOKEN = re.compile(r"\s*(?:(TT|R)|(\d+)|([(),])|(\S))")


class SpecSyntaxError(InvalidParameter):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class SpecExpression:
    source: str
    spec: SectionableSpec
    spans: dict = field(default_factory=dict)  # block sequence -> (line, column)


def _position(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    column = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, column


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = []
        pos = 0
        while pos < len(text):
            if not text[pos:].strip():
                break
            mt = _TOKEN.match(text, pos)
            start = mt.start(mt.lastindex)
            if mt.group(4):
                self.fail(f"unexpected character {mt.group(4)!r}", start)
            kind = ("head", "int", "punct")[mt.lastindex - 1]
            self.tokens.append((kind, mt.group(mt.lastindex), start))
            pos = mt.end()
        self.i = 0
        self.spans = {}

    def fail(self, message: str, offset: int):
        raise SpecSyntaxError(message, *_position(self.text, offset))

    def peek(self):
        if self.i < len(self.tokens):
            return self.tokens[self.i]
        return ("eof", "", len(self.text))

    def take(self, kind: str, value: str = None):
        tok = self.peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = repr(value) if value else kind
            got = "end of input" if tok[0] == "eof" else repr(tok[1])
            self.fail(f"expected {want}, found {got}", tok[2])
        self.i += 1
        return tok

    def spec(self, path: BlockSequence) -> SectionableSpec:
        _, head, start = self.take("head")
        self.spans[path] = _position(self.text, start)
        _, digits, num_at = self.take("int")
        value = int(digits)
        if head == "TT":
            if value < 1:
                self.fail(f"TT{value}: size must be positive", num_at)
            return Transitive(value)
        if self.peek()[:2] == ("punct", "("):
            if value < 3 or value % 2 == 0:
                self.fail(f"R{value}: quotient order must be odd and at least 3", num_at)
            self.take("punct", "(")
            kids = [self.spec(path + (1,))]
            while self.peek()[:2] == ("punct", ","):
                self.take("punct", ",")
                kids.append(self.spec(path + (len(kids) + 1,)))
            self.take("punct", ")")
            if len(kids) != value:
                self.fail(f"R{value} expects {value} blocks, found {len(kids)}", start)
            return Compose(value, tuple(kids))
        if value < 1 or value % 2 == 0:
            self.fail(f"R{value}: order must be odd and positive", num_at)
        return HighlyRegular(value)


def parse_expression(text: str) -> SpecExpression:
    p = _Parser(text)
    spec = p.spec(())
    tok = p.peek()
    if tok[0] != "eof":
        p.fail(f"trailing input {tok[1]!r}", tok[2])
    return SpecExpression(text, spec, p.spans)


def parse_spec(text: str) -> SectionableSpec:
    return parse_expression(text).spec


def format_spec(spec: SectionableSpec) -> str:
    if isinstance(spec, Transitive):
        return "R1" if spec.k == 1 else f"TT{spec.k}"
    if isinstance(spec, HighlyRegular):
        return f"R{spec.m}"
    return f"R{spec.m}(" + ",".join(format_spec(c) for c in spec.children) + ")"
