"""S-expression syntax for tangle expressions.

::

    expr  := "u" | "(id N)" | "(cap I N)" | "(cup I N)" | "(p I J N)"
           | "(comp SLOT expr expr)" | "(act expr BRAID)"
    BRAID := "rb(" N ")[" (("e" | "e'" | "t" | "t'") K)* "]"

Whitespace is insignificant.  ``render`` emits the canonical spelling with
single spaces, and ``parse_expr(render(e)) == e``.
"""

from __future__ import annotations

import re

from .ribbon_braid import BraidError, RibbonBraid, parse_braid
from .tangle import (
    Act, Cap, Comp, Cup, Gen, Id, Pin, StandardForm, TangleTypeError, Unit, infer_type,
)

__all__ = ["ParseError", "parse_expr", "render", "GRAMMAR"]

GRAMMAR = __doc__.split("::")[1].split("Whitespace")[0].strip("\n")

_GEN_ARITY = {"id": 1, "cap": 2, "cup": 2, "p": 3}
_NUM = re.compile(r"\d+")
_WORD = re.compile(r"[a-z]+")


class ParseError(ValueError):
    """Syntax error at a character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.reason = message


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            got = self.peek() or "end of input"
            raise ParseError(f"expected {ch!r}, got {got!r}", self.pos)
        self.pos += 1

    def number(self) -> int:
        self.ws()
        m = _NUM.match(self.text, self.pos)
        if not m:
            raise ParseError("expected a non-negative integer", self.pos)
        self.pos = m.end()
        return int(m.group())

    def word(self) -> str:
        self.ws()
        m = _WORD.match(self.text, self.pos)
        if not m:
            raise ParseError("expected a keyword", self.pos)
        self.pos = m.end()
        return m.group()

    def braid(self) -> RibbonBraid:
        self.ws()
        start = self.pos
        if not self.text.startswith("rb", self.pos):
            raise ParseError("expected a braid literal rb(N)[...]", self.pos)
        end = self.text.find("]", self.pos)
        if end < 0:
            raise ParseError("unterminated braid literal", self.pos)
        self.pos = end + 1
        try:
            return parse_braid(self.text[start:end + 1])
        except BraidError as exc:
            raise ParseError(str(exc), start) from None

    def expr(self):
        ch = self.peek()
        if ch == "u":
            start = self.pos
            w = self.word()
            if w != "u":
                raise ParseError(f"unknown atom {w!r}", start)
            return Gen(Unit())
        if ch != "(":
            raise ParseError(f"expected '(' or 'u', got {ch or 'end of input'!r}", self.pos)
        self.pos += 1
        start = self.pos
        head = self.word()
        if head in _GEN_ARITY:
            args = [self.number() for _ in range(_GEN_ARITY[head])]
            self.expect(")")
            try:
                if head == "id":
                    return Gen(Id(*args))
                if head == "cap":
                    return Gen(Cap(*args))
                if head == "cup":
                    return Gen(Cup(*args))
                return Gen(Pin(*args))
            except TangleTypeError as exc:
                raise ParseError(exc.reason, start) from None
        if head == "comp":
            slot = self.number()
            outer = self.expr()
            inner = self.expr()
            self.expect(")")
            return Comp(outer, slot, inner)
        if head == "act":
            body = self.expr()
            b = self.braid()
            self.expect(")")
            return Act(body, b)
        raise ParseError(f"unknown form {head!r}", start)


def parse_expr(text: str, check: bool = True):
    """Parse ``text``; with ``check`` the result is also type-checked,
    raising ``TangleTypeError`` with a node path on failure."""
    p = _Parser(text)
    e = p.expr()
    p.ws()
    if p.pos != len(text):
        raise ParseError("trailing input", p.pos)
    if check:
        infer_type(e)
    return e


def render(e) -> str:
    if isinstance(e, StandardForm):
        e = e.to_expr()
    if isinstance(e, Gen):
        return e.g.render()
    if isinstance(e, Comp):
        return f"(comp {e.slot} {render(e.outer)} {render(e.inner)})"
    if isinstance(e, Act):
        return f"(act {render(e.body)} {e.braid.render()})"
    raise TypeError(f"not a tangle expression: {e!r}")
