"""Recursive-descent parser for polynomial expressions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/')? unary)*        # juxtaposition multiplies
    unary  := ('+' | '-') unary | power
    power  := atom (('^' | '**') unary)?
    atom   := NUMBER | NAME | '(' expr ')'

The parser builds a small AST; evaluation is delegated to a caller-supplied
ring so the same grammar serves tower polynomials and quadratic integers.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Callable, Mapping

from .errors import ParseError

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")

_NORMALIZE = str.maketrans({"−": "-", "·": "*", "×": "*", "–": "-"})


def tokenize(text: str) -> list[tuple[str, str]]:
    text = text.translate(_NORMALIZE)
    pos, out = 0, []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r} at {pos} in {text!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", num))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}, got {val!r}")

    def expr(self):
        node = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            node = (op, node, self.term())
        return node

    def _starts_atom(self):
        kind, val = self.peek()
        return kind in ("num", "name") or (kind == "op" and val == "(")

    def term(self):
        node = self.unary()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                node = (val, node, self.unary())
            elif self._starts_atom():
                node = ("*", node, self.power())
            else:
                return node

    def unary(self):
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            inner = self.unary()
            return inner if val == "+" else ("neg", inner)
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            return ("^", base, self.unary())
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return ("num", Fraction(val))
        if kind == "name":
            return ("name", val)
        if kind == "op" and val == "(":
            node = self.expr()
            self.expect(")")
            return node
        raise ParseError(f"unexpected token {val!r}")


def parse(text: str):
    """Parse ``text`` into an AST of nested tuples."""
    toks = tokenize(text)
    if not toks:
        raise ParseError("empty expression")
    p = _Parser(toks)
    node = p.expr()
    if p.i != len(toks):
        raise ParseError(f"trailing input after position {p.i} in {text!r}")
    return node


def _const_int(node) -> int:
    # exponents must be literal non-negative integers (possibly parenthesised)
    if node[0] == "num" and node[1].denominator == 1:
        return int(node[1])
    raise ParseError("exponents must be non-negative integer literals")


def evaluate(node, names: Mapping[str, object], const: Callable[[Fraction], object]):
    """Evaluate an AST in a ring.

    ``names`` maps identifiers to ring elements and ``const`` lifts a rational.
    Ring elements need ``+ - *`` and ``**`` with non-negative int exponents;
    division is only allowed by rational constants.
    """
    tag = node[0]
    if tag == "num":
        return const(node[1])
    if tag == "name":
        try:
            return names[node[1]]
        except KeyError:
            raise ParseError(f"unknown name {node[1]!r}") from None
    if tag == "neg":
        return -evaluate(node[1], names, const)
    if tag == "^":
        base = evaluate(node[1], names, const)
        e = _const_int(node[2])
        out = const(Fraction(1))
        for _ in range(e):
            out = out * base
        return out
    a = evaluate(node[1], names, const)
    if tag == "/":
        d = _rational_value(node[2])
        if d == 0:
            raise ParseError("division by zero")
        return a * const(1 / d)
    b = evaluate(node[2], names, const)
    if tag == "+":
        return a + b
    if tag == "-":
        return a - b
    if tag == "*":
        return a * b
    raise ParseError(f"bad node {tag}")


def _rational_value(node) -> Fraction:
    tag = node[0]
    if tag == "num":
        return node[1]
    if tag == "neg":
        return -_rational_value(node[1])
    if tag in "+-*/" and len(node) == 3:
        a, b = _rational_value(node[1]), _rational_value(node[2])
        return {"+": a + b, "-": a - b, "*": a * b, "/": a / b if b else _zero_div()}[tag]
    if tag == "^":
        return _rational_value(node[1]) ** _const_int(node[2])
    raise ParseError("division is only supported by rational constants")


def _zero_div():
    raise ParseError("division by zero")
