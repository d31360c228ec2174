"""Recursive-descent parser for the polynomial text grammar.

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | '+' unary | power
    power  := atom ('^' INT)?
    atom   := INT ('/' INT)? | NAME | '(' expr ')'

Whitespace is insignificant.  ``INT/INT`` rational literals are accepted
over QQ only.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import NonIntegerCoefficient, PolySyntaxError, UnknownVariable

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\S))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        start = m.start(m.lastindex) if m.lastindex else pos
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*^/()":
                raise PolySyntaxError(f"unexpected character {ch!r}", text, start)
            tokens.append(("op", ch, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, ring):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise PolySyntaxError(msg, self.text, tok[2])

    def expect_op(self, op):
        tok = self.take()
        if tok[0] != "op" or tok[1] != op:
            self.fail(f"expected {op!r}", tok)

    def parse(self):
        if self.peek()[0] == "end":
            self.fail("empty polynomial")
        value = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            value = value * self.unary()
        return value

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            inner = self.unary()
            return -inner if tok[1] == "-" else inner
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "int":
                self.fail("exponent must be a non-negative integer literal", tok)
            base = base ** int(tok[1])
        return base

    def atom(self):
        tok = self.take()
        kind, val, _ = tok
        if kind == "int":
            c = Fraction(int(val))
            if self.peek()[0] == "op" and self.peek()[1] == "/":
                self.take()
                den = self.take()
                if den[0] != "int":
                    self.fail("expected integer denominator", den)
                if self.ring.field.p:
                    raise NonIntegerCoefficient(
                        f"rational literal {val}/{den[1]} not allowed over {self.ring.field}")
                if int(den[1]) == 0:
                    self.fail("division by zero", den)
                c = c / int(den[1])
            return self.ring.constant(c)
        if kind == "name":
            if not self.ring.has_var(val):
                raise UnknownVariable(f"unknown variable {val!r} (ring has {', '.join(self.ring.variables)})")
            return self.ring.var(val)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        if kind == "op" and val == "/":
            if self.ring.field.p:
                raise NonIntegerCoefficient("division is not allowed over a prime field")
        self.fail("expected a number, variable or '('", tok)


def poly_parse(text: str, ring):
    """Parse ``text`` into a canonical :class:`Poly` over ``ring``."""
    return _Parser(text, ring).parse()
