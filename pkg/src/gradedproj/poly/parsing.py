"""Polynomial text syntax: ``3/2*x^2*y - z + 1``, with parentheses allowed."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .polynomial import Polynomial

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


class PolynomialSyntaxError(ValueError):
    def __init__(self, text: str, pos: int, message: str):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("num", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        else:
            tokens.append(("op", m.group(3), start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, vars):
        self.text = text
        self.vars = tuple(vars)
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        raise PolynomialSyntaxError(self.text, tok[2], message)

    def expect(self, op):
        tok = self.take()
        if tok[0] != "op" or tok[1] != op:
            self.error(f"expected {op!r}", tok)

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty polynomial")
        p = self.sum()
        if self.peek()[0] != "end":
            self.error("unexpected token")
        return p

    def sum(self):
        sign = 1
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        p = self.product() * sign
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                q = self.product()
                p = p + q if tok[1] == "+" else p - q
            else:
                return p

    def product(self):
        p = self.power()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                p = p * self.power()
            elif tok[0] == "op" and tok[1] == "/":
                self.take()
                d = self.take()
                if d[0] != "num" or d[1] == 0:
                    self.error("division only by a nonzero integer literal", d)
                p = p * Fraction(1, d[1])
            else:
                return p

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            e = self.take()
            if e[0] != "num":
                self.error("exponent must be a nonnegative integer", e)
            return base ** e[1]
        return base

    def atom(self):
        tok = self.take()
        if tok[0] == "num":
            return Polynomial.constant(self.vars, tok[1])
        if tok[0] == "name":
            if tok[1] not in self.vars:
                self.error(f"unknown variable {tok[1]!r}", tok)
            return Polynomial.variable(self.vars, tok[1])
        if tok[0] == "op" and tok[1] == "(":
            p = self.sum()
            self.expect(")")
            return p
        if tok[0] == "op" and tok[1] == "-":
            return -self.power()
        self.error("expected a number, variable or '('", tok)


def parse_polynomial(text: str, vars: Sequence[str]) -> Polynomial:
    """Parse ``text`` over the declared variables ``vars``."""
    if not isinstance(text, str):
        if isinstance(text, int):
            return Polynomial.constant(vars, text)
        raise TypeError(f"polynomial text must be a string, got {type(text).__name__}")
    return _Parser(text, vars).parse()
