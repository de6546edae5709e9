"""Text grammar for polynomials.

Integer or rational coefficients, declared variable names, operators
``+ - * / ^`` and parentheses; whitespace is insignificant.  ``/`` is only
allowed when the divisor reduces to a nonzero constant (so ``3/2*x*y``
works but ``x/y`` is rejected).  Example: ``x^2 + 3/2*x*y - y^3``.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError
from .multipoly import MultiPoly

_TOKEN_CHARS = set("+-*/^()")


def _tokenize(text: str):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        col = i + 1
        if ch in _TOKEN_CHARS:
            tokens.append((ch, col))
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), col))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], col))
            i = j
        else:
            raise ParseError(f"unexpected character {ch!r}", column=col)
    tokens.append(("end", n + 1))
    return tokens


class _Parser:
    def __init__(self, tokens, variables):
        self.tokens = tokens
        self.pos = 0
        self.variables = tuple(variables)

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message):
        tok = self.peek()
        raise ParseError(message, column=tok[-1])

    def parse(self) -> MultiPoly:
        poly = self.expr()
        if self.peek()[0] != "end":
            self.fail("trailing input")
        return poly

    def expr(self) -> MultiPoly:
        if self.peek()[0] == "-":
            self.advance()
            acc = -self.term()
        else:
            if self.peek()[0] == "+":
                self.advance()
            acc = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> MultiPoly:
        acc = self.power()
        while self.peek()[0] in ("*", "/"):
            op = self.advance()[0]
            rhs = self.power()
            if op == "*":
                acc = acc * rhs
            else:
                if not rhs.is_constant or rhs.is_zero:
                    self.fail("division only by a nonzero constant")
                acc = acc.scale(Fraction(1) / rhs.constant_value())
        return acc

    def power(self) -> MultiPoly:
        base = self.atom()
        if self.peek()[0] == "^":
            self.advance()
            tok = self.peek()
            if tok[0] != "int":
                self.fail("exponent must be a non-negative integer")
            self.advance()
            return base ** tok[1]
        return base

    def atom(self) -> MultiPoly:
        tok = self.peek()
        kind = tok[0]
        if kind == "int":
            self.advance()
            return MultiPoly.const(self.variables, Fraction(tok[1]))
        if kind == "name":
            self.advance()
            if tok[1] not in self.variables:
                raise ParseError(f"unknown variable {tok[1]!r}", column=tok[-1])
            return MultiPoly.var(tok[1], self.variables)
        if kind == "(":
            self.advance()
            inner = self.expr()
            if self.peek()[0] != ")":
                self.fail("expected ')'")
            self.advance()
            return inner
        if kind == "-":
            self.advance()
            return -self.atom()
        self.fail("expected a number, variable, or '('")
        raise AssertionError  # unreachable


def parse_poly(text: str, variables=("x", "y")) -> MultiPoly:
    """Parse ``text`` into a MultiPoly over the given variables."""
    return _Parser(_tokenize(text), variables).parse()
