"""Canonical text form for exact polynomials and rational functions.

Serialization writes terms in descending graded-lexicographic order with
explicit ``p/q`` rational coefficients and ``^`` powers, so equal normal
forms serialize to identical strings.  Parsing accepts the grammar

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' integer)?
    atom   := integer | variable | '(' expr ')'

over the fixed variable set, with the usual precedence, and returns a
normalized rational function.  Serialization followed by parsing is the
identity.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .poly import VARIABLES, Poly, grlex_key
from .ratfunc import RationalFunc


# -- serialization ---------------------------------------------------------


def _monomial_text(exp) -> str:
    parts = []
    for name, p in zip(VARIABLES, exp):
        if p == 1:
            parts.append(name)
        elif p > 1:
            parts.append(f"{name}^{p}")
    return "*".join(parts)


def poly_to_text(p: Poly) -> str:
    if p.is_zero():
        return "0"
    items = sorted(p.terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)
    pieces = []
    for i, (exp, coeff) in enumerate(items):
        sign = "-" if coeff < 0 else "+"
        mag = -coeff if coeff < 0 else coeff
        mono = _monomial_text(exp)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if i == 0:
            pieces.append(body if sign == "+" else f"-{body}")
        else:
            pieces.append(f" {sign} {body}")
    return "".join(pieces)


def rf_to_text(r: RationalFunc) -> str:
    if r.is_polynomial():
        return poly_to_text(r.num)
    return f"({poly_to_text(r.num)})/({poly_to_text(r.den)})"


# -- parsing ----------------------------------------------------------------


class ParseError(ValueError):
    """Malformed expression text."""


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))"
)


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens: list[tuple[str, str]] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            tail = text[pos:].lstrip()
            if not tail:
                break
            raise ParseError(f"unexpected character {tail[0]!r} at offset {pos}")
        pos = m.end()
        if m.group("int") is not None:
            tokens.append(("int", m.group("int")))
        elif m.group("name") is not None:
            tokens.append(("name", m.group("name")))
        else:
            tokens.append(("op", m.group("op")))
    return tokens


class _Parser:
    def __init__(self, tokens: list[tuple[str, str]]):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect_op(self, op: str):
        kind, value = self.take()
        if kind != "op" or value != op:
            raise ParseError(f"expected {op!r}, found {value!r}")

    def parse_expr(self) -> RationalFunc:
        value = self.parse_term()
        while True:
            kind, op = self.peek()
            if kind == "op" and op in "+-":
                self.take()
                rhs = self.parse_term()
                value = value + rhs if op == "+" else value - rhs
            else:
                return value

    def parse_term(self) -> RationalFunc:
        value = self.parse_unary()
        while True:
            kind, op = self.peek()
            if kind == "op" and op in "*/":
                self.take()
                rhs = self.parse_unary()
                value = value * rhs if op == "*" else value / rhs
            else:
                return value

    def parse_unary(self) -> RationalFunc:
        kind, op = self.peek()
        if kind == "op" and op == "-":
            self.take()
            return -self.parse_unary()
        return self.parse_power()

    def parse_power(self) -> RationalFunc:
        base = self.parse_atom()
        kind, op = self.peek()
        if kind == "op" and op == "^":
            self.take()
            sign = 1
            kind, value = self.take()
            if kind == "op" and value == "-":
                sign = -1
                kind, value = self.take()
            if kind != "int":
                raise ParseError("exponent must be an integer")
            return base ** (sign * int(value))
        return base

    def parse_atom(self) -> RationalFunc:
        kind, value = self.take()
        if kind == "int":
            return RationalFunc.const(Fraction(int(value)))
        if kind == "name":
            if value not in VARIABLES:
                raise ParseError(
                    f"unknown variable {value!r}; expected one of {', '.join(VARIABLES)}"
                )
            return RationalFunc.var(value)
        if kind == "op" and value == "(":
            inner = self.parse_expr()
            self.expect_op(")")
            return inner
        raise ParseError(f"unexpected token {value!r}")


def parse_rf(text: str) -> RationalFunc:
    """Parse expression text into a normalized rational function."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty expression")
    parser = _Parser(tokens)
    value = parser.parse_expr()
    if parser.pos != len(tokens):
        raise ParseError(f"trailing input starting at {parser.peek()[1]!r}")
    return value


def parse_poly(text: str) -> Poly:
    """Parse expression text that must reduce to a polynomial."""
    r = parse_rf(text)
    if not r.is_polynomial():
        raise ParseError("expression is a proper rational function, not a polynomial")
    return r.num
