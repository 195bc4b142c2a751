"""Precedence-climbing parser for exact rational expressions.

Grammar::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := ('+' | '-') unary | power
    power   := atom ('^' unary)?          # right associative
    atom    := NUMBER | IDENT | '(' expr ')'

NUMBER is an integer or a decimal literal (``1.25`` is read as 5/4).
Exponents must evaluate to non-negative integer constants.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .poly import PoleError, RatFunc, VarTable


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


@dataclass(frozen=True)
class Token:
    kind: str  # 'num', 'ident', 'op', 'end'
    value: str
    pos: int


_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d*)?|\.\d+)|([A-Za-z_][A-Za-z0-9_']*)|(.))")

# binary operator -> (precedence, right associative)
_BINARY = {"+": (1, False), "-": (1, False), "*": (2, False), "/": (2, False), "^": (4, True)}
_UNARY_PREC = 3


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1) is not None:
            out.append(Token("num", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            out.append(Token("ident", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3), text)
            out.append(Token("op", ch, m.start(3)))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, vars: VarTable):
        self.text = text
        self.vars = vars
        self.toks = tokenize(text)
        self.i = 0

    def peek(self) -> Token:
        return self.toks[self.i]

    def take(self) -> Token:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.peek()
        return ParseError(msg, tok.pos, self.text)

    def parse(self) -> RatFunc:
        if self.peek().kind == "end":
            raise self.error("empty expression")
        value = self.expr(0)
        if self.peek().kind != "end":
            raise self.error(f"unexpected {self.peek().value!r}")
        return value

    def expr(self, min_prec: int) -> RatFunc:
        lhs = self.unary()
        while True:
            tok = self.peek()
            if tok.kind != "op" or tok.value not in _BINARY:
                return lhs
            prec, right = _BINARY[tok.value]
            if prec < min_prec:
                return lhs
            self.take()
            if tok.value == "^":
                rhs = self.expr(_UNARY_PREC if right else prec + 1)
                lhs = self.power(lhs, rhs, tok)
                continue
            rhs = self.expr(prec + 1)
            if tok.value == "+":
                lhs = lhs + rhs
            elif tok.value == "-":
                lhs = lhs - rhs
            elif tok.value == "*":
                lhs = lhs * rhs
            else:
                if rhs.is_zero():
                    raise self.error("division by the zero polynomial", tok)
                lhs = lhs / rhs

    def power(self, base: RatFunc, exp: RatFunc, tok: Token) -> RatFunc:
        if not exp.is_constant():
            raise self.error("exponent must be a constant", tok)
        k = exp.num.constant_value() / exp.den.constant_value()
        if k.denominator != 1 or k < 0:
            raise self.error("exponent must be a non-negative integer", tok)
        return base ** int(k)

    def unary(self) -> RatFunc:
        tok = self.peek()
        if tok.kind == "op" and tok.value in "+-":
            self.take()
            operand = self.expr(_UNARY_PREC)
            return -operand if tok.value == "-" else operand
        return self.atom()

    def atom(self) -> RatFunc:
        tok = self.take()
        if tok.kind == "num":
            return RatFunc.const(Fraction(tok.value), self.vars)
        if tok.kind == "ident":
            if tok.value not in self.vars:
                raise ParseError(f"unknown identifier {tok.value!r}", tok.pos, self.text)
            return RatFunc.var(tok.value, self.vars)
        if tok.kind == "op" and tok.value == "(":
            inner = self.expr(0)
            close = self.take()
            if close.kind != "op" or close.value != ")":
                raise ParseError("expected ')'", close.pos, self.text)
            return inner
        if tok.kind == "end":
            raise ParseError("unexpected end of input", tok.pos, self.text)
        raise ParseError(f"unexpected {tok.value!r}", tok.pos, self.text)


def parse(expr: str, vars: VarTable | list[str] | tuple[str, ...]) -> RatFunc:
    """Parse ``expr`` into an exact, reduced :class:`RatFunc` over ``vars``."""
    if not isinstance(vars, VarTable):
        vars = VarTable(vars)
    try:
        return _Parser(expr, vars).parse()
    except PoleError as e:
        raise ParseError(str(e), 0, expr) from None


def parse_poly(expr: str, vars):
    """Parse an expression that must be a polynomial."""
    f = parse(expr, vars)
    if not f.is_polynomial():
        raise ParseError("expression is not a polynomial", 0, expr)
    return f.num / f.den.constant_value()
