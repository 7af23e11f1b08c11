"""Operator text parser.

Grammar::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' uint)?
    atom   := 'x' | 'd' | 't' | rational | '(' expr ')'

``d`` is d/dx, ``t`` is x*d. Products are noncommutative, read left to right.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError
from .weyl import WeylOp, to_text


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "sym", "op", "end"
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, col, k = 1, 1, 0
    n = len(text)
    while k < n:
        ch = text[k]
        if ch == "\n":
            line, col, k = line + 1, 1, k + 1
            continue
        if ch.isspace():
            col, k = col + 1, k + 1
            continue
        if ch.isdigit():
            start = k
            while k < n and text[k].isdigit():
                k += 1
            tokens.append(Token("num", text[start:k], line, col))
            col += k - start
            continue
        if ch in "xdt":
            tokens.append(Token("sym", ch, line, col))
        elif ch in "+-*^/()":
            tokens.append(Token("op", ch, line, col))
        else:
            raise ParseError(f"unexpected character {ch!r}", line, col)
        col, k = col + 1, k + 1
    tokens.append(Token("end", "", line, col))
    return tokens


_ATOMS = {"x": WeylOp.x(), "d": WeylOp.d(), "t": WeylOp.theta()}


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.peek()
        raise ParseError(message, tok.line, tok.column)

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if tok.kind != "op" or tok.text != text:
            self.error(f"expected {text!r}, found {tok.text or 'end of input'!r}")
        return self.advance()

    def parse(self) -> WeylOp:
        if self.peek().kind == "end":
            self.error("empty expression")
        op = self.expr()
        if self.peek().kind != "end":
            self.error(f"unexpected {self.peek().text!r}")
        return op

    def expr(self) -> WeylOp:
        tok = self.peek()
        sign = 1
        if tok.kind == "op" and tok.text in "+-":
            self.advance()
            sign = -1 if tok.text == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text in "+-":
                self.advance()
                rhs = self.term()
                acc = acc + rhs if tok.text == "+" else acc - rhs
            else:
                return acc

    def term(self) -> WeylOp:
        acc = self.factor()
        while self.peek().kind == "op" and self.peek().text == "*":
            self.advance()
            acc = acc * self.factor()
        return acc

    def factor(self) -> WeylOp:
        base = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.advance()
            tok = self.peek()
            if tok.kind != "num":
                self.error("exponent must be a nonnegative integer literal")
            self.advance()
            return base ** int(tok.text)
        return base

    def atom(self) -> WeylOp:
        tok = self.peek()
        if tok.kind == "sym":
            self.advance()
            return _ATOMS[tok.text]
        if tok.kind == "num":
            self.advance()
            value = Fraction(int(tok.text))
            if self.peek().kind == "op" and self.peek().text == "/":
                self.advance()
                den = self.peek()
                if den.kind != "num":
                    self.error("expected a denominator after '/'")
                self.advance()
                if int(den.text) == 0:
                    self.error("zero denominator", den)
                value /= int(den.text)
            return WeylOp.const(value)
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            inner = self.expr()
            self.expect(")")
            return inner
        self.error(f"unexpected {tok.text or 'end of input'!r}")
        raise AssertionError  # unreachable


def parse(text: str) -> WeylOp:
    """Parse operator text into a normalized :class:`WeylOp`."""
    return _Parser(text).parse()


def print_op(op: WeylOp) -> str:
    return to_text(op)
