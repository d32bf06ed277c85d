"""Recursive-descent parser for the threshold DSL.

Grammar (whitespace insignificant)::

    expr     := term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := INT | 'n' | '(' expr ')'
              | 'ceil(' rational '*' expr ')' | 'floor(' rational '*' expr ')'
              | 'ceil(log2(' expr '))' | 'ceil(sqrt(' expr '))'
              | 'ceil(' expr '/' 'log2(' expr ')' ')'
              | 'floor(' expr '/' 'log2(' expr ')' ')'
              | 'ceil(' real ')' | 'floor(' real ')'
              | 'min(' expr ',' expr ')' | 'max(' expr ',' expr ')'
    real     := like expr, but a bare 'log2(' expr ')' is the real logarithm
                and '-' is exact; the enclosing ceil/floor rounds, then
                clamps at 0
    rational := INT '/' INT | INT

The quotient and real forms use the real base-2 logarithm.
"""

from __future__ import annotations

import re
from typing import NamedTuple

from .expr import (
    Add, Const, Expr, Log2, LogQuotient, Max, Min, Mul, Real, RealRound, RInt, RLog2, ROp, Scale, Sqrt, Sub, Var,
)


class ThresholdSyntaxError(ValueError):
    def __init__(self, message: str, pos: int, source: str):
        self.pos = pos
        self.source = source
        super().__init__(f"column {pos + 1}: {message}\n  {source}\n  {' ' * pos}^")


class ThresholdSemanticError(ThresholdSyntaxError):
    """Well-formed text with a meaningless value, e.g. a zero denominator."""


class Token(NamedTuple):
    kind: str  # INT, NAME, OP or END
    text: str
    pos: int


_TOKEN_RE = re.compile(r"\s*(?:(?P<INT>\d+)|(?P<NAME>[A-Za-z_][A-Za-z_0-9]*)|(?P<OP>[-+*/(),]))")
_NAMES = {"n", "ceil", "floor", "log2", "sqrt", "min", "max"}


def tokenize(source: str) -> list[Token]:
    tokens = []
    pos = 0
    while True:
        while pos < len(source) and source[pos].isspace():
            pos += 1
        if pos == len(source):
            break
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            raise ThresholdSyntaxError(f"unexpected character {source[pos]!r}", pos, source)
        kind = m.lastgroup
        start = m.start(kind)
        text = m.group(kind)
        if kind == "NAME" and text not in _NAMES:
            raise ThresholdSyntaxError(f"unknown name {text!r}", start, source)
        tokens.append(Token(kind, text, start))
        pos = m.end()
    tokens.append(Token("END", "", len(source)))
    return tokens


class _Parser:
    def __init__(self, source: str):
        self.source = source
        self.tokens = tokenize(source)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.tok
        return ThresholdSyntaxError(message, tok.pos, self.source)

    def accept(self, text: str) -> bool:
        if self.tok.text == text and self.tok.kind != "END":
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        tok = self.tok
        if tok.text != text or tok.kind == "END":
            found = "end of input" if tok.kind == "END" else repr(tok.text)
            raise self.error(f"expected {text!r}, found {found}")
        self.i += 1
        return tok

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "END":
            raise self.error(f"unexpected {self.tok.text!r}")
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.tok.text in ("+", "-") and self.tok.kind == "OP":
            op = self.tok.text
            self.i += 1
            rhs = self.term()
            e = Add(e, rhs) if op == "+" else Sub(e, rhs)
        return e

    def term(self) -> Expr:
        e = self.factor()
        while self.accept("*"):
            e = Mul(e, self.factor())
        return e

    def factor(self) -> Expr:
        tok = self.tok
        if tok.kind == "INT":
            self.i += 1
            return Const(int(tok.text))
        if tok.kind == "OP" and tok.text == "(":
            self.i += 1
            e = self.expr()
            self.expect(")")
            return e
        if tok.kind == "NAME":
            self.i += 1
            if tok.text == "n":
                return Var()
            if tok.text in ("min", "max"):
                self.expect("(")
                a = self.expr()
                self.expect(",")
                b = self.expr()
                self.expect(")")
                return Min(a, b) if tok.text == "min" else Max(a, b)
            if tok.text in ("ceil", "floor"):
                return self.rounding(tok)
            raise self.error(f"{tok.text} is only allowed as ceil({tok.text}(...))", tok)
        if tok.kind == "END":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected {tok.text!r}")

    def rounding(self, head: Token) -> Expr:
        up = head.text == "ceil"
        self.expect("(")
        inner = self.tok
        if inner.kind == "NAME" and inner.text == "sqrt":
            if not up:
                raise self.error("floor(sqrt(...)) is not supported; use ceil", inner)
            self.i += 1
            self.expect("(")
            arg = self.expr()
            self.expect(")")
            self.expect(")")
            return Sqrt(arg)
        if inner.kind == "NAME" and inner.text == "log2" and up:
            mark = self.i
            self.i += 1
            self.expect("(")
            arg = self.expr()
            self.expect(")")
            if self.accept(")"):
                return Log2(arg)
            self.i = mark  # something follows log2(...): a real expression
        if inner.kind == "INT" and self.peek().text in ("/", "*"):
            p = int(inner.text)
            q = 1
            self.i += 1
            if self.accept("/"):
                den = self.tok
                if den.kind != "INT":
                    raise self.error("expected integer denominator")
                self.i += 1
                q = int(den.text)
                if q == 0:
                    raise ThresholdSemanticError("zero denominator in rational scale", den.pos, self.source)
            self.expect("*")
            arg = self.expr()
            self.expect(")")
            return Scale(p, q, arg, ceil=up)
        body = self.real_expr()
        if self.accept("/"):
            if _has_log(body):
                raise self.error("a bare log2(...) may not appear in a quotient numerator")
            if self.tok.text != "log2":
                raise self.error("only '/ log2(...)' may follow an expression inside ceil/floor")
            self.i += 1
            self.expect("(")
            arg = self.expr()
            self.expect(")")
            self.expect(")")
            return LogQuotient(_to_int(body), arg, ceil=up)
        self.expect(")")
        if _has_log(body):
            return RealRound(body, ceil=up)
        return _to_int(body)

    # Real-valued sublanguage: bare log2(...) is the real logarithm and
    # '-' is not truncated until the enclosing ceil/floor.

    def real_expr(self) -> Real:
        r = self.real_term()
        while self.tok.kind == "OP" and self.tok.text in ("+", "-"):
            op = self.tok.text
            self.i += 1
            r = ROp(op, r, self.real_term())
        return r

    def real_term(self) -> Real:
        r = self.real_factor()
        while self.accept("*"):
            r = ROp("*", r, self.real_factor())
        return r

    def real_factor(self) -> Real:
        tok = self.tok
        if tok.kind == "NAME" and tok.text == "log2":
            self.i += 1
            self.expect("(")
            arg = self.expr()
            self.expect(")")
            return RLog2(arg)
        if tok.kind == "OP" and tok.text == "(":
            self.i += 1
            r = self.real_expr()
            self.expect(")")
            return r
        return RInt(self.factor())


def _has_log(r: Real) -> bool:
    if isinstance(r, RLog2):
        return True
    if isinstance(r, ROp):
        return _has_log(r.left) or _has_log(r.right)
    return False


def _to_int(r: Real) -> Expr:
    if isinstance(r, RInt):
        return r.expr
    a, b = _to_int(r.left), _to_int(r.right)
    return Add(a, b) if r.op == "+" else Sub(a, b) if r.op == "-" else Mul(a, b)


def parse_threshold(source: str) -> Expr:
    """Parse DSL text into an expression tree."""
    return _Parser(source).parse()
